"""Radial test networks with known customer paths.

Each feeder is a ray from the transformer: a junction at radius
``JUNCTION_RADIUS``, then a chain of lines ``LINE_SPACING`` apart, one
customer per line at ``CUSTOMER_OFFSET`` to the side. Feeders are spread
evenly around the transformer (72 degrees for five). With connection
distance ``MAX_DISTANCE`` each customer reaches only its own line, and
each line only its chain neighbours, so every customer has exactly one
valid path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .network import Element, Network
from .search import SearchConfig

JUNCTION_RADIUS = 5.0
LINE_SPACING = 11.0
CUSTOMER_OFFSET = 8.0
MAX_DISTANCE = 12.0


@dataclass
class Synthetic:
    net: Network
    truth: dict[str, tuple[str, ...]]  # customer id -> ground-truth path
    feeders: list[list[str]]  # line ids per feeder, junction outward
    config: SearchConfig


def radial_network(
    n_feeders: int = 5,
    n_customers: int = 50,
    seed: Optional[int] = None,
    delete_line: Optional[str] = None,
) -> Synthetic:
    """Build a radial network; ``seed`` spreads customers unevenly.

    ``delete_line`` drops one line after layout; ground truth then only
    contains customers still connected to their junction.
    """
    if not 1 <= n_feeders <= 5:
        raise ValueError("n_feeders must be between 1 and 5")
    if n_customers < 0:
        raise ValueError("n_customers must be non-negative")
    if seed is None:
        per = [n_customers // n_feeders + (f < n_customers % n_feeders) for f in range(n_feeders)]
    else:
        rng = np.random.default_rng(seed)
        per = np.bincount(rng.integers(0, n_feeders, n_customers), minlength=n_feeders).tolist()

    counter = iter(range(1, 10**9))
    nid = lambda: f"e{next(counter)}"  # noqa: E731
    transformer = Element(nid(), "transformer", (0.0, 0.0))
    elements, j2t, truth, feeders = [transformer], {}, {}, []
    step = 2 * math.pi / 5  # fixed spacing keeps geometry independent of n_feeders
    for f in range(n_feeders):
        ux, uy = math.cos(f * step), math.sin(f * step)
        vx, vy = -uy, ux  # left normal
        junction = Element(nid(), "junction", (JUNCTION_RADIUS * ux, JUNCTION_RADIUS * uy))
        elements.append(junction)
        j2t[junction.id] = transformer.id
        chain = []
        for i in range(1, per[f] + 1):
            r = JUNCTION_RADIUS + LINE_SPACING * i
            line = Element(nid(), "line", (r * ux, r * uy))
            cust = Element(
                nid(),
                "customer",
                (r * ux + CUSTOMER_OFFSET * vx, r * uy + CUSTOMER_OFFSET * vy),
                junction=junction.id,
            )
            elements += [line, cust]
            chain.append(line.id)
            truth[cust.id] = (cust.id, *reversed(chain), junction.id)
        feeders.append(chain)

    if delete_line is not None:
        elements = [e for e in elements if e.id != delete_line]
        truth = {c: p for c, p in truth.items() if delete_line not in p}
        feeders = [[l for l in ch if l != delete_line] for ch in feeders]

    longest = JUNCTION_RADIUS + LINE_SPACING * max(per, default=0) + CUSTOMER_OFFSET
    cfg = SearchConfig(max_paths=5, max_distance=MAX_DISTANCE, max_length=longest + 1.0)
    return Synthetic(Network(elements, j2t), truth, feeders, cfg)
