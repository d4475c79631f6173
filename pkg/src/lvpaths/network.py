"""Network elements, element sets and the topological helper functions.

A network is a flat collection of GIS elements (customers, lines, junctions,
transformers). Nothing is wired together up-front: which elements can touch
is decided on demand by :func:`connections` from planar distances and a set
of allowed type pairings.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional

import numpy as np


class ElementType(str, Enum):
    CUSTOMER = "customer"
    LINE = "line"
    JUNCTION = "junction"
    TRANSFORMER = "transformer"


CANONICAL_TYPES = frozenset(t.value for t in ElementType)

_DIGITS = re.compile(r"(\d+)")


def id_key(eid: str) -> tuple:
    """Natural sort key, so that ``e2`` sorts before ``e10``."""
    parts = _DIGITS.split(str(eid))
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p != "")


class NetworkError(ValueError):
    """Raised for structurally invalid networks."""


Point = tuple[float, float]


@dataclass(frozen=True)
class Element:
    """One network object.

    ``coor`` is the representative point. For a line given as a segment it
    is the midpoint of ``endpoints``.
    """

    id: str
    type: str
    coor: Point
    junction: Optional[str] = None
    endpoints: Optional[tuple[Point, Point]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "type", _type_label(self.type))
        pts = [self.coor] + (list(self.endpoints) if self.endpoints else [])
        for x, y in pts:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise NetworkError(f"element {self.id!r} has a non-finite coordinate")

    @classmethod
    def segment(cls, id: str, a: Point, b: Point, type: str = "line") -> "Element":
        mid = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
        return cls(id, type, mid, endpoints=(tuple(a), tuple(b)))

    @property
    def anchors(self) -> tuple[Point, ...]:
        """Points used for distance queries."""
        return self.endpoints if self.endpoints else (self.coor,)


def _type_label(t) -> str:
    return t.value if isinstance(t, ElementType) else str(t)


def dist(a: Element, b: Element) -> float:
    """Euclidean distance between two elements, in meters.

    Segment lines measure from their nearest endpoint.
    """
    return min(math.hypot(p[0] - q[0], p[1] - q[1]) for p in a.anchors for q in b.anchors)


DEFAULT_ADJACENCY = frozenset(
    {
        frozenset({"customer", "line"}),
        frozenset({"line"}),
        frozenset({"line", "junction"}),
    }
)


@dataclass(frozen=True)
class ConnectionConditions:
    """Rules deciding whether two elements can be directly connected."""

    max_distance: float
    allowed: frozenset = DEFAULT_ADJACENCY

    def __post_init__(self) -> None:
        if not (self.max_distance >= 0):
            raise NetworkError(f"max connection distance must be >= 0, got {self.max_distance}")
        object.__setattr__(
            self, "allowed", frozenset(frozenset(_type_label(t) for t in pair) for pair in self.allowed)
        )

    @classmethod
    def default(cls, max_distance: float, customer_junction: bool = False) -> "ConnectionConditions":
        allowed = set(DEFAULT_ADJACENCY)
        if customer_junction:
            allowed.add(frozenset({"customer", "junction"}))
        return cls(max_distance, frozenset(allowed))

    def pair_allowed(self, t1: str, t2: str) -> bool:
        return frozenset({t1, t2}) in self.allowed


class Network:
    """Immutable element set with its derived subsets.

    Parameters
    ----------
    elements : iterable of Element
    junction_to_transformer : mapping of junction id -> transformer id
    strict : bool
        When true (default) every customer must carry a junction label
        that names an existing junction. Non-strict networks keep such
        customers; they surface later as diagnostics.
    features : mapping of element id -> source GeoJSON feature, optional
        Kept so outputs can echo the input records.
    """

    def __init__(
        self,
        elements: Iterable[Element],
        junction_to_transformer: Optional[Mapping[str, str]] = None,
        strict: bool = True,
        features: Optional[Mapping[str, dict]] = None,
    ) -> None:
        elems = sorted(elements, key=lambda e: id_key(e.id))
        self._by_id: dict[str, Element] = {}
        for e in elems:
            if e.id in self._by_id:
                raise NetworkError(f"duplicate element id {e.id!r}")
            self._by_id[e.id] = e
        self.elements: tuple[Element, ...] = tuple(elems)
        self.junction_to_transformer = dict(junction_to_transformer or {})
        self.strict = strict
        self.features = dict(features or {})
        self._rank = {e.id: i for i, e in enumerate(self.elements)}

        for j, t in self.junction_to_transformer.items():
            if self.type_of(j, None) != "junction":
                raise NetworkError(f"transformer map names unknown junction {j!r}")
            if self.type_of(t, None) != "transformer":
                raise NetworkError(f"junction {j!r} mapped to unknown transformer {t!r}")
        if strict:
            for c in self.customers:
                problem = self.label_problem(c)
                if problem:
                    raise NetworkError(problem)

    # -- lookup -------------------------------------------------------
    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, eid: str) -> bool:
        return eid in self._by_id

    def __getitem__(self, eid: str) -> Element:
        try:
            return self._by_id[eid]
        except KeyError:
            raise KeyError(f"unknown element id {eid!r}") from None

    def type_of(self, eid: str, default=...):
        e = self._by_id.get(eid)
        if e is None:
            if default is ...:
                raise KeyError(f"unknown element id {eid!r}")
            return default
        return e.type

    def rank(self, eid: str) -> int:
        """Position of ``eid`` in id order."""
        return self._rank[eid]

    def label_problem(self, c: Element) -> Optional[str]:
        if not c.junction:
            return f"customer {c.id!r} has no junction label"
        if self.type_of(c.junction, None) != "junction":
            return f"customer {c.id!r} names unknown junction {c.junction!r}"
        return None

    # -- element sets -------------------------------------------------
    @cached_property
    def customers(self) -> tuple[Element, ...]:
        return subset(self, ElementType.CUSTOMER)

    @cached_property
    def terminals(self) -> tuple[Element, ...]:
        return subset(self, ElementType.JUNCTION)

    @cached_property
    def remaining(self) -> tuple[Element, ...]:
        skip = {"customer", "junction", "transformer"}
        return tuple(e for e in self.elements if e.type not in skip)

    @cached_property
    def _anchor_table(self) -> tuple[np.ndarray, np.ndarray]:
        pts, owner = [], []
        for i, e in enumerate(self.elements):
            for p in e.anchors:
                pts.append(p)
                owner.append(i)
        return np.asarray(pts, dtype=float).reshape(-1, 2), np.asarray(owner, dtype=np.intp)

    def adjacency(self, cond: ConnectionConditions) -> dict[str, tuple[str, ...]]:
        """Neighbour lists (id ordered) for every element under ``cond``."""
        cache = self.__dict__.setdefault("_adj_cache", {})
        if cond not in cache:
            cache[cond] = {e.id: tuple(m.id for m in connections(self, e, cond)) for e in self.elements}
        return cache[cond]


def subset(net: Network, t) -> tuple[Element, ...]:
    label = _type_label(t)
    return tuple(e for e in net.elements if e.type == label)


def connections(net: Network, e: Element, cond: ConnectionConditions) -> list[Element]:
    """Elements that may be directly connected to ``e``, ordered by id."""
    if not (cond.max_distance >= 0):
        raise NetworkError("max connection distance must be >= 0")
    if not net.elements:
        return []
    pts, owner = net._anchor_table
    best = np.full(len(net.elements), np.inf)
    for p in e.anchors:
        d = np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1])
        np.minimum.at(best, owner, d)
    out = []
    for i in np.flatnonzero(best <= cond.max_distance):
        m = net.elements[i]
        if m.id == e.id or not cond.pair_allowed(e.type, m.type):
            continue
        # exact re-check with the scalar distance keeps the bound bit-identical to dist()
        if dist(e, m) <= cond.max_distance:
            out.append(m)
    return out
