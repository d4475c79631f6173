"""Customer paths, their validity rules and the hypothetical-path count."""
from __future__ import annotations

from dataclasses import dataclass
from math import perm
from typing import Optional, Sequence

from .network import ConnectionConditions, Network, dist


@dataclass(frozen=True)
class Path:
    """Ordered element ids from a customer to a feeder terminal junction."""

    elements: tuple[str, ...]
    length: float = 0.0

    @property
    def customer(self) -> str:
        return self.elements[0]

    @property
    def terminal(self) -> str:
        return self.elements[-1]

    @property
    def interior(self) -> tuple[str, ...]:
        return self.elements[1:-1]

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def through(cls, net: Network, ids: Sequence[str]) -> "Path":
        """Build a path and compute its length from the network geometry."""
        return cls(tuple(ids), path_length(net, ids))


def path_length(net: Network, ids: Sequence[str]) -> float:
    return float(sum(dist(net[a], net[b]) for a, b in zip(ids, ids[1:])))


def hypothetical_count(n_customers: int, n_remaining: int, n_terminals: int) -> int:
    """Number of customer -> ordered remaining-elements -> terminal sequences.

    Exact integer; the sum of partial permutations grows factorially.
    """
    if min(n_customers, n_remaining, n_terminals) < 0:
        raise ValueError("counts must be non-negative")
    inner = sum(perm(n_remaining, k) for k in range(1, n_remaining + 1))
    return n_customers * inner * n_terminals


@dataclass(frozen=True)
class PathConditions:
    connection: ConnectionConditions
    max_length: float

    @property
    def max_distance(self) -> float:
        return self.connection.max_distance


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.valid


ENDPOINT_TYPE = "endpoint-type-violation"
REPEAT = "repeat-violation"
DISTANCE = "distance-violation"
ADJACENCY = "adjacency-violation"
LENGTH = "length-violation"
WRONG_TERMINAL = "wrong-terminal"

_NON_INTERIOR = {"customer", "junction", "transformer"}


def validate_path(p: Path, net: Network, cond: PathConditions) -> Verdict:
    """Check ``p`` against the network and report the first broken rule.

    Rules are tried in order: endpoint types, no repeated element, every hop
    connectable, total length within bound, terminal matches the customer's
    junction label. Unknown ids raise ``KeyError``.
    """
    elems = [net[i] for i in p.elements]
    if len(elems) < 2:
        return Verdict(False, ENDPOINT_TYPE, "a path needs at least a customer and a terminal")
    if elems[0].type != "customer":
        return Verdict(False, ENDPOINT_TYPE, f"{elems[0].id} is not a customer")
    if elems[-1].type != "junction":
        return Verdict(False, ENDPOINT_TYPE, f"{elems[-1].id} is not a junction")
    for e in elems[1:-1]:
        if e.type in _NON_INTERIOR:
            return Verdict(False, ENDPOINT_TYPE, f"{e.id} ({e.type}) cannot be interior")

    seen = set()
    for e in elems:
        if e.id in seen:
            return Verdict(False, REPEAT, f"{e.id} appears twice")
        seen.add(e.id)

    total = 0.0
    for a, b in zip(elems, elems[1:]):
        d = dist(a, b)
        if d > cond.max_distance:
            return Verdict(False, DISTANCE, f"{a.id}-{b.id} gap {d:.3f} > {cond.max_distance}")
        if not cond.connection.pair_allowed(a.type, b.type):
            return Verdict(False, ADJACENCY, f"{a.type}-{b.type} connection not allowed")
        total += d
    if total > cond.max_length:
        return Verdict(False, LENGTH, f"length {total:.3f} > {cond.max_length}")

    if elems[-1].id != elems[0].junction:
        return Verdict(False, WRONG_TERMINAL, f"ends at {elems[-1].id}, customer expects {elems[0].junction}")
    return Verdict(True)
