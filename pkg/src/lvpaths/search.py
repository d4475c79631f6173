"""Candidate path generation.

Best-first tree search from a customer towards its feeder terminal junction.
A partial path is ranked by the summed weight of its edges plus the straight
line distance from its last element to the target junction. Edge weights
start as element distances; whenever a complete path is found its edges are
scaled by ``alpha`` so that later paths favour unexplored elements.
"""
from __future__ import annotations

import heapq
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .network import ConnectionConditions, Element, Network, dist
from .paths import Path, PathConditions

log = logging.getLogger(__name__)


class SearchError(ValueError):
    pass


class MissingJunctionLabel(SearchError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    max_paths: int = 5
    max_distance: float = 30.0
    max_length: float = 1000.0
    alpha: float = 2.0
    customer_junction: bool = False
    # safety valve for dense meshes; hitting it is reported, not raised
    max_expansions: int = 200_000

    def __post_init__(self) -> None:
        if self.max_paths < 1:
            raise SearchError("max_paths must be >= 1")
        if not self.max_distance > 0 or not self.max_length > 0:
            raise SearchError("max_distance and max_length must be > 0")
        if not self.alpha > 1:
            raise SearchError("alpha must be > 1")

    @property
    def connection(self) -> ConnectionConditions:
        return ConnectionConditions.default(self.max_distance, self.customer_junction)

    @property
    def path_conditions(self) -> PathConditions:
        return PathConditions(self.connection, self.max_length)


@dataclass
class SearchResult:
    paths: list[Path]
    expansions: int = 0
    exhausted: bool = True  # frontier emptied (as opposed to N reached or budget hit)
    budget_hit: bool = False


def customer_paths(net: Network, c: Element, cfg: SearchConfig) -> list[Path]:
    """Up to ``cfg.max_paths`` candidate paths for customer ``c``, in discovery order."""
    return search_customer(net, c, cfg).paths


def search_customer(net: Network, c: Element, cfg: SearchConfig) -> SearchResult:
    if c.type != "customer":
        raise SearchError(f"{c.id} is not a customer")
    problem = net.label_problem(c)
    if problem:
        raise MissingJunctionLabel(problem)

    adj = net.adjacency(cfg.connection)
    target = net[c.junction]
    goal = target.id
    rank = net.rank

    h_cache: dict[str, float] = {}

    def h(eid: str) -> float:
        v = h_cache.get(eid)
        if v is None:
            v = h_cache[eid] = dist(net[eid], target)
        return v

    d_cache: dict[tuple[str, str], float] = {}

    def edge(a: str, b: str) -> tuple[str, str]:
        return (a, b) if rank(a) < rank(b) else (b, a)

    def d(a: str, b: str) -> float:
        k = edge(a, b)
        v = d_cache.get(k)
        if v is None:
            v = d_cache[k] = dist(net[a], net[b])
        return v

    scale: dict[tuple[str, str], float] = {}

    def weight(a: str, b: str) -> float:
        return d(a, b) * scale.get(edge(a, b), 1.0)

    def g_of(seq: tuple[str, ...]) -> float:
        return sum(weight(a, b) for a, b in zip(seq, seq[1:]))

    interior_ok = {e.id for e in net.remaining}
    found: list[Path] = []
    seen: set[tuple[str, ...]] = set()
    version = 0  # bumped whenever weights change; stale heap entries get re-costed

    # entry: (cost, rank-sequence for tie-break, version, ids, geometric length, weighted length)
    heap = [(h(c.id), (rank(c.id),), 0, (c.id,), 0.0, 0.0)]
    expansions = 0
    budget_hit = False
    while heap:
        cost, key, ver, seq, length, g = heapq.heappop(heap)
        if ver != version:
            g = g_of(seq)
            fresh = g + h(seq[-1])
            if fresh > cost:
                heapq.heappush(heap, (fresh, key, version, seq, length, g))
                continue
        last = seq[-1]
        if last == goal:
            if seq in seen:
                continue
            seen.add(seq)
            found.append(Path(seq, length))
            if len(found) >= cfg.max_paths:
                return SearchResult(found, expansions, exhausted=False)
            for a, b in zip(seq, seq[1:]):
                k = edge(a, b)
                scale[k] = scale.get(k, 1.0) * cfg.alpha
            version += 1
            continue

        expansions += 1
        if expansions > cfg.max_expansions:
            budget_hit = True
            log.warning("search budget exhausted for customer %s after %d paths", c.id, len(found))
            break
        on_path = set(seq)
        for n in adj[last]:
            if n in on_path:
                continue
            if n != goal and n not in interior_ok:
                continue
            step = d(last, n)
            new_len = length + step
            if new_len > cfg.max_length:
                continue
            ng = g + weight(last, n)
            heapq.heappush(heap, (ng + h(n), key + (rank(n),), version, seq + (n,), new_len, ng))
    return SearchResult(found, expansions, exhausted=not budget_hit, budget_hit=budget_hit)


@dataclass
class CandidateSet:
    paths: list[Path] = field(default_factory=list)
    per_customer: dict[str, int] = field(default_factory=dict)
    failures: dict[str, tuple[str, str]] = field(default_factory=dict)  # id -> (kind, detail)

    def __len__(self) -> int:
        return len(self.paths)


def _one(args) -> tuple[str, Optional[SearchResult], Optional[tuple[str, str]]]:
    net, cid, cfg = args
    try:
        return cid, search_customer(net, net[cid], cfg), None
    except MissingJunctionLabel as exc:
        return cid, None, ("missing-junction-label", str(exc))


def generate_candidates(net: Network, cfg: SearchConfig, workers: int = 1) -> CandidateSet:
    """Candidate paths of every customer, concatenated in customer id order."""
    jobs = [(net, c.id, cfg) for c in net.customers]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_one(j) for j in jobs]

    out = CandidateSet()
    for cid, res, failure in results:  # map() preserves job order, i.e. customer id order
        if failure is not None:
            out.failures[cid] = failure
            out.per_customer[cid] = 0
            continue
        out.paths.extend(res.paths)
        out.per_customer[cid] = len(res.paths)
        if res.budget_hit:
            out.failures[cid] = (
                "generation-failure",
                f"search stopped after {res.expansions} expansions with {len(res.paths)} paths",
            )
    return out
