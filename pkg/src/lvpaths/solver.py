"""Exact solution of the path-selection program.

The program decomposes into independent blocks: two paths interact only if
they share a customer or an interior element. Each block is searched with
the branch-and-bound kernel from :mod:`lvpaths.kernels`.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .ilp import IlpProblem, LambdaLike, as_lambda
from .matrices import PathMatrices

OPTIMAL = "optimal"
INFEASIBLE = "infeasible-model"  # cannot occur for this model: selecting nothing is always feasible
ABORTED = "aborted"


class SolverError(RuntimeError):
    pass


@dataclass
class Solution:
    selected: np.ndarray  # P, one 0/1 entry per candidate path
    T_R: np.ndarray  # terminals x remaining elements
    objective: float
    objective_exact: Fraction
    status: str = OPTIMAL
    nodes: int = 0
    wall_time: float = 0.0
    backend: str = ""
    stats: dict = field(default_factory=dict)

    def selected_indices(self) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.selected)]


def assignment_from_selection(M: PathMatrices, selected) -> Optional[np.ndarray]:
    """Minimal ``T_R`` for a selection, or ``None`` if two paths disagree."""
    T_R = np.zeros((len(M.terminals), len(M.remaining)), dtype=np.int64)
    owner: dict[int, int] = {}
    for k in np.flatnonzero(np.asarray(selected)):
        t = M.row_terminal[k]
        for r in M.row_remaining[k]:
            if owner.setdefault(r, t) != t:
                return None
            T_R[t, r] = 1
    return T_R


def _components(M: PathMatrices) -> list[list[int]]:
    parent = list(range(M.n_paths))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    first_by_key: dict[tuple[str, int], int] = {}
    for k in range(M.n_paths):
        keys = [("c", M.row_customer[k])] + [("r", r) for r in M.row_remaining[k]]
        for key in keys:
            other = first_by_key.setdefault(key, k)
            ra, rb = find(k), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for k in range(M.n_paths):
        groups.setdefault(find(k), []).append(k)
    return sorted(groups.values(), key=lambda g: g[0])


def solve(
    problem: IlpProblem,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    backend: Optional[str] = None,
) -> Solution:
    """Optimal ``(P, T_R)``.

    Among optimal selections the lexicographically greatest ``P`` is
    returned, paired with the smallest ``T_R`` that supports it. When a
    budget runs out the best incumbent is returned with status ``aborted``.
    """
    M = problem.matrices
    lam = problem.lam
    start = time.perf_counter()
    deadline = start + time_limit if time_limit and time_limit > 0 else None
    name = backend or kernels.BACKEND
    if name == "cython":
        worst = (M.n_paths + 1) * lam.denominator + (len(M.remaining) + 1) * lam.numerator
        if worst >= kernels._INT64_SAFE:
            name = "python"
    kernel = kernels.get_kernel(name)

    selected = np.zeros(M.n_paths, dtype=np.int64)
    nodes = 0
    aborted = False
    comps = _components(M)
    for comp in comps:
        budget = -1
        if node_limit is not None:
            budget = max(node_limit - nodes, 0)
        remaining_time = -1.0
        if deadline is not None:
            remaining_time = max(deadline - time.perf_counter(), 1e-9)
        cust_map: dict[int, int] = {}
        rem_map: dict[int, int] = {}
        cust, term, ptr, idx = [], [], [0], []
        for k in comp:
            cust.append(cust_map.setdefault(M.row_customer[k], len(cust_map)))
            term.append(M.row_terminal[k])
            idx.extend(rem_map.setdefault(r, len(rem_map)) for r in M.row_remaining[k])
            ptr.append(len(idx))
        sel, _, _, used, hit = kernel(
            cust, term, ptr, idx, len(cust_map), len(rem_map),
            lam.numerator, lam.denominator, budget, remaining_time,
        )
        nodes += used
        aborted = aborted or hit
        for k, v in zip(comp, sel):
            selected[k] = v

    T_R = assignment_from_selection(M, selected)
    if T_R is None:  # pragma: no cover - kernel only emits consistent selections
        raise SolverError("kernel returned an inconsistent selection")
    exact = int(selected.sum()) - lam * int(T_R.sum())
    return Solution(
        selected,
        T_R,
        float(exact),
        exact,
        ABORTED if aborted else OPTIMAL,
        nodes,
        time.perf_counter() - start,
        name,
        {"components": len(comps)},
    )


def brute_force(M: PathMatrices, lam: LambdaLike = None, max_paths: int = 16) -> Solution:
    """Exhaustive oracle over every selection vector.

    Applies the same tie rule as :func:`solve` (greatest ``P`` among optima).
    Refuses instances with more than ``max_paths`` candidate paths.
    """
    if M.n_paths > max_paths:
        raise SolverError(f"brute force refuses {M.n_paths} paths (limit {max_paths})")
    lam_ = as_lambda(lam, M)
    start = time.perf_counter()
    best = None
    count = 0
    for bits in itertools.product((0, 1), repeat=M.n_paths):
        count += 1
        per_customer = [0] * len(M.customers)
        for k, b in enumerate(bits):
            per_customer[M.row_customer[k]] += b
        if any(v > 1 for v in per_customer):
            continue
        T_R = assignment_from_selection(M, bits)
        if T_R is None:
            continue
        value = sum(bits) - lam_ * int(T_R.sum())
        if best is None or value > best[0] or (value == best[0] and bits > best[1]):
            best = (value, bits, T_R)
    value, bits, T_R = best
    return Solution(
        np.array(bits, dtype=np.int64),
        T_R,
        float(value),
        value,
        OPTIMAL,
        count,
        time.perf_counter() - start,
        "brute-force",
    )
