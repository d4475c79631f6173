"""0/1 integer program over path selections and terminal assignments.

Decision variables are the path selection vector ``P`` (one entry per
candidate path) and the terminal association matrix ``T_R`` (terminal x
remaining element). The model maximizes the number of selected paths minus
``lam`` times the number of assignments, subject to three constraint
families:

validity
    for every terminal ``t`` and path ``h``:
    ``count(h) * H_T[h, t] * P[h] <= sum_r H_R[h, r] * H_T[h, t] * T_R[t, r]``
unique-path
    at most one selected path per customer
unique-terminal
    every remaining element assigned to at most one terminal
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Optional, Union

import numpy as np

from .matrices import PathMatrices, row_element_counts

VALIDITY = "validity"
UNIQUE_PATH = "unique-path"
UNIQUE_TERMINAL = "unique-terminal"

LambdaLike = Union[None, str, Real, Fraction]


class IlpError(ValueError):
    pass


@dataclass(frozen=True)
class Row:
    name: str
    family: str
    index: tuple[int, ...]  # 0-based (t, h) / (c,) / (r,)
    coeffs: tuple[tuple[int, int], ...]  # (variable index, coefficient)
    rhs: int = 0
    sense: str = "<="

    @property
    def trivial(self) -> bool:
        return not self.coeffs or all(c == 0 for _, c in self.coeffs)


@dataclass
class IlpProblem:
    matrices: PathMatrices
    lam: Fraction
    variables: list[str]
    objective: list[Fraction]
    rows: list[Row] = field(default_factory=list)

    @property
    def num_path_vars(self) -> int:
        return self.matrices.n_paths

    @property
    def num_assoc_vars(self) -> int:
        return len(self.matrices.terminals) * len(self.matrices.remaining)

    def assoc_index(self, t: int, r: int) -> int:
        return self.num_path_vars + t * len(self.matrices.remaining) + r

    def family(self, name: str) -> list[Row]:
        return [row for row in self.rows if row.family == name]

    def split(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = self.num_path_vars
        shape = (len(self.matrices.terminals), len(self.matrices.remaining))
        return x[:n], x[n:].reshape(shape)


def auto_lambda(M: PathMatrices) -> Fraction:
    return Fraction(1, len(M.remaining) * len(M.terminals) + 1)


def as_lambda(lam: LambdaLike, M: PathMatrices) -> Fraction:
    """Normalize a penalty coefficient; ``None``/``"auto"`` picks the default."""
    if lam is None or (isinstance(lam, str) and lam.strip().lower() == "auto"):
        return auto_lambda(M)
    if isinstance(lam, Fraction):
        value = lam
    elif isinstance(lam, str):
        value = Fraction(lam.strip())
    elif isinstance(lam, float):
        # decimal reading of the float: 0.1 -> 1/10 rather than the binary expansion
        value = Fraction(repr(lam))
    else:
        value = Fraction(lam)
    if value < 0:
        raise IlpError(f"lambda must be >= 0, got {lam}")
    return value


def build_problem(M: PathMatrices, lam: LambdaLike = None) -> IlpProblem:
    lam_ = as_lambda(lam, M)
    H, nC, nR, nT = M.n_paths, len(M.customers), len(M.remaining), len(M.terminals)

    variables = [f"P_{k + 1}" for k in range(H)]
    variables += [f"A_{t + 1}_{r + 1}" for t in range(nT) for r in range(nR)]
    objective = [Fraction(1)] * H + [-lam_] * (nT * nR)
    prob = IlpProblem(M, lam_, variables, objective)

    counts = row_element_counts(M)
    for t in range(nT):
        for h in range(H):
            if M.row_terminal[h] == t:
                coeffs = [(h, int(counts[h]))]
                coeffs += [(prob.assoc_index(t, r), -1) for r in M.row_remaining[h]]
            else:
                coeffs = []
            prob.rows.append(Row(f"V{t + 1}_{h + 1}", VALIDITY, (t, h), tuple(coeffs)))
    by_customer = M.paths_of_customer()
    for c in range(nC):
        coeffs = tuple((h, 1) for h in by_customer.get(c, []))
        prob.rows.append(Row(f"C{c + 1}", UNIQUE_PATH, (c,), coeffs, rhs=1))
    for r in range(nR):
        coeffs = tuple((prob.assoc_index(t, r), 1) for t in range(nT))
        prob.rows.append(Row(f"R{r + 1}", UNIQUE_TERMINAL, (r,), coeffs, rhs=1))
    return prob


@dataclass(frozen=True)
class Violation:
    family: str
    index: tuple[int, ...]
    lhs: int
    rhs: int
    detail: str = ""


@dataclass
class Evaluation:
    feasible: bool
    objective: float
    violations: list[Violation]
    objective_exact: Fraction = Fraction(0)


def objective_value(problem: IlpProblem, P, T_R) -> Fraction:
    return int(np.sum(P)) - problem.lam * int(np.sum(T_R))


def _check_shapes(problem: IlpProblem, P, T_R) -> tuple[np.ndarray, np.ndarray]:
    M = problem.matrices
    P = np.asarray(P, dtype=np.int64).reshape(-1)
    T_R = np.asarray(T_R, dtype=np.int64)
    if P.shape != (M.n_paths,):
        raise IlpError(f"P has shape {P.shape}, expected ({M.n_paths},)")
    want = (len(M.terminals), len(M.remaining))
    if T_R.size == 0 and 0 in want:
        T_R = T_R.reshape(want)
    if T_R.shape != want:
        raise IlpError(f"T_R has shape {T_R.shape}, expected {want}")
    if ((P != 0) & (P != 1)).any() or ((T_R != 0) & (T_R != 1)).any():
        raise IlpError("decision variables must be binary")
    return P, T_R


def evaluate(problem: IlpProblem, P, T_R) -> Evaluation:
    """Check every constraint row for a proposed ``(P, T_R)``."""
    P, T_R = _check_shapes(problem, P, T_R)
    x = np.concatenate([P, T_R.reshape(-1)])
    M = problem.matrices
    violations = []
    for row in problem.rows:
        if row.trivial:
            continue
        lhs = sum(c * int(x[v]) for v, c in row.coeffs)
        if lhs <= row.rhs:
            continue
        if row.family == VALIDITY:
            t, h = row.index
            # reported as "selected count <= assigned count", the way the matrices read
            selected = row.coeffs[0][1] * int(x[h])
            violations.append(Violation(VALIDITY, (t, h), selected, selected - lhs, _split_detail(M, h, T_R)))
        elif row.family == UNIQUE_PATH:
            (c,) = row.index
            violations.append(
                Violation(UNIQUE_PATH, (c,), lhs, row.rhs, f"customer {M.customers[c]} has {lhs} selected paths")
            )
        else:
            (r,) = row.index
            violations.append(
                Violation(
                    UNIQUE_TERMINAL, (r,), lhs, row.rhs, f"element {M.remaining[r]} assigned to {lhs} terminals"
                )
            )
    exact = objective_value(problem, P, T_R)
    return Evaluation(not violations, float(exact), violations, exact)


def _split_detail(M: PathMatrices, h: int, T_R: np.ndarray) -> str:
    t = M.row_terminal[h]
    parts = []
    for r in M.row_remaining[h]:
        where = [M.terminals[u] for u in np.flatnonzero(T_R[:, r])]
        parts.append(f"{M.remaining[r]}->{'/'.join(where) if where else 'unassigned'}")
    return f"path h{h + 1} ends at {M.terminals[t]} but its elements are " + ", ".join(parts)


def constraint1_intermediates(M: PathMatrices, P, T_R) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the validity constraint as ``|T| x |H|`` matrices."""
    P = np.asarray(P, dtype=np.int64).reshape(-1)
    T_R = np.asarray(T_R, dtype=np.int64).reshape(len(M.terminals), len(M.remaining))
    H_T = M.H_T()
    masked = row_element_counts(M) * P
    lhs = (masked[:, None] * H_T).T  # column vector broadcast across terminal columns
    rhs = (T_R @ M.H_R().T) * H_T.T
    return lhs, rhs


def violated_paths(lhs: np.ndarray, rhs: np.ndarray) -> list[tuple[int, int]]:
    """(terminal, path) cells where ``lhs > rhs``."""
    return [(int(t), int(h)) for t, h in zip(*np.nonzero(lhs > rhs))]
