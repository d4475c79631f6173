"""Report what a solution cannot explain: uncovered customers, unused
elements and inputs the search could not process."""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Mapping, Optional

import numpy as np

from .matrices import PathMatrices
from .network import Network, id_key
from .solver import Solution

CUSTOMER_WITHOUT_PATH = "customer-without-path"
ELEMENT_UNASSIGNED = "element-unassigned"
MISSING_JUNCTION_LABEL = "missing-junction-label"
GENERATION_FAILURE = "generation-failure"

KINDS = (MISSING_JUNCTION_LABEL, GENERATION_FAILURE, CUSTOMER_WITHOUT_PATH, ELEMENT_UNASSIGNED)


@dataclass(frozen=True)
class Issue:
    kind: str
    subject: str
    detail: str
    suggestion: Optional[str] = None
    # machine-readable form of the suggestion; not serialized
    suggested_junction: Optional[str] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("suggested_junction")
        return d


@dataclass
class DiagnosticReport:
    issues: list[Issue] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.issues)

    def __bool__(self) -> bool:
        return bool(self.issues)

    def of_kind(self, kind: str) -> list[Issue]:
        return [i for i in self.issues if i.kind == kind]

    def subjects(self, kind: str) -> list[str]:
        return [i.subject for i in self.of_kind(kind)]

    def to_dict(self) -> dict:
        counts = Counter(i.kind for i in self.issues)
        return {
            "issues": [i.to_dict() for i in self.issues],
            "counts": {k: counts.get(k, 0) for k in KINDS},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def covered_customers(sol: Solution, M: PathMatrices) -> dict[str, str]:
    """Customer id -> terminal id of its selected path."""
    return {
        M.customers[M.row_customer[k]]: M.terminals[M.row_terminal[k]]
        for k in np.flatnonzero(sol.selected)
    }


def suggest_junction(net: Network, cid: str, covered: Mapping[str, str], k: int = 3) -> Optional[tuple[str, list[str]]]:
    """Majority junction among the ``k`` nearest covered customers.

    Ties go to the junction of the nearest customer among the tied ones.
    Returns ``(junction, neighbours)`` or ``None`` without covered customers.
    """
    if not covered or k < 1:
        return None
    x, y = net[cid].coor
    ranked = sorted(
        covered,
        key=lambda o: (math.hypot(net[o].coor[0] - x, net[o].coor[1] - y), id_key(o)),
    )[:k]
    votes = Counter(covered[o] for o in ranked)
    top = max(votes.values())
    for o in ranked:  # nearest first
        if votes[covered[o]] == top:
            return covered[o], ranked
    return None  # pragma: no cover


def diagnose(
    sol: Solution,
    M: PathMatrices,
    net: Network,
    k: int = 3,
    failures: Optional[Mapping[str, tuple[str, str]]] = None,
) -> DiagnosticReport:
    """Collect issues in a fixed order: input failures, uncovered customers,
    unused elements; within each kind by element id."""
    failures = dict(failures or {})
    issues: list[Issue] = []
    for kind in (MISSING_JUNCTION_LABEL, GENERATION_FAILURE):
        for cid in sorted((c for c, f in failures.items() if f[0] == kind), key=id_key):
            issues.append(Issue(kind, cid, failures[cid][1]))

    covered = covered_customers(sol, M)
    n_candidates = Counter(M.customers[c] for c in M.row_customer)
    for c in net.customers:
        if c.id in covered:
            continue
        n = n_candidates.get(c.id, 0)
        if c.id in failures and failures[c.id][0] == MISSING_JUNCTION_LABEL:
            detail = "no path searched: junction label missing or unknown"
        elif n == 0:
            detail = "no candidate path reaches its junction"
        else:
            detail = f"{n} candidate path(s), none consistent with the selected paths"
        hint = suggest_junction(net, c.id, covered, k)
        suggestion = junction = None
        if hint is not None:
            junction, near = hint
            suggestion = f"check junction label; nearest covered customers ({', '.join(near)}) mostly feed from {junction}"
        issues.append(Issue(CUSTOMER_WITHOUT_PATH, c.id, detail, suggestion, junction))

    used = {M.remaining[r] for k_ in np.flatnonzero(sol.selected) for r in M.row_remaining[k_]}
    for e in net.remaining:
        if e.id not in used:
            issues.append(
                Issue(ELEMENT_UNASSIGNED, e.id, f"{e.type} {e.id} is not used by any selected path")
            )
    return DiagnosticReport(issues)
