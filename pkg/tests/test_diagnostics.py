import json

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_point_network

from lvpaths.diagnostics import (
    CUSTOMER_WITHOUT_PATH,
    ELEMENT_UNASSIGNED,
    GENERATION_FAILURE,
    MISSING_JUNCTION_LABEL,
    diagnose,
    suggest_junction,
)
from lvpaths.ilp import build_problem
from lvpaths.matrices import build_matrices
from lvpaths.network import Element, Network
from lvpaths.search import SearchConfig, generate_candidates
from lvpaths.solver import solve
from lvpaths.synth import radial_network


def run(net, cfg):
    cands = generate_candidates(net, cfg)
    M = build_matrices(cands.paths, net)
    sol = solve(build_problem(M))
    return diagnose(sol, M, net, failures=cands.failures), sol, M


def test_academic_report(academic):
    net, cands, M, problem = academic
    report = diagnose(solve(problem), M, net, failures=cands.failures)
    assert report.subjects(CUSTOMER_WITHOUT_PATH) == ["e2"]
    assert report.subjects(ELEMENT_UNASSIGNED) == ["e10"]
    (issue,) = report.of_kind(CUSTOMER_WITHOUT_PATH)
    assert issue.suggested_junction in {e.id for e in net.terminals}
    doc = json.loads(report.to_json())
    assert set(doc["issues"][0]) == {"kind", "subject", "detail", "suggestion"}
    assert doc["counts"][CUSTOMER_WITHOUT_PATH] == 1


def test_fully_covered_synthetic_is_clean():
    syn = radial_network(3, 12)
    report, _, _ = run(syn.net, syn.config)
    assert report.issues == [] and not report


def test_missing_label_reported_once_each():
    net = Network(
        [
            Element("e1", "customer", (0.0, 0.0)),
            Element("e2", "customer", (0.0, 5.0), junction="e4"),
            Element("e3", "line", (5.0, 5.0)),
            Element("e4", "junction", (10.0, 5.0)),
        ],
        strict=False,
    )
    report, _, _ = run(net, SearchConfig(max_distance=6))
    assert report.subjects(MISSING_JUNCTION_LABEL) == ["e1"]
    assert report.subjects(CUSTOMER_WITHOUT_PATH) == ["e1"]
    # e1's nearest covered customer is e2, fed from e4
    assert report.of_kind(CUSTOMER_WITHOUT_PATH)[0].suggested_junction == "e4"


def test_generation_failure_passed_through():
    syn = radial_network(1, 3)
    cfg = SearchConfig(max_distance=12, max_length=100, max_expansions=1)
    report, _, _ = run(syn.net, cfg)
    assert report.subjects(GENERATION_FAILURE)


def test_majority_vote_and_tie_break():
    els = [Element("e1", "customer", (0.0, 0.0), junction="j1")]
    els += [Element(f"c{i}", "customer", (float(i), 0.0), junction="j1") for i in range(1, 5)]
    els += [Element("j1", "junction", (50.0, 50.0)), Element("j2", "junction", (60.0, 60.0))]
    net = Network(els)
    covered = {"c1": "j2", "c2": "j1", "c3": "j1", "c4": "j2"}
    assert suggest_junction(net, "e1", covered, k=3)[0] == "j1"  # j1 has 2 of 3
    assert suggest_junction(net, "e1", covered, k=2)[0] == "j2"  # 1-1 tie, nearest is c1
    assert suggest_junction(net, "e1", {}, k=3) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_partition_and_existing_junctions(seed):
    net = random_point_network(seed)
    report, sol, M = run(net, SearchConfig(max_paths=4, max_distance=14, max_length=70))
    covered = {M.paths[k].customer for k in np.flatnonzero(sol.selected)}
    flagged = report.subjects(CUSTOMER_WITHOUT_PATH)
    assert len(flagged) == len(set(flagged))
    assert covered.isdisjoint(flagged)
    assert covered | set(flagged) == {c.id for c in net.customers}
    terminals = {e.id for e in net.terminals}
    for issue in report.of_kind(CUSTOMER_WITHOUT_PATH):
        assert issue.suggested_junction is None or issue.suggested_junction in terminals
