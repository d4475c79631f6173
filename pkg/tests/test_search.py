import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import all_valid_paths, random_point_network

from lvpaths.fixtures import ACADEMIC_CONFIG, academic_network
from lvpaths.network import Element, Network
from lvpaths.paths import validate_path
from lvpaths.search import MissingJunctionLabel, SearchConfig, SearchError, customer_paths, generate_candidates

ACADEMIC_PATHS = [
    ("e1", "e8", "e14"),
    ("e2", "e7", "e10", "e16"),
    ("e2", "e7", "e12", "e16"),
    ("e2", "e8", "e10", "e16"),
    ("e2", "e8", "e7", "e10", "e16"),
    ("e2", "e7", "e10", "e12", "e16"),
    ("e3", "e7", "e8", "e14"),
    ("e4", "e9", "e15"),
    ("e5", "e11", "e12", "e13"),
    ("e6", "e12", "e13"),
]


def diamond():
    # two routes: via e2 (length 10) and via e3 (length 14)
    return Network(
        [
            Element("e1", "customer", (0.0, 0.0), junction="e4"),
            Element("e2", "line", (3.0, 4.0)),
            Element("e3", "line", (0.0, -7.0)),
            Element("e4", "junction", (6.0, 0.0)),
        ]
    )


def test_academic_candidates():
    cands = generate_candidates(academic_network(), ACADEMIC_CONFIG)
    assert [p.elements for p in cands.paths] == ACADEMIC_PATHS
    assert cands.per_customer == {"e1": 1, "e2": 5, "e3": 1, "e4": 1, "e5": 1, "e6": 1}
    assert not cands.failures


def test_straight_chain_single_path():
    net = Network(
        [
            Element("e1", "customer", (0.0, 0.0), junction="e3"),
            Element("e2", "line", (5.0, 0.0)),
            Element("e3", "junction", (10.0, 0.0)),
        ]
    )
    got = customer_paths(net, net["e1"], SearchConfig(max_paths=5, max_distance=6, max_length=100))
    assert [p.elements for p in got] == [("e1", "e2", "e3")]


def test_diamond_shorter_first():
    net = diamond()
    cfg = SearchConfig(max_paths=2, max_distance=10, max_length=100)
    got = customer_paths(net, net["e1"], cfg)
    assert [p.elements for p in got] == [("e1", "e2", "e4"), ("e1", "e3", "e4")]
    assert [p.length for p in got] == [10.0, 7.0 + math.hypot(6, 7)]
    ref = all_valid_paths(net, "e1", 10, 100)
    assert [k for k, _ in sorted(ref.items(), key=lambda kv: kv[1])] == [p.elements for p in got]


def test_length_bound_excludes_everything():
    net = diamond()
    assert customer_paths(net, net["e1"], SearchConfig(max_distance=10, max_length=9.99)) == []


def test_no_customers():
    net = Network([Element("e1", "junction", (0.0, 0.0))])
    cands = generate_candidates(net, SearchConfig())
    assert cands.paths == [] and len(cands) == 0


def test_missing_label_collected_not_raised():
    net = Network(
        [Element("e1", "customer", (0.0, 0.0)), Element("e2", "junction", (1.0, 0.0))], strict=False
    )
    with pytest.raises(MissingJunctionLabel):
        customer_paths(net, net["e1"], SearchConfig())
    cands = generate_candidates(net, SearchConfig())
    assert cands.failures["e1"][0] == "missing-junction-label"


def test_not_a_customer():
    net = diamond()
    with pytest.raises(SearchError):
        customer_paths(net, net["e2"], SearchConfig())


@pytest.mark.parametrize("kw", [{"max_paths": 0}, {"alpha": 1.0}, {"max_distance": 0}, {"max_length": -1}])
def test_config_ranges(kw):
    with pytest.raises(SearchError):
        SearchConfig(**kw)


def test_expansion_budget_reported():
    cands = generate_candidates(academic_network(), SearchConfig(max_paths=50, max_distance=10, max_length=29, max_expansions=2))
    assert any(kind == "generation-failure" for kind, _ in cands.failures.values())


def test_workers_give_same_order():
    net = random_point_network(3)
    cfg = SearchConfig(max_paths=4, max_distance=14, max_length=70)
    a = generate_candidates(net, cfg)
    b = generate_candidates(net, cfg, workers=2)
    assert [p.elements for p in a.paths] == [p.elements for p in b.paths]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_prefix_monotone_in_n(seed, n):
    net = random_point_network(seed)
    small = SearchConfig(max_paths=n, max_distance=14, max_length=70)
    big = SearchConfig(max_paths=n + 3, max_distance=14, max_length=70)
    for c in net.customers:
        a = [p.elements for p in customer_paths(net, c, small)]
        b = [p.elements for p in customer_paths(net, c, big)]
        assert b[: len(a)] == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_paths_valid_and_deterministic(seed):
    net = random_point_network(seed)
    cfg = SearchConfig(max_paths=5, max_distance=14, max_length=70)
    first = generate_candidates(net, cfg)
    again = generate_candidates(net, cfg)
    assert [p.elements for p in first.paths] == [p.elements for p in again.paths]
    for p in first.paths:
        assert validate_path(p, net, cfg.path_conditions)
