import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_matrices

from lvpaths.matrices import MatrixError, from_columns, row_element_counts
from lvpaths.paths import Path


def test_academic_blocks(academic):
    _, _, M, _ = academic
    assert M.shape == (10, 6, 6, 4)
    assert row_element_counts(M).tolist() == [1, 2, 2, 2, 3, 3, 2, 1, 2, 1]
    h7 = M.H()[6]
    cols = list(M.customers + M.remaining + M.terminals)
    assert [cols[i] for i in np.flatnonzero(h7)] == ["e3", "e7", "e8", "e14"]


def test_no_interior_gives_zero_row():
    M = from_columns([Path(("c1", "t1"))], ["c1"], ["r1", "r2"], ["t1"])
    assert M.H_R().tolist() == [[0, 0]]
    assert row_element_counts(M).tolist() == [0]


def test_three_interior():
    M = from_columns([Path(("c1", "r1", "r2", "r3", "t1"))], ["c1"], ["r1", "r2", "r3"], ["t1"])
    assert row_element_counts(M).tolist() == [3]


def test_empty():
    M = from_columns([], [], [], [])
    assert M.H().shape == (0, 0)
    assert row_element_counts(M).tolist() == []


@pytest.mark.parametrize(
    "path",
    [("r1", "t1"), ("c1", "r1"), ("c1", "x", "t1"), ("c1", "r1", "r1", "t1"), ("c1",)],
)
def test_bad_rows_rejected(path):
    with pytest.raises(MatrixError):
        from_columns([Path(path)], ["c1"], ["r1"], ["t1"])


def test_csv_dump(academic):
    _, _, M, _ = academic
    buf = io.StringIO()
    text = M.to_csv(buf)
    assert buf.getvalue() == text
    lines = text.strip().splitlines()
    assert lines[0].split(",")[0] == "path" and lines[0].split(",")[1:] == list(M.customers + M.remaining + M.terminals)
    assert lines[7].startswith("h7,")


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_block_invariants_and_round_trip(seed):
    M = random_matrices(seed)
    assert (M.H_C().sum(axis=1) == 1).all()
    assert (M.H_T().sum(axis=1) == 1).all()
    assert M.H_C().sum() == M.H_T().sum() == M.n_paths
    for k, p in enumerate(M.paths):
        assert M.row_elements(k) == set(p.elements)
        assert {M.remaining[i] for i in np.flatnonzero(M.H_R()[k])} == set(p.interior)
    grouped = M.paths_of_customer()
    assert sorted(k for ks in grouped.values() for k in ks) == list(range(M.n_paths))
