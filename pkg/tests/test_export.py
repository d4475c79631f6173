import io
import logging
from fractions import Fraction
from pathlib import Path as FsPath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import random_matrices

from lvpaths.export import (
    MPS_VALUE_WIDTH,
    ExportError,
    fmt,
    export_model,
    model_of,
    read_lp,
    read_mps,
    write_lp,
    write_mps,
)
from lvpaths.ilp import build_problem
from lvpaths.matrices import from_columns
from lvpaths.paths import Path

SNAPSHOTS = FsPath(__file__).parent / "snapshots"


def one_path():
    return build_problem(from_columns([Path(("c1", "t1"))], ["c1"], [], ["t1"]))


def test_one_path_lp():
    text = write_lp(one_path())
    lines = text.splitlines()
    i = [s.lower() for s in lines].index("maximize")
    assert lines[i + 1] == " obj: + 1 P_1"
    assert "Binaries" in lines and lines[-1] == "End"


def test_academic_declares_34_binaries(academic):
    problem = academic[3]
    assert len(read_lp(write_lp(problem)).binaries) == 34
    assert len(read_mps(write_mps(problem)).binaries) == 34


def test_academic_snapshots(academic):
    problem = academic[3]
    assert write_lp(problem) == (SNAPSHOTS / "academic.lp").read_text()
    assert write_mps(problem) == (SNAPSHOTS / "academic.mps").read_text()


def test_empty_problem_files():
    problem = build_problem(from_columns([], [], [], []))
    lp = write_lp(problem)
    assert "Subject To\nEnd" in lp
    assert read_lp(lp).rows == {}
    mps = write_mps(problem)
    assert mps.endswith("ENDATA\n") and read_mps(mps).rows == {}


def test_export_model_sinks(academic):
    problem = academic[3]
    lp, mps = io.StringIO(), io.StringIO()
    text = export_model(problem, lp, mps)
    assert lp.getvalue() == text and mps.getvalue() == write_mps(problem)


def test_mps_fixed_columns(academic):
    for line in write_mps(academic[3]).splitlines():
        if line.startswith("    P_") or line.startswith("    A_"):
            assert len(line) == 36
            assert line[4:12].strip() and line[14:22].strip() and line[24:36].strip()


def test_mps_rejects_long_names():
    customers = [f"c{i}" for i in range(1, 13)]
    remaining = [f"r{i}" for i in range(1, 1001)]
    terminals = [f"t{i}" for i in range(1, 11)]
    M = from_columns([Path(("c1", "r1000", "t10"))], customers, remaining, terminals)
    problem = build_problem(M)
    with pytest.raises(ExportError):
        write_mps(problem)
    assert read_lp(write_lp(problem)) == model_of(problem)


def test_mps_long_value_rounded(caplog):
    caplog.set_level(logging.WARNING, logger="lvpaths.export")
    M = from_columns([Path(("c1", "r1", "t1"))], ["c1"], ["r1"], ["t1"])
    problem = build_problem(M, Fraction(1, 7))
    text = write_mps(problem)
    assert "-0.142857143" in text
    assert "rounded" in caplog.text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([None, 0, 1, "1/4", 0.3]))
def test_round_trip_preserves_coefficients(seed, lam):
    problem = build_problem(random_matrices(seed), lam)
    want = model_of(problem)
    lp = read_lp(write_lp(problem))
    if problem.variables:
        assert lp == want
    else:  # rows without any variable cannot be written in LP syntax
        assert lp.rows == {} and lp.objective == {}
    got = read_mps(write_mps(problem))
    assert (got.sense, list(got.rows), got.binaries) == (want.sense, list(want.rows), want.binaries)
    for name, (coeffs, sense, rhs) in want.rows.items():
        assert got.rows[name] == (coeffs, sense, rhs)  # row data are small integers
    if len(fmt(problem.lam)) <= MPS_VALUE_WIDTH - 1:
        assert got.objective == want.objective
    else:  # fixed-width MPS keeps 12 characters per value
        assert got.objective == pytest.approx(want.objective, rel=1e-8)
