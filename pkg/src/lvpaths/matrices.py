"""Path incidence matrices.

Rows are candidate paths (in input order); columns are the customers, the
remaining elements and the feeder terminal junctions, each block in id
order. Storage is one index per row for the customer/terminal blocks and an
index tuple per row for the remaining block; dense arrays are built on
request.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .network import Network, id_key
from .paths import Path


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class PathMatrices:
    paths: tuple[Path, ...]
    customers: tuple[str, ...]
    remaining: tuple[str, ...]
    terminals: tuple[str, ...]
    row_customer: tuple[int, ...]
    row_terminal: tuple[int, ...]
    row_remaining: tuple[tuple[int, ...], ...]

    @property
    def n_paths(self) -> int:
        return len(self.paths)

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return len(self.paths), len(self.customers), len(self.remaining), len(self.terminals)

    # dense views ---------------------------------------------------
    def H_C(self) -> np.ndarray:
        out = np.zeros((self.n_paths, len(self.customers)), dtype=np.int64)
        out[np.arange(self.n_paths), list(self.row_customer)] = 1
        return out

    def H_T(self) -> np.ndarray:
        out = np.zeros((self.n_paths, len(self.terminals)), dtype=np.int64)
        out[np.arange(self.n_paths), list(self.row_terminal)] = 1
        return out

    def H_R(self) -> np.ndarray:
        out = np.zeros((self.n_paths, len(self.remaining)), dtype=np.int64)
        for k, cols in enumerate(self.row_remaining):
            out[k, list(cols)] = 1
        return out

    def H(self) -> np.ndarray:
        return np.hstack([self.H_C(), self.H_R(), self.H_T()])

    def row_elements(self, k: int) -> set[str]:
        """Element ids present in row ``k`` (read back from the blocks)."""
        return (
            {self.customers[self.row_customer[k]], self.terminals[self.row_terminal[k]]}
            | {self.remaining[j] for j in self.row_remaining[k]}
        )

    def paths_of_customer(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for k, c in enumerate(self.row_customer):
            out.setdefault(c, []).append(k)
        return out

    def to_csv(self, sink: Optional[TextIO] = None) -> str:
        """Dense debug dump: one row per path, header = element ids."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["path", *self.customers, *self.remaining, *self.terminals])
        for k, row in enumerate(self.H()):
            w.writerow([f"h{k + 1}", *row.tolist()])
        text = buf.getvalue()
        if sink is not None:
            sink.write(text)
        return text


def row_element_counts(M: PathMatrices) -> np.ndarray:
    """Number of remaining elements in each path row."""
    return np.array([len(cols) for cols in M.row_remaining], dtype=np.int64)


def build_matrices(paths: Sequence[Path], net: Network) -> PathMatrices:
    """Incidence blocks for ``paths`` with column sets taken from ``net``."""
    return from_columns(
        paths,
        [e.id for e in net.customers],
        [e.id for e in net.remaining],
        [e.id for e in net.terminals],
    )


def from_columns(
    paths: Sequence[Path],
    customers: Iterable[str],
    remaining: Iterable[str],
    terminals: Iterable[str],
) -> PathMatrices:
    """Build the blocks against explicit column id lists (sorted here)."""
    cols_c = tuple(sorted(customers, key=id_key))
    cols_r = tuple(sorted(remaining, key=id_key))
    cols_t = tuple(sorted(terminals, key=id_key))
    ic = {e: i for i, e in enumerate(cols_c)}
    ir = {e: i for i, e in enumerate(cols_r)}
    it = {e: i for i, e in enumerate(cols_t)}

    rc, rt, rr = [], [], []
    for k, p in enumerate(paths):
        if len(p.elements) < 2:
            raise MatrixError(f"path {k + 1} is too short")
        if p.customer not in ic:
            raise MatrixError(f"path {k + 1} starts at {p.customer!r}, not a customer")
        if p.terminal not in it:
            raise MatrixError(f"path {k + 1} ends at {p.terminal!r}, not a terminal")
        inner = []
        for e in p.interior:
            if e not in ir:
                raise MatrixError(f"path {k + 1}: interior element {e!r} is not a remaining element")
            inner.append(ir[e])
        if len(set(inner)) != len(inner):
            raise MatrixError(f"path {k + 1} repeats an element")
        rc.append(ic[p.customer])
        rt.append(it[p.terminal])
        rr.append(tuple(sorted(inner)))
    return PathMatrices(tuple(paths), cols_c, cols_r, cols_t, tuple(rc), tuple(rt), tuple(rr))
