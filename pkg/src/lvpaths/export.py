"""Write the model as CPLEX-LP text and fixed-format MPS, and read both back.

Variables are ``P_k`` (path ``k``) and ``A_t_r`` (terminal ``t`` assigned
element ``r``), all 1-based. Row names: ``V{t}_{h}`` validity, ``C{c}``
unique path per customer, ``R{r}`` unique terminal per element.
"""
from __future__ import annotations

import io
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, TextIO

from .ilp import IlpProblem

log = logging.getLogger(__name__)

MPS_NAME_WIDTH = 8
MPS_VALUE_WIDTH = 12
_TERMS_PER_LINE = 8


class ExportError(ValueError):
    pass


def fmt(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return repr(float(value))


@dataclass
class Model:
    """Plain model description used to compare exports with their source."""

    sense: str
    objective: dict[str, float]
    rows: dict[str, tuple[dict[str, float], str, float]]
    binaries: list[str] = field(default_factory=list)


def model_of(problem: IlpProblem) -> Model:
    names = problem.variables
    objective = {names[i]: float(fmt(c)) for i, c in enumerate(problem.objective)}
    rows = {
        row.name: ({names[v]: float(c) for v, c in row.coeffs if c != 0}, row.sense, float(row.rhs))
        for row in problem.rows
    }
    return Model("max", objective, rows, list(names))


def _terms(pairs) -> list[str]:
    out = []
    for name, c in pairs:
        text = fmt(c)
        sign = "-" if text.startswith("-") else "+"
        out.append(f"{sign} {text.lstrip('-')} {name}")
    return out


def _wrap(head: str, terms: list[str], tail: str = "") -> list[str]:
    lines, cur = [], head
    for i, t in enumerate(terms):
        if i and i % _TERMS_PER_LINE == 0:
            lines.append(cur)
            cur = "   "
        cur += " " + t
    cur += tail
    lines.append(cur)
    return lines


def write_lp(problem: IlpProblem, sink: Optional[TextIO] = None) -> str:
    names = problem.variables
    M = problem.matrices
    out = [
        f"\\ lvpaths model: {M.n_paths} paths, {len(M.customers)} customers, "
        f"{len(M.remaining)} remaining elements, {len(M.terminals)} terminals",
        f"\\ lambda = {problem.lam}",
        "Maximize",
    ]
    out += _wrap(" obj:", _terms((names[i], c) for i, c in enumerate(problem.objective)))
    out.append("Subject To")
    for row in problem.rows:
        pairs = [(names[v], c) for v, c in row.coeffs]
        if not pairs:
            if not names:
                continue  # nothing to hang an empty row on
            anchor = names[row.index[-1]] if row.family == "validity" else names[0]
            pairs = [(anchor, 0)]
        out += _wrap(f" {row.name}:", _terms(pairs), f" {row.sense} {fmt(row.rhs)}")
    if names:
        out.append("Binaries")
        for i in range(0, len(names), _TERMS_PER_LINE):
            out.append(" " + " ".join(names[i : i + _TERMS_PER_LINE]))
    out.append("End")
    text = "\n".join(out) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def _mps_value(c) -> str:
    text = fmt(c)
    if len(text) <= MPS_VALUE_WIDTH:
        return text
    value = float(Fraction(c))
    for digits in range(MPS_VALUE_WIDTH, 0, -1):
        short = f"{value:.{digits}g}"
        if len(short) <= MPS_VALUE_WIDTH:
            log.warning("MPS value %s rounded to %s to fit the fixed-width field", text, short)
            return short
    raise ExportError(f"cannot fit {text} into {MPS_VALUE_WIDTH} characters")


def _mps_name(name: str) -> str:
    if len(name) > MPS_NAME_WIDTH or " " in name:
        raise ExportError(f"name {name!r} does not fit fixed MPS ({MPS_NAME_WIDTH} chars); use the LP export")
    return name


def write_mps(problem: IlpProblem, sink: Optional[TextIO] = None) -> str:
    names = problem.variables
    by_var: dict[int, list[tuple[str, int]]] = {i: [] for i in range(len(names))}
    for row in problem.rows:
        for v, c in row.coeffs:
            if c != 0:
                by_var[v].append((row.name, c))

    out = ["NAME          LVPATHS", "OBJSENSE", "    MAX", "ROWS", " N  OBJ"]
    for row in problem.rows:
        out.append(f" {'L' if row.sense == '<=' else 'G'}  {_mps_name(row.name)}")
    out.append("COLUMNS")
    out.append("    MARKER                 'MARKER'                 'INTORG'")
    for i, name in enumerate(names):
        col = _mps_name(name)
        out.append(f"    {col:<8}  {'OBJ':<8}  {_mps_value(problem.objective[i]):>12}")
        for rname, c in by_var[i]:
            out.append(f"    {col:<8}  {rname:<8}  {_mps_value(c):>12}")
    out.append("    MARKER                 'MARKER'                 'INTEND'")
    out.append("RHS")
    for row in problem.rows:
        if row.rhs != 0:
            out.append(f"    {'RHS':<8}  {row.name:<8}  {_mps_value(row.rhs):>12}")
    out.append("BOUNDS")
    for name in names:
        out.append(f" BV {'BND':<8}  {name}")
    out.append("ENDATA")
    text = "\n".join(out) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def export_model(problem: IlpProblem, lp_sink: Optional[TextIO] = None, mps_sink: Optional[TextIO] = None) -> str:
    """Write LP and/or MPS; returns the LP text."""
    text = write_lp(problem, lp_sink)
    if mps_sink is not None:
        write_mps(problem, mps_sink)
    return text


# -- readers (for the formats written above) ---------------------------
_TERM = re.compile(r"([+-])\s*([0-9.eE+-]+)\s+([A-Za-z_][\w.]*)")
_ROW = re.compile(r"^\s*(\w+):\s*(.*?)\s*(<=|>=|=)\s*(\S+)\s*$")


def _parse_terms(text: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for sign, num, name in _TERM.findall(text):
        value = float(num)
        out[name] = out.get(name, 0.0) + (-value if sign == "-" else value)
    return out


def read_lp(text: str) -> Model:
    section = None
    obj_sense = "max"
    stmts: dict[str, list[str]] = {"obj": [], "rows": [], "bin": []}
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0] if raw.lstrip().startswith("\\") else raw
        key = line.strip().lower()
        if not key:
            continue
        if key in ("maximize", "minimize"):
            section, obj_sense = "obj", key[:3]
            continue
        if key == "subject to":
            section = "rows"
            continue
        if key == "binaries":
            section = "bin"
            continue
        if key == "end":
            break
        continued = raw.startswith("   ") and not raw.startswith("    \\")
        target = stmts[section]
        if section == "bin" or not target or not continued:
            target.append(line.strip())
        else:
            target[-1] += " " + line.strip()

    objective = _parse_terms(" ".join(stmts["obj"]).split(":", 1)[-1])
    rows = {}
    for stmt in stmts["rows"]:
        m = _ROW.match(stmt)
        if not m:
            raise ExportError(f"cannot parse LP row {stmt!r}")
        name, body, sense, rhs = m.groups()
        rows[name] = ({k: v for k, v in _parse_terms(body).items() if v != 0}, sense, float(rhs))
    binaries = " ".join(stmts["bin"]).split()
    return Model(obj_sense, objective, rows, binaries)


def read_mps(text: str) -> Model:
    section = None
    sense = "min"
    kinds: dict[str, str] = {}
    order: list[str] = []
    objective: dict[str, float] = {}
    coeffs: dict[str, dict[str, float]] = {}
    rhs: dict[str, float] = {}
    binaries: list[str] = []
    obj_row = None
    for raw in text.splitlines():
        if not raw.strip():
            continue
        if not raw.startswith(" "):
            section = raw.split()[0].upper()
            continue
        f = raw.split()
        if section == "OBJSENSE":
            sense = "max" if f[0].upper().startswith("MAX") else "min"
        elif section == "ROWS":
            kind, name = f
            if kind == "N":
                obj_row = name
            else:
                kinds[name] = kind
                order.append(name)
                coeffs[name] = {}
        elif section == "COLUMNS":
            if "'MARKER'" in f:
                continue
            col = f[0]
            for rname, val in zip(f[1::2], f[2::2]):
                if rname == obj_row:
                    objective[col] = float(val)
                else:
                    coeffs[rname][col] = float(val)
        elif section == "RHS":
            for rname, val in zip(f[1::2], f[2::2]):
                rhs[rname] = float(val)
        elif section == "BOUNDS":
            if f[0] == "BV":
                binaries.append(f[2])
    sym = {"L": "<=", "G": ">=", "E": "="}
    rows = {n: (coeffs[n], sym[kinds[n]], rhs.get(n, 0.0)) for n in order}
    return Model(sense, objective, rows, binaries)


def roundtrip_lp(problem: IlpProblem) -> Model:
    return read_lp(write_lp(problem))


def roundtrip_mps(problem: IlpProblem) -> Model:
    buf = io.StringIO()
    write_mps(problem, buf)
    return read_mps(buf.getvalue())
