"""Solution JSON, coloured GeoJSON and SVG output."""
from __future__ import annotations

import copy
import json
import math
from typing import Optional
from xml.sax.saxutils import escape

import numpy as np

from .diagnostics import DiagnosticReport, covered_customers
from .ilp import IlpProblem
from .matrices import PathMatrices
from .network import Element, Network
from .solver import Solution

# matplotlib's tab20, fixed so figures do not depend on a plotting library
PALETTE = (
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
    "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
    "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
    "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5",
)
UNASSIGNED_COLOR = "#000000"
UNASSIGNED = "unassigned"


def terminal_color(M: PathMatrices, terminal: str) -> str:
    return PALETTE[M.terminals.index(terminal) % len(PALETTE)]


def feeder_of(sol: Solution, M: PathMatrices) -> dict[str, str]:
    """Element id -> terminal id for everything the solution places on a feeder."""
    out = dict(covered_customers(sol, M))
    for t, r in zip(*np.nonzero(sol.T_R)):
        out[M.remaining[r]] = M.terminals[t]
    for k in np.flatnonzero(sol.selected):
        t = M.terminals[M.row_terminal[k]]
        out[t] = t
    return out


def solution_dict(sol: Solution, M: PathMatrices, net: Network, problem: Optional[IlpProblem] = None) -> dict:
    paths = []
    for k in sol.selected_indices():
        p = M.paths[k]
        paths.append(
            {
                "path": f"h{k + 1}",
                "customer": p.customer,
                "terminal": p.terminal,
                "transformer": net.junction_to_transformer.get(p.terminal),
                "elements": list(p.elements),
                "length": round(p.length, 9),
            }
        )
    assignments = {M.remaining[r]: M.terminals[t] for t, r in zip(*np.nonzero(sol.T_R))}
    covered = {p["customer"] for p in paths}
    doc = {
        "status": sol.status,
        "objective": sol.objective,
        "objective_exact": str(sol.objective_exact),
        "lambda": str(problem.lam) if problem is not None else None,
        "candidates": M.n_paths,
        "paths": paths,
        "assignments": {r: assignments[r] for r in M.remaining if r in assignments},
        "uncovered": [c for c in M.customers if c not in covered],
        "nodes": sol.nodes,
    }
    return doc


def solution_json(sol: Solution, M: PathMatrices, net: Network, problem: Optional[IlpProblem] = None) -> str:
    """Deterministic text: no timings, fixed key order."""
    return json.dumps(solution_dict(sol, M, net, problem), indent=2) + "\n"


def element_feature(e: Element, net: Network) -> dict:
    if e.endpoints is not None:
        geom = {"type": "LineString", "coordinates": [list(e.endpoints[0]), list(e.endpoints[1])]}
    else:
        geom = {"type": "Point", "coordinates": list(e.coor)}
    props: dict = {"id": e.id, "type": e.type}
    if e.type == "transformer":
        props["junctions"] = sorted(
            (j for j, t in net.junction_to_transformer.items() if t == e.id), key=net.rank
        )
    elif e.junction:
        props["junction"] = e.junction
    return {"type": "Feature", "geometry": geom, "properties": props}


def network_geojson(net: Network) -> dict:
    """Input features when the network was loaded from GeoJSON, rebuilt otherwise."""
    feats = []
    for e in net.elements:
        f = net.features.get(e.id)
        feats.append(copy.deepcopy(f) if f is not None else element_feature(e, net))
    return {"type": "FeatureCollection", "features": feats}


def colored_geojson(sol: Solution, M: PathMatrices, net: Network) -> dict:
    feeder = feeder_of(sol, M)
    doc = network_geojson(net)
    customers = set(M.customers)
    for e, f in zip(net.elements, doc["features"]):
        props = f.setdefault("properties", {})
        t = feeder.get(e.id)
        props["feeder_id"] = t if t is not None else UNASSIGNED
        props["color"] = terminal_color(M, t) if t is not None else UNASSIGNED_COLOR
        if e.id in customers or e.type == "customer":
            props["uncovered"] = t is None
            if t is None:
                props["marker-symbol"] = "cross"
    return doc


def geojson_text(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _closest_anchors(a: Element, b: Element):
    return min(
        ((p, q) for p in a.anchors for q in b.anchors),
        key=lambda pq: math.hypot(pq[0][0] - pq[1][0], pq[0][1] - pq[1][1]),
    )


def render_svg(sol: Solution, M: PathMatrices, net: Network, width: int = 800, margin: float = 20.0) -> str:
    """Network map: elements coloured by feeder, path connections dashed,
    uncovered customers drawn as crosses."""
    feeder = feeder_of(sol, M)
    pts = [p for e in net.elements for p in e.anchors]
    xs, ys = [p[0] for p in pts] or [0.0], [p[1] for p in pts] or [0.0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (width - 2 * margin) / span
    height = int(math.ceil((y1 - y0) * scale + 2 * margin))

    def xy(p) -> str:
        return f"{margin + (p[0] - x0) * scale:.2f},{height - margin - (p[1] - y0) * scale:.2f}"

    def color(eid: str) -> str:
        t = feeder.get(eid)
        return terminal_color(M, t) if t is not None else UNASSIGNED_COLOR

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for k in sol.selected_indices():
        p = M.paths[k]
        c = color(p.customer)
        for a, b in zip(p.elements, p.elements[1:]):
            pa, pb = _closest_anchors(net[a], net[b])
            (ax, ay), (bx, by) = xy(pa).split(","), xy(pb).split(",")
            out.append(
                f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{c}" '
                f'stroke-width="1.5" stroke-dasharray="4 3"/>'
            )
    for e in net.elements:
        c = color(e.id)
        title = f"<title>{escape(e.id)} ({escape(e.type)})</title>"
        if e.endpoints is not None:
            (ax, ay), (bx, by) = xy(e.endpoints[0]).split(","), xy(e.endpoints[1]).split(",")
            out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{c}" stroke-width="3">{title}</line>')
            continue
        cx, cy = (float(v) for v in xy(e.coor).split(","))
        if e.type == "customer" and e.id not in feeder:
            s = 5
            out.append(
                f'<path d="M{cx - s:.2f},{cy - s:.2f}L{cx + s:.2f},{cy + s:.2f}M{cx - s:.2f},{cy + s:.2f}'
                f'L{cx + s:.2f},{cy - s:.2f}" stroke="{UNASSIGNED_COLOR}" stroke-width="2">{title}</path>'
            )
        elif e.type in ("junction", "transformer"):
            s = 6 if e.type == "transformer" else 4
            out.append(
                f'<rect x="{cx - s:.2f}" y="{cy - s:.2f}" width="{2 * s}" height="{2 * s}" fill="{c}">{title}</rect>'
            )
        else:
            r = 4 if e.type == "customer" else 3
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r}" fill="{c}">{title}</circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_solution(
    sol: Solution,
    report: DiagnosticReport,
    net: Network,
    M: PathMatrices,
    problem: Optional[IlpProblem] = None,
    *,
    out=None,
    geojson_out=None,
    svg_out=None,
    diagnostics_out=None,
) -> dict[str, str]:
    """Write each requested target; returns target name -> written text."""
    texts = {}
    if out is not None:
        texts["out"] = solution_json(sol, M, net, problem)
    if geojson_out is not None:
        texts["geojson_out"] = geojson_text(colored_geojson(sol, M, net))
    if svg_out is not None:
        texts["svg_out"] = render_svg(sol, M, net)
    if diagnostics_out is not None:
        texts["diagnostics_out"] = report.to_json()
    targets = {"out": out, "geojson_out": geojson_out, "svg_out": svg_out, "diagnostics_out": diagnostics_out}
    for key, text in texts.items():
        with open(targets[key], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return texts
