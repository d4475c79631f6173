"""Read networks from GeoJSON or CSV.

GeoJSON: a FeatureCollection whose features carry ``id``, ``type`` and (for
customers) ``junction`` properties. Points become point elements; a
LineString keeps its first and last vertex as endpoints. Transformer
features list the junctions they feed in ``junctions`` (or ``junction``).

CSV: columns ``id, type, x, y`` plus optional ``x2, y2`` (second line
endpoint) and ``junction``. On transformer rows ``junction`` holds the fed
junction ids separated by ``;``.
"""
from __future__ import annotations

import copy
import csv
import json
import math
from pathlib import Path as FsPath
from typing import Any, Iterable, Optional, Union

from .network import CANONICAL_TYPES, Element, Network, NetworkError

EARTH_RADIUS = 6_371_008.8

Source = Union[str, FsPath, dict]


class LoadError(ValueError):
    pass


def load_network(
    source: Source,
    *,
    lonlat: bool = False,
    strict: bool = True,
    extra_types: Iterable[str] = (),
) -> Network:
    """Load and validate a network.

    ``lonlat=True`` treats coordinates as degrees and projects them with an
    equirectangular projection around the mean latitude. ``strict=False``
    keeps customers with a missing or dangling junction label.
    """
    if isinstance(source, dict):
        return _from_geojson(source, "<dict>", lonlat, strict, extra_types)
    path = FsPath(source)
    if not path.exists():
        raise LoadError(f"{path}: no such file")
    if path.suffix.lower() == ".csv":
        with path.open(newline="", encoding="utf-8") as fh:
            return _from_csv(fh, str(path), lonlat, strict, extra_types)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON ({exc})") from None
    return _from_geojson(doc, str(path), lonlat, strict, extra_types)


def _split_ids(value: Any) -> list[str]:
    if value is None or value == "":
        return []
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [v.strip() for v in str(value).replace(",", ";").split(";") if v.strip()]


def _float(v: Any, where: str) -> float:
    try:
        f = float(v)
    except (TypeError, ValueError):
        raise LoadError(f"{where}: coordinate {v!r} is not a number") from None
    if not math.isfinite(f):
        raise LoadError(f"{where}: non-finite coordinate {v!r}")
    return f


class _Projector:
    def __init__(self, lats: list[float]):
        self.cos0 = math.cos(math.radians(sum(lats) / len(lats))) if lats else 1.0

    def __call__(self, lon: float, lat: float) -> tuple[float, float]:
        return (
            EARTH_RADIUS * math.radians(lon) * self.cos0,
            EARTH_RADIUS * math.radians(lat),
        )


def _identity(x: float, y: float) -> tuple[float, float]:
    return (x, y)


def _assemble(records, where: str, lonlat: bool, strict: bool, extra_types, features=None) -> Network:
    known = CANONICAL_TYPES | set(extra_types)
    lats = [pt[1] for r in records for pt in r["points"]]
    proj = _Projector(lats) if lonlat else _identity

    elements, j2t, seen = [], {}, {}
    for r in records:
        loc, eid, etype = r["loc"], r["id"], r["type"]
        if not eid:
            raise LoadError(f"{loc}: missing id")
        if etype not in known:
            raise LoadError(f"{loc}: unknown type {etype!r} for element {eid!r}")
        if eid in seen:
            raise LoadError(f"{loc}: duplicate id {eid!r} (first seen at {seen[eid]})")
        seen[eid] = loc
        pts = [proj(*p) for p in r["points"]]
        junction = r.get("junction") or None
        if etype == "customer" and not junction and strict:
            raise LoadError(f"{loc}: customer {eid!r} has no junction")
        if len(pts) >= 2:
            e = Element.segment(eid, pts[0], pts[-1], type=etype)
            if junction and etype != "transformer":
                e = Element(e.id, e.type, e.coor, junction, e.endpoints)
        else:
            e = Element(eid, etype, pts[0], junction if etype != "transformer" else None)
        elements.append(e)
        if etype == "transformer":
            for j in _split_ids(r.get("junction")):
                if j in j2t and j2t[j] != eid:
                    raise LoadError(f"{loc}: junction {j!r} already fed by {j2t[j]!r}")
                j2t[j] = eid
    try:
        return Network(elements, j2t, strict=strict, features=features)
    except NetworkError as exc:
        raise LoadError(f"{where}: {exc}") from None


def _from_geojson(doc: dict, where: str, lonlat: bool, strict: bool, extra_types) -> Network:
    if doc.get("type") != "FeatureCollection":
        raise LoadError(f"{where}: expected a FeatureCollection")
    records, features = [], {}
    for i, feat in enumerate(doc.get("features", [])):
        loc = f"{where}: feature {i}"
        props = feat.get("properties") or {}
        geom = feat.get("geometry") or {}
        eid = props.get("id", feat.get("id"))
        eid = None if eid is None else str(eid)
        gtype = geom.get("type")
        coords = geom.get("coordinates")
        if gtype == "Point":
            points = [(_float(coords[0], loc), _float(coords[1], loc))]
        elif gtype == "LineString":
            if not coords or len(coords) < 2:
                raise LoadError(f"{loc}: LineString needs at least two positions")
            points = [
                (_float(coords[0][0], loc), _float(coords[0][1], loc)),
                (_float(coords[-1][0], loc), _float(coords[-1][1], loc)),
            ]
        else:
            raise LoadError(f"{loc}: unsupported geometry {gtype!r}")
        etype = str(props.get("type", "")).strip().lower()
        junction = props.get("junctions", props.get("junction"))
        if etype != "transformer" and junction is not None:
            junction = str(junction)
        records.append({"loc": loc, "id": eid, "type": etype, "points": points, "junction": junction})
        if eid is not None:
            features[eid] = copy.deepcopy(feat)
    return _assemble(records, where, lonlat, strict, extra_types, features)


def _from_csv(fh, where: str, lonlat: bool, strict: bool, extra_types) -> Network:
    reader = csv.DictReader(fh)
    cols = set(reader.fieldnames or [])
    missing = {"id", "type", "x", "y"} - cols
    if missing:
        raise LoadError(f"{where}: missing column(s) {sorted(missing)}")
    records = []
    for n, row in enumerate(reader, start=2):  # line 1 is the header
        loc = f"{where}: line {n}"
        points = [(_float(row["x"], loc), _float(row["y"], loc))]
        if row.get("x2") not in (None, "") or row.get("y2") not in (None, ""):
            points.append((_float(row.get("x2"), loc), _float(row.get("y2"), loc)))
        records.append(
            {
                "loc": loc,
                "id": (row["id"] or "").strip(),
                "type": (row["type"] or "").strip().lower(),
                "points": points,
                "junction": (row.get("junction") or "").strip() or None,
            }
        )
    return _assemble(records, where, lonlat, strict, extra_types)
