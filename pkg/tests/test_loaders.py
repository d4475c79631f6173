import json

import pytest

from lvpaths.fixtures import academic_network, data_path
from lvpaths.loaders import LoadError, load_network


def feature(fid, ftype, coords, **props):
    geom = {"type": "LineString" if isinstance(coords[0], list) else "Point", "coordinates": coords}
    return {"type": "Feature", "geometry": geom, "properties": {"id": fid, "type": ftype, **props}}


def fc(*features):
    return {"type": "FeatureCollection", "features": list(features)}


FOUR = fc(
    feature("c1", "customer", [0, 0], junction="j1"),
    feature("l1", "line", [[1, 0], [4, 0]]),
    feature("j1", "junction", [5, 0]),
    feature("t1", "transformer", [6, 0], junctions=["j1"]),
)


def test_four_features():
    net = load_network(FOUR)
    assert [len(s) for s in (net.customers, net.remaining, net.terminals)] == [1, 1, 1]
    assert net.junction_to_transformer == {"j1": "t1"}
    assert net["l1"].endpoints == ((1.0, 0.0), (4.0, 0.0)) and net["l1"].coor == (2.5, 0.0)


def test_academic_file():
    net = academic_network()
    assert len(net) == 18 and len(net.customers) == 6


def test_file_and_string_junction_list(tmp_path):
    doc = json.loads(json.dumps(FOUR))
    doc["features"][3]["properties"] = {"id": "t1", "type": "transformer", "junctions": "j1; j9"}
    doc["features"].append(feature("j9", "junction", [7, 0]))
    p = tmp_path / "n.geojson"
    p.write_text(json.dumps(doc))
    assert load_network(p).junction_to_transformer == {"j1": "t1", "j9": "t1"}


def test_csv(tmp_path):
    p = tmp_path / "n.csv"
    p.write_text("id,type,x,y,x2,y2,junction\nc1,customer,0,0,,,j1\nl1,line,1,0,4,0,\nj1,junction,5,0,,,\nt1,transformer,6,0,,,j1\n")
    net = load_network(p)
    assert net["l1"].endpoints is not None and net.junction_to_transformer == {"j1": "t1"}


def test_csv_duplicate_names_id(tmp_path):
    p = tmp_path / "n.csv"
    p.write_text("id,type,x,y\nl1,line,0,0\nl1,line,1,0\n")
    with pytest.raises(LoadError, match=r"line 3.*'l1'"):
        load_network(p)


@pytest.mark.parametrize(
    "mutate,match",
    [
        (lambda d: d["features"][0]["properties"].pop("junction"), "feature 0.*no junction"),
        (lambda d: d["features"][1]["properties"].update(type="cable"), "feature 1.*unknown type"),
        (lambda d: d["features"][2]["geometry"].update(coordinates=["x", 0]), "feature 2.*not a number"),
        (lambda d: d["features"][2]["geometry"].update(coordinates=[float("inf"), 0]), "feature 2.*non-finite"),
        (lambda d: d["features"][1]["geometry"].update(type="Polygon"), "feature 1.*unsupported"),
        (lambda d: d["features"][0]["properties"].update(junction="j7"), "unknown junction"),
    ],
)
def test_errors_carry_locus(mutate, match):
    doc = json.loads(json.dumps(FOUR))
    mutate(doc)
    with pytest.raises(LoadError, match=match):
        load_network(doc)


def test_lenient_keeps_unlabelled_customer():
    doc = json.loads(json.dumps(FOUR))
    doc["features"][0]["properties"].pop("junction")
    net = load_network(doc, strict=False)
    assert net["c1"].junction is None


def test_missing_file():
    with pytest.raises(LoadError, match="no such file"):
        load_network("/nonexistent/x.geojson")


def test_extra_types():
    doc = fc(*FOUR["features"], feature("s1", "switch", [3, 3]))
    with pytest.raises(LoadError):
        load_network(doc)
    assert load_network(doc, extra_types=["switch"])["s1"].type == "switch"


def test_lonlat_projection():
    doc = fc(
        feature("c1", "customer", [4.0, 50.0], junction="j1"),
        feature("j1", "junction", [4.001, 50.0]),
    )
    net = load_network(doc, lonlat=True)
    dx = net["j1"].coor[0] - net["c1"].coor[0]
    assert dx == pytest.approx(71.5, abs=0.5)  # 0.001 deg of longitude at 50 N


def test_data_files_present():
    assert data_path("academic.geojson").is_file()
    assert data_path("academic.conf").is_file()
