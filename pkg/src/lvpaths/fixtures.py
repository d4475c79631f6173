"""Small reference networks shipped with the package."""
from __future__ import annotations

from importlib import resources

import numpy as np

from .loaders import load_network
from .matrices import PathMatrices, build_matrices
from .network import Element, Network
from .paths import Path
from .search import SearchConfig

# 6 customers (e1-e6), 6 lines (e7-e12), 4 feeder terminal junctions
# (e13-e16) and 2 transformers (e17, e18). Under ACADEMIC_CONFIG the search
# yields exactly ten candidate paths; h7 = (e3, e7, e8, e14).
ACADEMIC_CONFIG = SearchConfig(max_paths=50, max_distance=10.0, max_length=29.0, alpha=2.0)


def data_path(name: str):
    return resources.files("lvpaths") / "data" / name


def academic_network() -> Network:
    with resources.as_file(data_path("academic.geojson")) as p:
        return load_network(p)


# Published selection for the academic network, and the terminal
# association that goes with it: e11, e12 -> e13; e7, e8 -> e14; e9 -> e15.
ACADEMIC_SELECTION = np.array([1, 0, 0, 0, 0, 0, 1, 1, 1, 1])
ACADEMIC_ASSIGNMENT = {"e7": "e14", "e8": "e14", "e9": "e15", "e11": "e13", "e12": "e13"}


def assignment_matrix(M: PathMatrices, mapping: dict[str, str]) -> np.ndarray:
    T_R = np.zeros((len(M.terminals), len(M.remaining)), dtype=np.int64)
    for r, t in mapping.items():
        T_R[M.terminals.index(t), M.remaining.index(r)] = 1
    return T_R


def appendix_network() -> Network:
    """8 elements: customers e1, e2; lines e3-e5; junctions e6 (j1), e7 (j2); transformer e8."""
    return Network(
        [
            Element("e1", "customer", (24.0, 4.0), junction="e6"),
            Element("e2", "customer", (8.0, 7.0), junction="e6"),
            Element("e3", "line", (16.0, 0.0)),
            Element("e4", "line", (8.0, 0.0)),
            Element("e5", "line", (16.0, 8.0)),
            Element("e6", "junction", (0.0, 0.0)),
            Element("e7", "junction", (0.0, 10.0)),
            Element("e8", "transformer", (-6.0, 5.0)),
        ],
        {"e6": "e8", "e7": "e8"},
    )


def appendix_matrices() -> PathMatrices:
    net = appendix_network()
    paths = [
        Path.through(net, ["e1", "e3", "e4", "e6"]),
        Path.through(net, ["e1", "e5", "e4", "e6"]),
        Path.through(net, ["e2", "e4", "e6"]),
        Path.through(net, ["e2", "e5", "e4", "e6"]),
    ]
    return build_matrices(paths, net)


APPENDIX_SELECTION = np.array([1, 0, 1, 0])
# (a) both used lines on j1; (b) e3 moved to j2
APPENDIX_ACCEPTABLE = {"e3": "e6", "e4": "e6"}
APPENDIX_SPLIT = {"e3": "e7", "e4": "e6"}
