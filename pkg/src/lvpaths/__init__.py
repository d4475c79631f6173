"""Customer topological path identification in low-voltage networks."""
from .network import ConnectionConditions, Element, ElementType, Network, connections, dist, subset
from .paths import Path, PathConditions, hypothetical_count, validate_path
from .search import SearchConfig, customer_paths, generate_candidates
from .matrices import PathMatrices, build_matrices, row_element_counts
from .ilp import IlpProblem, build_problem, constraint1_intermediates, evaluate
from .solver import Solution, brute_force, solve
from .diagnostics import DiagnosticReport, Issue, diagnose
from .export import export_model, write_lp, write_mps
from .loaders import load_network
from .emit import colored_geojson, network_geojson, render_svg, solution_json
from .pipeline import RunConfig, run_pipeline
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConnectionConditions",
    "DiagnosticReport",
    "Element",
    "ElementType",
    "IlpProblem",
    "Issue",
    "Network",
    "Path",
    "PathConditions",
    "PathMatrices",
    "RunConfig",
    "SearchConfig",
    "Solution",
    "brute_force",
    "build_matrices",
    "build_problem",
    "colored_geojson",
    "connections",
    "constraint1_intermediates",
    "customer_paths",
    "diagnose",
    "dist",
    "evaluate",
    "export_model",
    "generate_candidates",
    "hypothetical_count",
    "load_network",
    "network_geojson",
    "render_svg",
    "row_element_counts",
    "run_pipeline",
    "solution_json",
    "solve",
    "subset",
    "validate_path",
    "write_lp",
    "write_mps",
]
