"""Run configuration and the end-to-end pipeline.

Stages: load, generate, matrices, model, solve, diagnose, emit. Errors are
re-raised as :class:`StageError` carrying the stage name.
"""
from __future__ import annotations

import logging
import sys
import time
from dataclasses import dataclass, field, fields
from pathlib import Path as FsPath
from typing import Optional, TextIO, Union

from .diagnostics import DiagnosticReport, diagnose
from .emit import emit_solution
from .export import write_lp, write_mps
from .ilp import IlpProblem, build_problem
from .loaders import load_network
from .matrices import PathMatrices, build_matrices
from .network import Network
from .search import CandidateSet, SearchConfig, generate_candidates
from .solver import ABORTED, Solution, solve

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ISSUES = 2
EXIT_ABORTED = 3


class ConfigError(ValueError):
    pass


class StageError(RuntimeError):
    def __init__(self, stage: str, exc: BaseException):
        super().__init__(f"[{stage}] {exc}")
        self.stage = stage
        self.cause = exc


@dataclass(frozen=True)
class RunConfig:
    network: Optional[str] = None
    max_paths: int = 5
    max_distance: float = 30.0
    max_length: float = 1000.0
    alpha: float = 2.0
    customer_junction: bool = False
    lam: str = "auto"
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    neighbors: int = 3
    workers: int = 1
    lonlat: bool = False
    lenient: bool = False
    out: Optional[str] = None
    geojson_out: Optional[str] = None
    svg_out: Optional[str] = None
    lp_out: Optional[str] = None
    mps_out: Optional[str] = None
    diagnostics_out: Optional[str] = None

    @property
    def search(self) -> SearchConfig:
        return SearchConfig(
            max_paths=self.max_paths,
            max_distance=self.max_distance,
            max_length=self.max_length,
            alpha=self.alpha,
            customer_junction=self.customer_junction,
        )

    def outputs(self) -> dict[str, Optional[str]]:
        return {k: getattr(self, k) for k in OUTPUT_KEYS}

    def validate(self) -> "RunConfig":
        if not self.network:
            raise ConfigError("no network given")
        if not FsPath(self.network).is_file():
            raise ConfigError(f"network file {self.network!r} not found")
        for key, target in self.outputs().items():
            if target is not None and not FsPath(target).resolve().parent.is_dir():
                raise ConfigError(f"{key}: directory of {target!r} does not exist")
        if self.node_limit is not None and self.node_limit < 0:
            raise ConfigError("node_limit must be >= 0")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ConfigError("time_limit must be > 0")
        if self.neighbors < 1 or self.workers < 1:
            raise ConfigError("neighbors and workers must be >= 1")
        try:
            self.search
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


OUTPUT_KEYS = ("out", "geojson_out", "svg_out", "lp_out", "mps_out", "diagnostics_out")
PATH_KEYS = ("network",) + OUTPUT_KEYS
_BOOL_WORDS = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}
# config/flag spelling -> RunConfig field
ALIASES = {"lambda": "lam"}


def _field_types() -> dict[str, str]:
    return {f.name: str(f.type) for f in fields(RunConfig)}


def coerce(key: str, value: str):
    """Convert a textual setting to the type of the RunConfig field."""
    name = ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
    types = _field_types()
    if name not in types:
        raise ConfigError(f"unknown setting {key!r}")
    t = types[name]
    text = str(value).strip()
    try:
        if "bool" in t:
            if text.lower() not in _BOOL_WORDS:
                raise ValueError(f"expected a boolean, got {text!r}")
            return name, _BOOL_WORDS[text.lower()]
        if t.startswith("Optional") and text.lower() in ("", "none"):
            return name, None
        if "int" in t:
            return name, int(text)
        if "float" in t:
            return name, float(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None
    return name, text


def read_config(source: Union[str, FsPath, TextIO]) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment.

    Relative paths are resolved against the file's directory.
    """
    if hasattr(source, "read"):
        text, base = source.read(), None
        where = "<config>"
    else:
        p = FsPath(source)
        if not p.is_file():
            raise ConfigError(f"config file {str(p)!r} not found")
        text, base, where = p.read_text(encoding="utf-8"), p.parent, str(p)
    values = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{where}: line {n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            name, v = coerce(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{where}: line {n}: {exc}") from None
        if name in PATH_KEYS and v is not None and base is not None and not FsPath(v).is_absolute():
            v = str(base / v)
        values[name] = v
    return values


def make_config(file_values: Optional[dict] = None, **overrides) -> RunConfig:
    """File values first, then non-None keyword overrides."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


@dataclass
class PipelineResult:
    config: RunConfig
    network: Network
    candidates: CandidateSet
    matrices: PathMatrices
    problem: IlpProblem
    solution: Solution
    report: DiagnosticReport
    texts: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if self.solution.status == ABORTED:
            return EXIT_ABORTED
        return EXIT_ISSUES if self.report else EXIT_OK


class _Stages:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def run(self, name: str, fn, *args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        except StageError:
            raise
        except Exception as exc:
            raise StageError(name, exc) from exc
        finally:
            self.timings[name] = time.perf_counter() - start


def _write(target: str, text: str) -> None:
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def execute(cfg: RunConfig, network: Optional[Network] = None) -> PipelineResult:
    """Run every stage; ``network`` skips loading (used by tests and tools)."""
    st = _Stages()
    if network is None:
        cfg = st.run("config", cfg.validate)
        net = st.run("load", load_network, cfg.network, lonlat=cfg.lonlat, strict=not cfg.lenient)
    else:
        net = network
    search = st.run("config", lambda: cfg.search)
    cands = st.run("generate", generate_candidates, net, search, cfg.workers)
    M = st.run("matrices", build_matrices, cands.paths, net)
    problem = st.run("model", build_problem, M, cfg.lam)
    texts = {}
    if cfg.lp_out:
        texts["lp_out"] = st.run("export", write_lp, problem)
        st.run("export", _write, cfg.lp_out, texts["lp_out"])
    if cfg.mps_out:
        texts["mps_out"] = st.run("export", write_mps, problem)
        st.run("export", _write, cfg.mps_out, texts["mps_out"])
    sol = st.run("solve", solve, problem, cfg.node_limit, cfg.time_limit)
    report = st.run("diagnose", diagnose, sol, M, net, cfg.neighbors, cands.failures)
    texts.update(
        st.run(
            "emit",
            emit_solution,
            sol,
            report,
            net,
            M,
            problem,
            out=cfg.out,
            geojson_out=cfg.geojson_out,
            svg_out=cfg.svg_out,
            diagnostics_out=cfg.diagnostics_out,
        )
    )
    return PipelineResult(cfg, net, cands, M, problem, sol, report, texts, st.timings)


def run_pipeline(cfg: RunConfig, stderr: Optional[TextIO] = None) -> int:
    """Exit status: 0 optimal without issues, 2 optimal with issues,
    3 budget exhausted, 1 on any error."""
    stderr = stderr if stderr is not None else sys.stderr
    try:
        res = execute(cfg)
    except (StageError, ConfigError) as exc:
        msg = str(exc) if isinstance(exc, StageError) else f"[config] {exc}"
        print(f"lvpaths: error: {msg}", file=stderr)
        return EXIT_ERROR
    sol = res.solution
    print(
        f"lvpaths: {sol.status}: {len(sol.selected_indices())}/{len(res.matrices.customers)} customers covered, "
        f"objective {sol.objective_exact}, {len(res.report)} issue(s)",
        file=stderr,
    )
    return res.exit_code


__all__ = [
    "ConfigError",
    "PipelineResult",
    "RunConfig",
    "StageError",
    "execute",
    "make_config",
    "read_config",
    "run_pipeline",
]
