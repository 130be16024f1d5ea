"""Run configuration: TOML schema, presets, and content hashing.

A run is one structured file with three blocks::

    [problem]
    L1 = 0.0
    L2 = 6.0
    alpha2 = { family = "uniform", a = 1.0, b = 2.0 }
    bc_A = { kind = "deterministic", value = -3.0 }
    bc_B = { kind = "random", family = "normal", mu = 2.0, sigma2 = 1.0 }
    psi = { eigenvalues = "brownian_bridge", xi = "normal" }

    [run]
    x = 5.0
    t = 0.2
    N = [1, 2, 3, 4]
    estimator = "quad"      # or "mc"
    samples = 1000000        # mc estimator and oracle sample count
    seed = 20260822
    paths = 3                # draws for the path command
    grid = { points = 401, span = 6.0 }   # or { lo = ..., hi = ..., points = ... }

    [output]
    directory = "out"
    formats = ["csv"]

Distribution tables accept the families uniform / normal / gamma / beta /
triangular / truncated_exponential / quartic with their natural parameter
names.  The schema is the contract; unknown keys are rejected so that typos
fail loudly instead of silently running defaults.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

try:
    import tomllib as tomli  # 3.11+
except ModuleNotFoundError:  # pragma: no cover
    import tomli

from .density import EngineSettings, ExpectationMC, Quadrature
from .distributions import (
    Beta,
    Gamma,
    Normal,
    Quartic,
    ScalarDistribution,
    Triangular,
    TruncatedExponential,
    Uniform,
)
from .errors import ConfigError
from .kl import BrownianBridge, ExplicitEigenvalues, KLProcess, LogDamped
from .problem import HeatProblem

_FAMILIES = {
    "uniform": (Uniform, ("a", "b")),
    "normal": (Normal, ("mu", "sigma2")),
    "gamma": (Gamma, ("shape", "rate")),
    "beta": (Beta, ("a", "b")),
    "triangular": (Triangular, ("lo", "mode", "hi")),
    "truncated_exponential": (TruncatedExponential, ("rate", "lo", "hi")),
    "quartic": (Quartic, ()),
}

_EIGEN_RULES = {
    "brownian_bridge": BrownianBridge,
    "log_damped": LogDamped,
}


def _reject_unknown(block: Dict[str, Any], allowed, where: str) -> None:
    extra = set(block) - set(allowed)
    if extra:
        raise ConfigError(f"unknown keys {sorted(extra)} in {where}")


def parse_distribution(spec: Dict[str, Any], where: str) -> ScalarDistribution:
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigError(f"{where}: expected a table with a 'family' key")
    family = spec["family"]
    if family not in _FAMILIES:
        raise ConfigError(
            f"{where}: unknown family {family!r}; choose from "
            f"{sorted(_FAMILIES)}")
    cls, params = _FAMILIES[family]
    _reject_unknown(spec, ("family",) + params, where)
    missing = [k for k in params if k not in spec]
    if missing:
        raise ConfigError(f"{where}: family {family!r} needs {missing}")
    try:
        return cls(*(float(spec[k]) for k in params))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_bc(spec: Dict[str, Any], where: str):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"{where}: expected a table with a 'kind' key")
    kind = spec["kind"]
    if kind == "deterministic":
        _reject_unknown(spec, ("kind", "value"), where)
        if "value" not in spec:
            raise ConfigError(f"{where}: deterministic boundary needs 'value'")
        return float(spec["value"])
    if kind == "random":
        law_spec = {k: v for k, v in spec.items() if k != "kind"}
        return parse_distribution(law_spec, where)
    raise ConfigError(f"{where}: kind must be 'deterministic' or 'random', "
                      f"got {kind!r}")


def _parse_psi(spec: Dict[str, Any]) -> KLProcess:
    if not isinstance(spec, dict):
        raise ConfigError("problem.psi: expected a table")
    _reject_unknown(spec, ("eigenvalues", "xi", "truncation_default"),
                    "problem.psi")
    eig = spec.get("eigenvalues")
    if isinstance(eig, str):
        if eig not in _EIGEN_RULES:
            raise ConfigError(
                f"problem.psi.eigenvalues: unknown rule {eig!r}; choose from "
                f"{sorted(_EIGEN_RULES)} or give an explicit list")
        rule = _EIGEN_RULES[eig]()
    elif isinstance(eig, list):
        rule = ExplicitEigenvalues([float(v) for v in eig])
    else:
        raise ConfigError("problem.psi.eigenvalues: expected a rule name or "
                          "a list of values")
    xi_spec = spec.get("xi")
    if xi_spec is None:
        raise ConfigError("problem.psi.xi: coefficient family is required")
    if isinstance(xi_spec, str):
        # bare family name = its standardized member (coefficients must have
        # mean 0 and variance 1 anyway)
        standardized = {"normal": lambda: Normal(0.0, 1.0), "quartic": Quartic}
        if xi_spec not in standardized:
            raise ConfigError(
                f"problem.psi.xi: no standardized default for {xi_spec!r}; "
                f"give a parameter table")
        xi = standardized[xi_spec]()
    else:
        xi = parse_distribution(dict(xi_spec), "problem.psi.xi")
    kwargs = {}
    if "truncation_default" in spec:
        kwargs["truncation_default"] = int(spec["truncation_default"])
    return KLProcess(rule, xi, mc_check=False, **kwargs)


@dataclass
class GridSpec:
    """Either an explicit [lo, hi] window or a span in pilot-sigma units."""

    points: int = 401
    span: float = 6.0
    lo: Optional[float] = None
    hi: Optional[float] = None

    @property
    def explicit(self) -> bool:
        return self.lo is not None and self.hi is not None


@dataclass
class RunConfig:
    problem: HeatProblem
    x: float
    t: float
    N_list: List[int]
    estimator: str = "quad"
    samples: int = 1_000_000
    seed: int = 0
    paths: int = 3
    grid: GridSpec = field(default_factory=GridSpec)
    out_dir: str = "out"
    formats: List[str] = field(default_factory=lambda: ["csv"])
    raw: Dict[str, Any] = field(default_factory=dict)

    def estimator_for(self, seed_offset: int = 0):
        if self.estimator == "quad":
            return Quadrature()
        return ExpectationMC(samples=self.samples,
                             seed=self.seed + seed_offset)

    def engine_settings(self, seed_offset: int = 0) -> EngineSettings:
        return EngineSettings(estimator=self.estimator_for(seed_offset))

    def config_hash(self) -> str:
        # the hash identifies the numerical run; where the files land does not
        # change what was computed, so the [output] block stays out of it
        return hash_config({k: v for k, v in self.raw.items()
                            if k != "output"})


def _canonical_dump(value: Any) -> str:
    """Deterministic single-line rendering used for hashing."""
    if isinstance(value, dict):
        inner = ",".join(f"{k}={_canonical_dump(value[k])}"
                         for k in sorted(value))
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_canonical_dump(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def hash_config(raw: Dict[str, Any]) -> str:
    return hashlib.sha256(_canonical_dump(raw).encode("utf-8")).hexdigest()[:16]


def from_dict(raw: Dict[str, Any]) -> RunConfig:
    _reject_unknown(raw, ("problem", "run", "output"), "top level")
    try:
        prob_block = dict(raw["problem"])
        run_block = dict(raw["run"])
    except KeyError as exc:
        raise ConfigError(f"missing required block {exc}") from exc
    out_block = dict(raw.get("output", {}))

    _reject_unknown(prob_block, ("L1", "L2", "alpha2", "bc_A", "bc_B", "psi"),
                    "problem")
    for key in ("L1", "L2", "alpha2", "bc_A", "bc_B", "psi"):
        if key not in prob_block:
            raise ConfigError(f"problem.{key} is required")
    problem = HeatProblem(
        float(prob_block["L1"]), float(prob_block["L2"]),
        parse_distribution(dict(prob_block["alpha2"]), "problem.alpha2"),
        _parse_bc(dict(prob_block["bc_A"]), "problem.bc_A"),
        _parse_bc(dict(prob_block["bc_B"]), "problem.bc_B"),
        _parse_psi(dict(prob_block["psi"])),
    )

    _reject_unknown(run_block, ("x", "t", "N", "estimator", "samples", "seed",
                                "paths", "grid"), "run")
    for key in ("x", "t", "N", "seed"):
        if key not in run_block:
            raise ConfigError(f"run.{key} is required")
    n_raw = run_block["N"]
    if isinstance(n_raw, int):
        n_raw = [n_raw]
    n_list = [int(n) for n in n_raw]
    if not n_list or any(n < 1 for n in n_list):
        raise ConfigError(f"run.N must be a nonempty list of orders >= 1, "
                          f"got {run_block['N']!r}")
    estimator = run_block.get("estimator", "quad")
    if estimator not in ("quad", "mc"):
        raise ConfigError(f"run.estimator must be 'quad' or 'mc', got "
                          f"{estimator!r}")
    grid_block = dict(run_block.get("grid", {}))
    _reject_unknown(grid_block, ("points", "span", "lo", "hi"), "run.grid")
    if ("lo" in grid_block) != ("hi" in grid_block):
        raise ConfigError("run.grid: lo and hi must be given together")
    grid = GridSpec(points=int(grid_block.get("points", 401)),
                    span=float(grid_block.get("span", 6.0)),
                    lo=(float(grid_block["lo"]) if "lo" in grid_block else None),
                    hi=(float(grid_block["hi"]) if "hi" in grid_block else None))
    if grid.points < 2:
        raise ConfigError("run.grid.points must be >= 2")
    if grid.explicit and not grid.lo < grid.hi:
        raise ConfigError("run.grid: need lo < hi")

    _reject_unknown(out_block, ("directory", "formats"), "output")
    formats = list(out_block.get("formats", ["csv"]))
    if any(f != "csv" for f in formats):
        raise ConfigError(f"output.formats: only 'csv' is supported, got "
                          f"{formats}")

    return RunConfig(
        problem=problem,
        x=float(run_block["x"]),
        t=float(run_block["t"]),
        N_list=n_list,
        estimator=estimator,
        samples=int(run_block.get("samples", 1_000_000)),
        seed=int(run_block["seed"]),
        paths=int(run_block.get("paths", 3)),
        grid=grid,
        out_dir=str(out_block.get("directory", "out")),
        formats=formats,
        raw=raw,
    )


def load_config(path: str) -> RunConfig:
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    with fh:
        try:
            raw = tomli.load(fh)
        except tomli.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return from_dict(raw)


# -- presets ----------------------------------------------------------------
#
# The four studied configurations.  1 and 3 share the Brownian-bridge psi on
# [0, 6] at (x, t) = (5, 0.2); 2 and 4 share the log-damped heavy-tailed psi
# on [-8, 2 pi + 1] at (x, t) = (1, 0.1).  1/2 have deterministic boundary
# values, 3/4 random ones.

def _preset_raw(name: str) -> Dict[str, Any]:
    bridge = {"eigenvalues": "brownian_bridge", "xi": "normal"}
    damped = {"eigenvalues": "log_damped", "xi": "quartic"}
    if name == "example1":
        return {
            "problem": {
                "L1": 0.0, "L2": 6.0,
                "alpha2": {"family": "uniform", "a": 1.0, "b": 2.0},
                "bc_A": {"kind": "deterministic", "value": -3.0},
                "bc_B": {"kind": "deterministic", "value": 3.0},
                "psi": dict(bridge),
            },
            "run": {"x": 5.0, "t": 0.2, "N": [1, 2, 3, 4], "seed": 20260822},
            "output": {"directory": "out"},
        }
    if name == "example2":
        return {
            "problem": {
                "L1": -8.0, "L2": 2.0 * math.pi + 1.0,
                "alpha2": {"family": "uniform", "a": 1.0, "b": 2.0},
                "bc_A": {"kind": "deterministic", "value": -1.0},
                "bc_B": {"kind": "deterministic", "value": 2.0},
                "psi": dict(damped),
            },
            "run": {"x": 1.0, "t": 0.1, "N": [1, 2, 3, 4], "seed": 20260822},
            "output": {"directory": "out"},
        }
    if name == "example3":
        return {
            "problem": {
                "L1": 0.0, "L2": 6.0,
                "alpha2": {"family": "uniform", "a": 1.0, "b": 2.0},
                "bc_A": {"kind": "random", "family": "triangular",
                         "lo": -5.0, "mode": -3.0, "hi": -2.0},
                "bc_B": {"kind": "random", "family": "truncated_exponential",
                         "rate": 0.5, "lo": 3.0, "hi": 5.0},
                "psi": dict(bridge),
            },
            "run": {"x": 5.0, "t": 0.2, "N": [1, 2, 3, 4], "seed": 20260822},
            "output": {"directory": "out"},
        }
    if name == "example4":
        return {
            "problem": {
                "L1": -8.0, "L2": 2.0 * math.pi + 1.0,
                "alpha2": {"family": "uniform", "a": 1.0, "b": 2.0},
                "bc_A": {"kind": "random", "family": "uniform",
                         "a": -1.5, "b": -0.5},
                "bc_B": {"kind": "random", "family": "normal",
                         "mu": 2.0, "sigma2": 1.0},
                "psi": dict(damped),
            },
            "run": {"x": 1.0, "t": 0.1, "N": [1, 2, 3, 4], "seed": 20260822},
            "output": {"directory": "out"},
        }
    raise ConfigError(f"unknown preset {name!r}; choose example1..example4")


PRESET_NAMES = ("example1", "example2", "example3", "example4")


def preset(name: str) -> RunConfig:
    return from_dict(_preset_raw(name))
