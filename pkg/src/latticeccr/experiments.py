"""Named experiments, JSON configs, and deterministic CSV/JSON datasets.

Each experiment resolves its defaults into an explicit config (echoed in the
run manifest), produces one dataset with a fixed column schema, and writes it
with fixed float formatting so identical configs give byte-identical files.
"""

from __future__ import annotations

import json
import os
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import __version__
from .errors import ConfigError
from .ccr import ccr_defect
from .dynamics import GaussianPacket, make_gaussian, run_timeseries
from .lattice import Hopping, LatticeSpec, Potential, build_hamiltonian
from .spectral import (
    diagnose_states,
    eigensolve,
    harmonic_sweep,
    threshold_estimate,
    wannier_stark_analysis,
)

EXPERIMENTS = (
    "spectrum",
    "sweep",
    "dynamics",
    "ccr-check",
    "fig1",
    "fig2",
    "fig3",
    "fig4",
    "fig5",
)


# ---------------------------------------------------------------------------
# config validation

def _type_check(kind):
    def check(value, key):
        if kind is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"config key {key!r} must be a number, got {value!r}")
            return float(value)
        if kind is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"config key {key!r} must be an integer, got {value!r}")
            return value
        if kind is str:
            if not isinstance(value, str):
                raise ConfigError(f"config key {key!r} must be a string, got {value!r}")
            return value
        raise AssertionError(kind)

    return check


def _positive(kind):
    base = _type_check(kind)

    def check(value, key):
        value = base(value, key)
        if not value > 0:
            raise ConfigError(f"config key {key!r} must be positive, got {value!r}")
        return value

    return check


def _number_list(value, key):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"config key {key!r} must be a non-empty list of numbers")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"config key {key!r} must contain numbers, got {v!r}")
        out.append(float(v))
    return out


def _int_list(value, key):
    if not isinstance(value, list) or not value:
        raise ConfigError(f"config key {key!r} must be a non-empty list of integers")
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"config key {key!r} must contain integers, got {v!r}")
    return list(value)


def _choice(options):
    def check(value, key):
        if value not in options:
            raise ConfigError(f"config key {key!r} must be one of {options}, got {value!r}")
        return value

    return check


def _optional(inner):
    def check(value, key):
        return None if value is None else inner(value, key)

    return check


_LATTICE = {"M": (None, _positive(int)), "a": (1.0, _positive(float))}
_OUTPUT = {"path": (None, _optional(_type_check(str))), "format": ("csv", _choice(("csv", "json")))}
_TOL = {
    "eigensolve": (1e-10, _positive(float)),
    "leak_warn": (1e-10, _positive(float)),
    "leak_fail": (1e-6, _positive(float)),
}
_HOPPING = {
    "kind": ("quadratic", _choice(("quadratic", "cosine", "custom"))),
    "t0": (0.0, _type_check(float)),
    "t_n": ([], lambda v, k: _number_list(v, k) if v else []),
}
_POTENTIAL = {
    "kind": ("harmonic", _choice(("constant", "linear", "harmonic", "custom"))),
    "V0": (0.0, _type_check(float)),
    "F": (0.4, _type_check(float)),
    "c": (0.01, _type_check(float)),
    "values": ([], lambda v, k: _number_list(v, k) if v else []),
}
_PACKET = {
    "n0": (0, _type_check(int)),
    "b": (0.2, _positive(float)),
    "k0": (0.0, _type_check(float)),
}
_TIME = {"t_max": (None, _optional(_positive(float))), "dt": (None, _optional(_positive(float)))}

_SCHEMAS = {
    "spectrum": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "hopping": _HOPPING,
        "potential": _POTENTIAL,
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "sweep": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "c": (0.01, _positive(float)),
        "grid": {
            "x_min": (0.1, _positive(float)),
            "x_max": (3.0, _positive(float)),
            "points": (25, _positive(int)),
        },
        "states_per_point": (20, _positive(int)),
        "hopping": _HOPPING,
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "dynamics": {
        "lattice": {**_LATTICE, "M": (128, _positive(int))},
        "hopping": _HOPPING,
        "potential": _POTENTIAL,
        "packet": {**_PACKET, "n0": (20, _type_check(int))},
        "time": _TIME,
        "model": ("auto", _choice(("auto", "linear", "harmonic", "periodic_kinetic", "none"))),
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "ccr-check": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "packet": {**_PACKET, "b": (50.0, _positive(float))},
        "margin": (None, _optional(_positive(int))),
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "fig1": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "c": (0.01, _positive(float)),
        "grid": {
            "x_min": (0.1, _positive(float)),
            "x_max": (3.0, _positive(float)),
            "points": (25, _positive(int)),
        },
        "states_per_point": (20, _positive(int)),
        "nn_pair": ([1, 2], _int_list),
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "fig2": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "c_values": ([1.0, 0.1, 0.01], _number_list),
        "n_cut": (80, _positive(int)),
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "fig3": {
        "lattice": {**_LATTICE, "M": (100, _positive(int))},
        "F": (0.4, _positive(float)),
        "c": (0.01, _positive(float)),
        "target_site": (-41, _type_check(int)),
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "fig4": {
        "lattice": {**_LATTICE, "M": (288, _positive(int))},
        "F": (0.4, _positive(float)),
        "b": ([0.2, 0.02], _number_list),
        "n0": (0, _type_check(int)),
        "oracle_b": (0.02, _positive(float)),
        "time": _TIME,
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
    "fig5": {
        "lattice": {**_LATTICE, "M": (192, _positive(int))},
        "c": (0.01, _positive(float)),
        "b": (0.2, _positive(float)),
        "n0": ([20, 30, 40], _int_list),
        "nn_n0": (20, _type_check(int)),
        "time": _TIME,
        "output": _OUTPUT,
        "tolerances": _TOL,
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment name plus its fully resolved parameter tree."""

    experiment: str
    params: dict

    def __getitem__(self, key):
        return self.params[key]


@dataclass
class RunManifest:
    """Provenance sidecar accompanying every emitted dataset."""

    experiment: str
    config: dict
    version: str
    timestamp: dict
    warnings: list
    derived: dict
    dataset: str | None = None
    error: dict | None = None

    def to_json(self) -> str:
        payload = {
            "experiment": self.experiment,
            "config": self.config,
            "version": self.version,
            "timestamp": self.timestamp,
            "warnings": self.warnings,
            "derived": self.derived,
            "dataset": self.dataset,
            "error": self.error,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _validate_tree(raw: dict, schema: dict, prefix: str = "") -> dict:
    for key in raw:
        if key not in schema:
            raise ConfigError(f"unknown config key {prefix + key!r}")
    out = {}
    for key, entry in schema.items():
        if isinstance(entry, dict):
            sub = raw.get(key, {})
            if not isinstance(sub, dict):
                raise ConfigError(f"config key {prefix + key!r} must be an object")
            out[key] = _validate_tree(sub, entry, prefix=f"{prefix}{key}.")
        else:
            default, check = entry
            if key in raw:
                out[key] = check(raw[key], prefix + key) if check else raw[key]
            else:
                out[key] = default
    return out


def _resolve_derived_defaults(experiment: str, params: dict) -> None:
    a = params["lattice"]["a"]
    if experiment == "fig4":
        force = params["F"]
        params["time"]["dt"] = params["time"]["dt"] or 0.05 / (a * force)
        params["time"]["t_max"] = params["time"]["t_max"] or 2 * (2 * np.pi / (a * force))
    elif experiment == "fig5":
        root = np.sqrt(params["c"])
        params["time"]["dt"] = params["time"]["dt"] or 0.1 / root
        params["time"]["t_max"] = params["time"]["t_max"] or 25.0 / root
    elif experiment == "dynamics":
        pot = params["potential"]
        if pot["kind"] == "linear" and pot["F"] != 0:
            params["time"]["dt"] = params["time"]["dt"] or 0.05 / (a * abs(pot["F"]))
            params["time"]["t_max"] = params["time"]["t_max"] or 2 * (2 * np.pi / (a * abs(pot["F"])))
        elif pot["kind"] == "harmonic" and pot["c"] > 0:
            root = np.sqrt(pot["c"])
            params["time"]["dt"] = params["time"]["dt"] or 0.1 / root
            params["time"]["t_max"] = params["time"]["t_max"] or 2 * (2 * np.pi / root)
        else:
            params["time"]["dt"] = params["time"]["dt"] or 0.1
            params["time"]["t_max"] = params["time"]["t_max"] or 10.0
    if params["output"]["path"] is None:
        params["output"]["path"] = f"{experiment}.csv"


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a JSON experiment config, applying defaults.

    Unknown keys are rejected with the offending key name; syntax errors
    report the position. The returned config has every default resolved to
    its numeric value so the manifest echo is self-contained.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"config syntax error at line {err.lineno}, column {err.colno}: {err.msg}") from err
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    if "experiment" not in raw:
        raise ConfigError("config is missing the 'experiment' key")
    experiment = raw["experiment"]
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"unknown experiment {experiment!r}; expected one of {EXPERIMENTS}")
    body = {k: v for k, v in raw.items() if k != "experiment"}
    params = _validate_tree(body, _SCHEMAS[experiment])
    _resolve_derived_defaults(experiment, params)
    _validate_semantics(experiment, params)
    return ExperimentConfig(experiment=experiment, params=params)


def _validate_semantics(experiment: str, params: dict) -> None:
    if experiment == "fig3" and params["F"] == 0:
        raise ConfigError("config key 'F' must be nonzero for fig3")
    if experiment == "fig4" and params["F"] == 0:
        raise ConfigError("config key 'F' must be nonzero for fig4")
    if experiment in ("spectrum", "dynamics"):
        pot = params["potential"]
        if pot["kind"] == "harmonic" and not pot["c"] > 0:
            raise ConfigError("config key 'potential.c' must be positive")
    grid = params.get("grid")
    if grid and grid["x_max"] <= grid["x_min"]:
        raise ConfigError("config key 'grid.x_max' must exceed 'grid.x_min'")


def serialize_config(cfg: ExperimentConfig) -> str:
    return json.dumps({"experiment": cfg.experiment, **cfg.params}, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# dataset emission

def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if np.isnan(v):
        return "nan"
    if v == 0.0:
        v = 0.0  # normalize negative zero
    return f"{v:.11e}"  # 12 significant digits


def emit_dataset(rows, columns, path: str, fmt: str = "csv") -> str:
    """Write rows under a fixed column schema; byte-deterministic output.

    Floats are rendered with 12 significant digits, lines end with newline,
    and the file is written atomically (temp file + rename). Returns path.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown dataset format {fmt!r}")
    ncol = len(columns)
    for row in rows:
        if len(row) != ncol:
            raise ValueError(f"row with {len(row)} cells does not fit {ncol} columns")
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
        payload = "\n".join(lines) + "\n"
    else:
        def as_json_value(v):
            if isinstance(v, str):
                return v
            if isinstance(v, (bool, np.bool_)):
                return bool(v)
            if isinstance(v, (int, np.integer)):
                return int(v)
            return float(f"{float(v):.11e}")  # same 12-digit rounding as csv

        body = {"columns": list(columns), "rows": [[as_json_value(v) for v in row] for row in rows]}
        payload = json.dumps(body, indent=2, sort_keys=True) + "\n"
    payload = payload.encode("ascii")
    tmp = path + ".tmp"
    try:
        with open(tmp, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except OSError as err:
        raise OSError(f"failed writing dataset to {path}: {err}") from err
    return path


# ---------------------------------------------------------------------------
# experiment bodies

def _hopping_from(params: dict) -> Hopping:
    cfg = params["hopping"]
    if cfg["kind"] == "custom":
        return Hopping.custom(cfg["t0"], cfg["t_n"])
    return Hopping(cfg["kind"])


def _potential_from(params: dict) -> Potential:
    cfg = params["potential"]
    if cfg["kind"] == "constant":
        return Potential.constant(cfg["V0"])
    if cfg["kind"] == "linear":
        return Potential.linear(cfg["F"])
    if cfg["kind"] == "harmonic":
        return Potential.harmonic(cfg["c"])
    return Potential.custom(cfg["values"])


def _run_spectrum(params):
    spec = LatticeSpec(params["lattice"]["M"], params["lattice"]["a"])
    ham = build_hamiltonian(spec, _hopping_from(params), _potential_from(params))
    sr = eigensolve(ham, tol=params["tolerances"]["eigensolve"])
    diags = diagnose_states(sr, spec)
    columns = ["n", "energy", "parity", "s_n", "center"]
    rows = [[d.index, sr.eigenvalues[d.index], d.parity, d.overlap, d.center] for d in diags]
    return columns, rows, {"residual_norm": sr.residual_norm}


def _sweep_rows(params, hopping, states):
    c = params["c"]
    grid = params["grid"]
    xs = np.linspace(grid["x_min"], grid["x_max"], grid["points"])
    a_values = xs / c**0.25
    sweep = harmonic_sweep(c, a_values, states, params["lattice"]["M"], hopping)
    return sweep


def _run_sweep(params):
    sweep = _sweep_rows(params, _hopping_from(params), params["states_per_point"])
    columns = ["ac_quarter", "n", "e_over_sqrtc", "dashed_ref"]
    rows = [
        [sweep.ac_quarter[i], int(sweep.index[i]), sweep.e_over_sqrt_c[i], sweep.reference[i]]
        for i in range(len(sweep.index))
    ]
    return columns, rows, {"c": params["c"], "a_values": list(np.asarray(sweep.ac_quarter[:: params["states_per_point"]]) / params["c"] ** 0.25)}


def _run_fig1(params):
    quad = _sweep_rows(params, Hopping.quadratic(), params["states_per_point"])
    pair = sorted(params["nn_pair"])
    cos = _sweep_rows(params, Hopping.cosine(), max(pair) + 1)
    columns = ["kinetic", "ac_quarter", "n", "e_over_sqrtc", "dashed_ref"]
    rows = [
        ["quadratic", quad.ac_quarter[i], int(quad.index[i]), quad.e_over_sqrt_c[i], quad.reference[i]]
        for i in range(len(quad.index))
    ]
    rows.extend(
        ["cosine", cos.ac_quarter[i], int(cos.index[i]), cos.e_over_sqrt_c[i], cos.reference[i]]
        for i in range(len(cos.index))
        if int(cos.index[i]) in pair
    )
    return columns, rows, {"states_per_point": params["states_per_point"], "nn_pair": pair}


def _run_fig2(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    hop = Hopping.quadratic()
    columns = ["c", "n", "s_n"]
    rows = []
    for c in params["c_values"]:
        ham = build_hamiltonian(spec, hop, Potential.harmonic(c))
        sr = eigensolve(ham, tol=params["tolerances"]["eigensolve"])
        for d in diagnose_states(sr, spec):
            if d.parity == "even" and d.index <= params["n_cut"]:
                rows.append([c, d.index, d.overlap])
    return columns, rows, {"c_values": params["c_values"], "n_cut": params["n_cut"]}


def _run_fig3(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    force, curv, target = params["F"], params["c"], params["target_site"]
    hop = Hopping.quadratic()
    tol = params["tolerances"]["eigensolve"]

    ws = eigensolve(build_hamiltonian(spec, hop, Potential.linear(force)), tol=tol)
    centers = np.sum(spec.sites[:, None] * np.abs(ws.eigenvectors) ** 2, axis=0)
    ws_idx = int(np.argmin(np.abs(centers - target)))
    ladder = wannier_stark_analysis(ws, spec, force)

    harm = eigensolve(build_hamiltonian(spec, hop, Potential.harmonic(curv)), tol=tol)
    best, best_dist = None, np.inf
    for d in diagnose_states(harm, spec):
        if d.parity != "even":
            continue
        peak = spec.sites[int(np.argmax(np.abs(harm.eigenvectors[:, d.index])))]
        dist = abs(peak - target)
        if dist < best_dist:
            best, best_dist = d.index, dist
    columns = ["m", "ws_amp_sqrt2", "harmonic_amp"]
    rows = [
        [int(m), np.sqrt(2.0) * ws.eigenvectors[i, ws_idx].real, harm.eigenvectors[i, best].real]
        for i, m in enumerate(spec.sites)
    ]
    derived = {
        "ws_state_index": ws_idx,
        "ws_center": float(centers[ws_idx]),
        "ws_energy": float(ws.eigenvalues[ws_idx]),
        "harmonic_state_index": int(best),
        "ladder_mean_spacing": ladder.mean_spacing,
        "ladder_max_spacing_deviation": ladder.max_spacing_deviation,
        "expected_spacing": spec.spacing * force,
    }
    return columns, rows, derived


def _run_fig4(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    force = params["F"]
    hop = Hopping.quadratic()
    pot = Potential.linear(force)
    tgrid = np.arange(0.0, params["time"]["t_max"] + 1e-12, params["time"]["dt"])
    tol = params["tolerances"]
    sr = eigensolve(build_hamiltonian(spec, hop, pot), tol=tol["eigensolve"])
    runs = {}
    for b in params["b"]:
        packet = GaussianPacket(params["n0"], b)
        runs[b] = run_timeseries(
            spec, hop, pot, packet, tgrid, model="linear", sr=sr,
            leak_warn=tol["leak_warn"], leak_fail=tol["leak_fail"],
        )
    oracle = runs.get(params["oracle_b"]) or next(iter(runs.values()))
    b_cols = [f"b{b:g}" for b in params["b"]]
    columns = (
        ["t"]
        + [f"x_mean_{bc}" for bc in b_cols]
        + ["x_ccr", "x_exact"]
        + [f"s_abs_{bc}" for bc in b_cols]
    )
    rows = []
    for i, t in enumerate(tgrid):
        row = [t]
        row.extend(runs[b].x_mean[i] for b in params["b"])
        row.append(oracle.x_ccr[i])
        row.append(oracle.x_exact_oracle[i])
        row.extend(runs[b].s_abs[i] for b in params["b"])
        rows.append(row)
    derived = {
        "bloch_period": 2 * np.pi / (spec.spacing * force),
        "oracle_b": params["oracle_b"],
        "boundary_max": max(r.boundary_max for r in runs.values()),
    }
    return columns, rows, derived


def _run_fig5(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    curv, b = params["c"], params["b"]
    pot = Potential.harmonic(curv)
    tgrid = np.arange(0.0, params["time"]["t_max"] + 1e-12, params["time"]["dt"])
    tol = params["tolerances"]
    sr_quad = eigensolve(build_hamiltonian(spec, Hopping.quadratic(), pot), tol=tol["eigensolve"])
    runs = {}
    for n0 in params["n0"]:
        packet = GaussianPacket(-n0, b)
        runs[n0] = run_timeseries(
            spec, Hopping.quadratic(), pot, packet, tgrid, model="harmonic", sr=sr_quad,
            leak_warn=tol["leak_warn"], leak_fail=tol["leak_fail"],
        )
    nn = run_timeseries(
        spec, Hopping.cosine(), pot, GaussianPacket(-params["nn_n0"], b), tgrid,
        model="harmonic", leak_warn=tol["leak_warn"], leak_fail=tol["leak_fail"],
    )
    first = params["n0"][0]
    columns = (
        ["t", "sqrt_c_t"]
        + [f"x_mean_n{n0}" for n0 in params["n0"]]
        + [f"x_ccr_n{first}", f"x_mean_nn{params['nn_n0']}"]
    )
    root = np.sqrt(curv)
    rows = []
    for i, t in enumerate(tgrid):
        row = [t, root * t]
        row.extend(runs[n0].x_mean[i] for n0 in params["n0"])
        row.append(runs[first].x_ccr[i])
        row.append(nn.x_mean[i])
        rows.append(row)
    derived = {
        "threshold_estimate": threshold_estimate(spec.spacing, curv),
        "period": 2 * np.pi / root,
        "boundary_max": max(r.boundary_max for r in list(runs.values()) + [nn]),
    }
    return columns, rows, derived


def _run_dynamics(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    hop = _hopping_from(params)
    pot = _potential_from(params)
    pk = params["packet"]
    packet = GaussianPacket(pk["n0"], pk["b"], pk["k0"])
    tgrid = np.arange(0.0, params["time"]["t_max"] + 1e-12, params["time"]["dt"])
    tol = params["tolerances"]
    ts = run_timeseries(
        spec, hop, pot, packet, tgrid, model=params["model"],
        leak_warn=tol["leak_warn"], leak_fail=tol["leak_fail"],
    )
    columns = ["t", "x_mean", "k_mean", "s_abs", "norm", "x_ccr", "x_exact"]
    nan = float("nan")
    rows = []
    for i, t in enumerate(tgrid):
        rows.append(
            [
                t,
                ts.x_mean[i],
                ts.k_mean[i],
                ts.s_abs[i],
                ts.norm[i],
                ts.x_ccr[i] if ts.x_ccr is not None else nan,
                ts.x_exact_oracle[i] if ts.x_exact_oracle is not None else nan,
            ]
        )
    derived = {"boundary_max": ts.boundary_max, "model": params["model"]}
    if pot.kind == "linear" and pot.force != 0:
        derived["bloch_period"] = 2 * np.pi / (spec.spacing * abs(pot.force))
    if pot.kind == "harmonic":
        derived["threshold_estimate"] = threshold_estimate(spec.spacing, pot.curvature)
    return columns, rows, derived


def _run_ccr_check(params):
    lat = params["lattice"]
    spec = LatticeSpec(lat["M"], lat["a"])
    pk = params["packet"]
    psi = make_gaussian(spec, GaussianPacket(pk["n0"], pk["b"], pk["k0"]))
    result = ccr_defect(psi, spec, params["margin"])
    columns = ["m", "defect_re", "defect_im", "ratio_re", "ratio_im"]
    rows = []
    for i, m in enumerate(result.sites):
        ratio = result.profile[i] / (-1j * (-1.0) ** abs(int(m)))
        rows.append([int(m), result.profile[i].real, result.profile[i].imag, ratio.real, ratio.imag])
    derived = {
        "s_abs": abs(result.overlap),
        "max_defect": result.max_defect,
        "truncation_tail": result.tail,
    }
    return columns, rows, derived


_RUNNERS = {
    "spectrum": _run_spectrum,
    "sweep": _run_sweep,
    "dynamics": _run_dynamics,
    "ccr-check": _run_ccr_check,
    "fig1": _run_fig1,
    "fig2": _run_fig2,
    "fig3": _run_fig3,
    "fig4": _run_fig4,
    "fig5": _run_fig5,
}


def run_experiment(cfg: ExperimentConfig, out_dir: str = "."):
    """Execute the configured experiment and write dataset plus manifest.

    Returns (columns, rows, manifest). The manifest always accompanies the
    dataset; on failure the caller is expected to write an error manifest
    (the CLI does this and maps exceptions to exit codes).
    """
    started = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    clock = time.perf_counter()
    caught: list[str] = []
    with warnings.catch_warnings(record=True) as wrec:
        warnings.simplefilter("always")
        columns, rows, derived = _RUNNERS[cfg.experiment](cfg.params)
        caught = [str(w.message) for w in wrec]
    out = cfg.params["output"]
    path = os.path.join(out_dir, out["path"])
    emit_dataset(rows, columns, path, out["format"])
    manifest = RunManifest(
        experiment=cfg.experiment,
        config={"experiment": cfg.experiment, **cfg.params},
        version=__version__,
        timestamp={"started_utc": started, "wall_time_s": round(time.perf_counter() - clock, 3)},
        warnings=caught,
        derived=derived,
        dataset=out["path"],
    )
    manifest_path = os.path.splitext(path)[0] + "_manifest.json"
    tmp = manifest_path + ".tmp"
    with open(tmp, "w", encoding="ascii") as handle:
        handle.write(manifest.to_json())
    os.replace(tmp, manifest_path)
    return columns, rows, manifest
