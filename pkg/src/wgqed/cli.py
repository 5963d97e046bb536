"""Batch scenario runner: config file and/or flags in, CSV/JSON curves out.

    wgqed compare --kind chiral --n 2
    wgqed montecarlo --kind bidirectional --n 100 --ksigma 1000 --m 100 --seed 7
    wgqed run --config configs/two_atom_chiral.yaml
    wgqed run --config out.csv.meta.json      # re-run a previous result

Exit codes: 0 success, 1 invalid config, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .analytic import (
    pw_chiral_asymptotic,
    pw_chiral_exact,
    pw_longtime,
    pw_superradiant,
)
from .continuum import (
    GaussianProfile,
    UniformInterval,
    default_x_grid,
    pw_from_field,
    solve_continuum,
)
from .dynamics import (
    default_time_grid,
    simulate_decay,
    two_atom_bidirectional_analytic,
    two_atom_chiral_analytic,
)
from .kernels import AtomEnsemble, WaveguideKind
from .montecarlo import Fixed, Gaussian, Uniform, average_decay, realization_rng, sample_positions

log = logging.getLogger("wgqed")

MODES = ("simulate", "analytic", "montecarlo", "continuum", "compare")
FORMULAS = ("laguerre", "bessel", "longtime", "superradiant",
            "two_atom_chiral", "two_atom_bidirectional")

DEFAULTS = {
    "mode": "simulate",
    "kind": "chiral",
    "n_atoms": 2,
    "gamma": 1.0,
    "distribution": "gaussian",
    "ksigma": 1000.0,
    "mean": 0.0,
    "phases": None,
    "m_realizations": None,
    "seed": 0,
    "t_max": 10.0,
    "n_points": 300,
    "time_scale": "linear",
    "t_min": None,
    "formula": "laguerre",
    "separation": None,
    "profile": "uniform",
    "x_spacing": 0.1,
    "output": None,
    "format": "csv",
    "keep_realizations": False,
    "workers": None,
}


class ConfigError(ValueError):
    pass


def load_config_file(path) -> dict:
    """Read a YAML/JSON scenario; metadata sidecars are unwrapped to their config."""
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping")
    if "config" in data and "artifact_version" in data:
        data = data["config"]
    return dict(data)


def resolve_config(file_values: dict, overrides: dict) -> dict:
    unknown = sorted(set(file_values) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    cfg = dict(DEFAULTS)
    cfg.update(file_values)
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    if cfg["m_realizations"] is None:
        cfg["m_realizations"] = 1000 if cfg["n_atoms"] == 2 else 100
    if cfg["output"] is None:
        cfg["output"] = f"wgqed_{cfg['mode']}.csv"
    return cfg


def _distribution(cfg):
    name = cfg["distribution"]
    if name == "gaussian":
        return Gaussian(float(cfg["mean"]), float(cfg["ksigma"]))
    if name == "uniform":
        lo = float(cfg["mean"])
        return Uniform(lo, lo + float(cfg["ksigma"]))
    if name == "fixed":
        if cfg["phases"] is None:
            raise ConfigError("distribution 'fixed' needs 'phases'")
        return Fixed(tuple(cfg["phases"]))
    raise ConfigError(f"unknown distribution {name!r}")


def validate(cfg: dict) -> dict:
    """Check every precondition up front and build the objects the run needs."""
    try:
        if cfg["mode"] not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        kind = WaveguideKind.parse(cfg["kind"])
        n = int(cfg["n_atoms"])
        gamma = float(cfg["gamma"])
        if n < 1:
            raise ConfigError("n_atoms must be >= 1")
        if not gamma > 0:
            raise ConfigError("gamma must be positive")
        times = default_time_grid(float(cfg["t_max"]), int(cfg["n_points"]),
                                  cfg["time_scale"], cfg["t_min"])
        if cfg["format"] not in ("csv", "json", "both"):
            raise ConfigError("format must be csv, json or both")
        if int(cfg["m_realizations"]) < 1:
            raise ConfigError("m_realizations must be >= 1")
        dist = _distribution(cfg)
        if isinstance(dist, Fixed) and len(dist.phases) != n:
            raise ConfigError(f"{len(dist.phases)} fixed phases given for n_atoms={n}")
        mode = cfg["mode"]
        if mode == "analytic":
            formula = cfg["formula"]
            if formula not in FORMULAS:
                raise ConfigError(f"formula must be one of {FORMULAS}")
            if formula == "longtime" and n * gamma * times[0] < 1:
                raise ConfigError("longtime formula needs kappa*t >= 1 on the whole grid")
            if formula.startswith("two_atom") and n != 2:
                raise ConfigError(f"{formula} needs n_atoms = 2")
            if formula == "two_atom_bidirectional" and cfg["separation"] is None:
                raise ConfigError("two_atom_bidirectional needs 'separation'")
        if mode == "compare" and kind is WaveguideKind.BIDIRECTIONAL and n != 2:
            raise ConfigError("bidirectional comparison has an analytic reference only for n_atoms = 2")
        profile = None
        if mode == "continuum":
            cls = {"uniform": UniformInterval, "gaussian": GaussianProfile}.get(cfg["profile"])
            if cls is None:
                raise ConfigError("profile must be uniform or gaussian")
            profile = cls(float(cfg["ksigma"]), float(n))
            if not 0 < float(cfg["x_spacing"]) <= 0.5:
                raise ConfigError("x_spacing must be in (0, 0.5]")
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return {"kind": kind, "n": n, "gamma": gamma, "times": times,
            "dist": dist, "profile": profile}


def _ensemble(cfg, ctx):
    phases = sample_positions(ctx["dist"], ctx["n"], realization_rng(cfg["seed"], 0))
    return AtomEnsemble(phases, ctx["gamma"], ctx["kind"])


def compute(cfg: dict, ctx: dict) -> tuple[dict, dict | None]:
    """Run the scenario; returns ordered columns and optional per-realization columns."""
    mode = cfg["mode"]
    n, gamma, t = ctx["n"], ctx["gamma"], ctx["times"]
    cols = {"gamma_t": gamma * t, "kappa_t": n * gamma * t}
    extra = None

    if mode == "simulate":
        curve = simulate_decay(_ensemble(cfg, ctx), t)
        cols["p_w"] = curve.p_w
        if curve.p_d is not None:
            cols["p_d"] = curve.p_d
        cols["p_exc"] = curve.p_exc
    elif mode == "montecarlo":
        res = average_decay(ctx["kind"], ctx["dist"], n, int(cfg["m_realizations"]), t,
                            seed=int(cfg["seed"]), gamma=gamma, workers=cfg["workers"],
                            keep_realizations=bool(cfg["keep_realizations"]))
        if res.per_realization is not None:
            extra = {"gamma_t": cols["gamma_t"], "kappa_t": cols["kappa_t"]}
            for i, curve in enumerate(res.per_realization):
                extra[f"p_w_{i}"] = curve.p_w
        cols["p_w"] = res.mean_curve.p_w
        cols["p_w_stderr"] = res.stderr_p_w
        if res.mean_curve.p_d is not None:
            cols["p_d"] = res.mean_curve.p_d
        cols["p_exc"] = res.mean_curve.p_exc
    elif mode == "analytic":
        formula = cfg["formula"]
        kappa = n * gamma
        if formula == "laguerre":
            cols["p_w"] = pw_chiral_exact(n, gamma, t)
        elif formula == "bessel":
            cols["p_w"] = pw_chiral_asymptotic(kappa, t)
        elif formula == "longtime":
            cols["p_w"] = pw_longtime(kappa, t)
        elif formula == "superradiant":
            cols["p_w"] = pw_superradiant(kappa, t)
        elif formula == "two_atom_chiral":
            cols["p_w"], cols["p_d"] = two_atom_chiral_analytic(gamma, t)
        else:
            cols["p_w"], cols["p_d"] = two_atom_bidirectional_analytic(
                abs(float(cfg["separation"])), gamma, t)
    elif mode == "continuum":
        profile = ctx["profile"]
        x = default_x_grid(profile, float(cfg["x_spacing"]))
        field = solve_continuum(profile, gamma, x, t, ctx["kind"])
        curve = pw_from_field(field, profile)
        cols["p_w"] = curve.p_w
        cols["p_exc"] = curve.p_exc
    elif mode == "compare":
        ens = _ensemble(cfg, ctx)
        numeric = simulate_decay(ens, t).p_w
        if ctx["kind"] is WaveguideKind.CHIRAL:
            reference = pw_chiral_exact(n, gamma, t)
        else:
            d = abs(ens.phases[0] - ens.phases[1])
            reference = two_atom_bidirectional_analytic(d, gamma, t)[0]
        cols["p_w_numeric"] = numeric
        cols["p_w_analytic"] = reference
        cols["abs_err"] = np.abs(numeric - reference)
    return cols, extra


def _fmt(v) -> str:
    return repr(float(v))


def write_outputs(cfg: dict, cols: dict, out=None) -> list[Path]:
    out = Path(cfg["output"] if out is None else out)
    out.parent.mkdir(parents=True, exist_ok=True)
    names = list(cols)
    written = []
    if cfg["format"] in ("csv", "both"):
        lines = [
            f"# wgqed {__version__} mode={cfg['mode']}",
            "# columns: " + ", ".join(names),
            "# units: gamma_t = gamma*t, kappa_t = N*gamma*t; populations are probabilities",
            "# config: " + json.dumps(cfg, sort_keys=True),
            ",".join(names),
        ]
        rows = np.column_stack([cols[k] for k in names])
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(out)
    if cfg["format"] in ("json", "both"):
        jpath = out.with_suffix(".json") if cfg["format"] == "both" else out
        payload = {"columns": names,
                   "data": {k: [float(v) for v in cols[k]] for k in names},
                   "mode": cfg["mode"], "version": __version__}
        jpath.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        written.append(jpath)
    return written


def write_metadata(cfg: dict, data_files: list[Path], wall_time: float) -> Path:
    meta = Path(str(data_files[0]) + ".meta.json")
    record = {
        "artifact_version": __version__,
        "config": cfg,
        "seed": cfg["seed"],
        "data_files": [str(p) for p in data_files],
        "wall_time_s": wall_time,
    }
    meta.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return meta


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wgqed", description=__doc__.split("\n")[0])
    p.add_argument("mode", choices=MODES + ("run",),
                   help="what to compute; 'run' takes the mode from --config")
    p.add_argument("--config", help="YAML/JSON scenario or a .meta.json record")
    p.add_argument("--kind", choices=[k.value for k in WaveguideKind])
    p.add_argument("--n", dest="n_atoms", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--distribution", choices=["gaussian", "uniform", "fixed"])
    p.add_argument("--ksigma", type=float, help="ensemble width k*sigma (phase units)")
    p.add_argument("--mean", type=float)
    p.add_argument("--phases", type=float, nargs="+")
    p.add_argument("--m", dest="m_realizations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--t-max", dest="t_max", type=float, help="in units of 1/gamma")
    p.add_argument("--n-points", dest="n_points", type=int)
    p.add_argument("--time-scale", dest="time_scale", choices=["linear", "log"])
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--formula", choices=FORMULAS)
    p.add_argument("--separation", type=float, help="|theta_1 - theta_2| for two_atom_bidirectional")
    p.add_argument("--profile", choices=["uniform", "gaussian"])
    p.add_argument("--x-spacing", dest="x_spacing", type=float)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=["csv", "json", "both"])
    p.add_argument("--keep-realizations", dest="keep_realizations",
                   action="store_true", default=None)
    p.add_argument("--workers", type=int)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = vars(build_parser().parse_args(argv))
    mode = args.pop("mode")
    config_path = args.pop("config")
    try:
        file_values = load_config_file(config_path) if config_path else {}
        if mode != "run":
            args["mode"] = mode
        elif "mode" not in file_values:
            raise ConfigError("'run' needs a config file that sets 'mode'")
        cfg = resolve_config(file_values, args)
        ctx = validate(cfg)
    except ConfigError as exc:
        log.error("invalid config: %s", exc)
        return 1

    start = time.perf_counter()
    try:
        cols, extra = compute(cfg, ctx)
    except (ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return 2
    wall = time.perf_counter() - start
    files = write_outputs(cfg, cols)
    if extra is not None:
        out = Path(cfg["output"])
        files += write_outputs(cfg, extra, out.with_name(out.stem + ".realizations" + out.suffix))
    meta = write_metadata(cfg, files, wall)
    if "abs_err" in cols:
        log.info("max abs_err = %.3e", float(np.max(cols["abs_err"])))
    log.info("wrote %s (+ %s) in %.2f s", ", ".join(map(str, files)), meta.name, wall)
    return 0


if __name__ == "__main__":
    sys.exit(main())
