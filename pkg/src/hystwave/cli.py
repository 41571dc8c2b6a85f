"""Command-line interface.

Subcommands write deterministic artifacts into an output directory:

* simulate: diagnostics.csv, optional snapshot_<idx>.csv, run.json
* wave:     profile.csv, wave.json
* spectrum: spectrum.json, chargrid.csv
* limit:    limit.csv, loop.json
* compare:  compare.csv, metrics.json
* sweep:    per-combination subdirectories plus sweep.json

Options may come from an INI config file ([model] plus one section per
subcommand); command-line flags override file values.  All floating
point output uses the %.12e format and JSON keys are sorted, so reruns
are byte-identical.  Exit codes: 0 success, 1 numerical failure,
2 configuration error (no files are written in that case).
"""

from __future__ import annotations

import argparse
import configparser
import itertools
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .errors import ConfigError, HystwaveError
from .model import ModelParams
from .drive import DrivePath, LinearDrive, PiecewiseLinearDrive, SinusoidalDrive
from .particle import (
    DIAG_COLUMNS,
    ExplicitInitial,
    RandomMonotone,
    Scenario,
    WellPrepared,
    midpoint_grid,
    run,
)
from .wave import build_wave, eval_profile, wave_drive, width_asymptotic
from .spectral import (
    SpectralClass,
    SpectralProblem,
    asymptotic_real_part,
    build_eigenfunction,
    char_minus,
    char_plus,
    default_window,
    ep_residual,
    find_spectrum,
    instability_verdict,
    s_zero_line,
    thm2_sign_resolution,
)
from .limit import LimitState, limit_run, loop_boundary
from .metrics import hausdorff, oscillation_metric

__all__ = ["main"]


def _fmt(x: float) -> str:
    return "%.12e" % float(x)


def _json_ser(obj, indent: int = 0) -> str:
    sp = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        import json as _json

        return _json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for k in sorted(obj, key=str):
            items.append(f'{sp}  "{k}": {_json_ser(obj[k], indent + 1)}')
        return "{\n" + ",\n".join(items) + "\n" + sp + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        items = [f"{sp}  {_json_ser(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + sp + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def write_json(path: str, obj) -> None:
    with open(path, "w") as fh:
        fh.write(_json_ser(obj) + "\n")


def write_csv(path: str, header_meta: Dict[str, str], columns: Tuple[str, ...], rows) -> None:
    with open(path, "w") as fh:
        for key in sorted(header_meta):
            fh.write(f"# {key}={header_meta[key]}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _meta(params: ModelParams, extra: Optional[Dict[str, str]] = None) -> Dict[str, str]:
    meta = {
        "version": __version__,
        "kappa": _fmt(params.kappa),
        "delta": _fmt(params.delta),
        "tau": _fmt(params.tau),
    }
    if extra:
        meta.update(extra)
    return meta


# option resolution: flag value if given, else config value, else default

def _kv_pairs(body: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for item in body.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"malformed key=value item {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def parse_drive(spec: str) -> DrivePath:
    kind, _, body = spec.partition(":")
    kind = kind.strip()
    try:
        kv = _kv_pairs(body)
        if kind == "linear":
            drv = LinearDrive(rate=float(kv.pop("rate", "1")), offset=float(kv.pop("offset", "0")))
        elif kind == "sin":
            drv = SinusoidalDrive(
                amplitude=float(kv.pop("amplitude", "1")),
                frequency=float(kv.pop("frequency", "1")),
                phase=float(kv.pop("phase", "0")),
            )
        elif kind == "pwl":
            knots_raw = kv.pop("knots", "")
            knots = []
            for pair in knots_raw.split(";"):
                pair = pair.strip()
                if not pair:
                    continue
                ts, ls = pair.split(":")
                knots.append((float(ts), float(ls)))
            drv = PiecewiseLinearDrive(knots=tuple(knots))
        else:
            raise ConfigError(f"unknown drive kind {kind!r} (expected linear, sin, or pwl)")
        if kv:
            raise ConfigError(f"unknown drive options {sorted(kv)} in {spec!r}")
        return drv
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad drive spec {spec!r}: {exc}") from exc


def parse_initial(spec: str, n: int):
    kind, _, body = spec.partition(":")
    kind = kind.strip()
    try:
        kv = _kv_pairs(body)
        if kind == "well-prepared":
            return WellPrepared(xi_ini=float(kv.get("xi", "0.5")))
        if kind == "random":
            return RandomMonotone(seed=int(kv.get("seed", "0")), spread=float(kv.get("spread", "1.5")))
        if kind == "sign":
            xi = float(kv.get("xi", "0.5"))
            p = midpoint_grid(n)
            return ExplicitInitial(x=np.where(p >= xi, 1.0, -1.0))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad initial spec {spec!r}: {exc}") from exc
    raise ConfigError(f"unknown initial kind {kind!r} (expected well-prepared, random, or sign)")


def _floats_csv(text: str) -> Tuple[float, ...]:
    items = [s for s in (p.strip() for p in text.split(",")) if s]
    return tuple(float(s) for s in items)


_SECTIONS = {
    "model": {"kappa": "0.5", "delta": "1.0", "tau": "0.1"},
    "simulate": {
        "drive": "linear:rate=1", "t_end": "1.0", "dt": "", "n": "2000",
        "method": "exponential", "stride": "1", "snapshots": "",
        "initial": "well-prepared:xi=0.5",
    },
    "wave": {"omega": "-1.0", "xi_center": "0.5", "n_profile": "2001", "t": "0.0"},
    "spectrum": {
        "omega": "-1.0", "window": "", "grid": "80,80", "free_width": "",
        "thm2_check": "true", "thm2_pairs": "5",
    },
    "limit": {
        "drive": "sin:amplitude=1,frequency=1", "t_end": "6.283185307179586",
        "xi0": "0.5", "sigma0": "", "max_row_spacing": "",
    },
    "compare": {
        "drive": "sin:amplitude=1,frequency=1", "t_end": "1.5707963267948966",
        "dt": "", "n": "2000", "method": "exponential", "xi0": "0.5",
        "initial": "sign:xi=0.5", "osc_window": "",
    },
}


def _load_config(path: Optional[str]) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path:
        if not os.path.exists(path):
            raise ConfigError(f"config file not found: {path}")
        try:
            cfg.read(path)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    return cfg


def _resolve(section: str, ns: argparse.Namespace, cfg: configparser.ConfigParser) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for key, default in _SECTIONS[section].items():
        flag = getattr(ns, key, None)
        if flag is not None:
            out[key] = str(flag)
        elif cfg.has_option(section, key):
            out[key] = cfg.get(section, key)
        else:
            out[key] = default
    return out


def _params_from(opts: Dict[str, str]) -> ModelParams:
    try:
        return ModelParams(kappa=float(opts["kappa"]), delta=float(opts["delta"]), tau=float(opts["tau"]))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad model parameters: {exc}") from exc


def _float_opt(opts: Dict[str, str], key: str) -> float:
    try:
        return float(opts[key])
    except ValueError as exc:
        raise ConfigError(f"option {key}={opts[key]!r} is not a number") from exc


def _int_opt(opts: Dict[str, str], key: str) -> int:
    try:
        return int(opts[key])
    except ValueError as exc:
        raise ConfigError(f"option {key}={opts[key]!r} is not an integer") from exc


def cmd_simulate(model_opts: Dict[str, str], opts: Dict[str, str], outdir: str) -> None:
    params = _params_from(model_opts)
    drive = parse_drive(opts["drive"])
    n = _int_opt(opts, "n")
    initial = parse_initial(opts["initial"], n)
    dt = _float_opt(opts, "dt") if opts["dt"] else params.tau / 50.0
    snapshots = _floats_csv(opts["snapshots"])
    try:
        scenario = Scenario(
            params=params, drive=drive, initial=initial,
            t_end=_float_opt(opts, "t_end"), dt=dt, n=n,
            method=opts["method"], stride=_int_opt(opts, "stride"),
            snapshot_times=snapshots,
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    result = run(scenario)

    os.makedirs(outdir, exist_ok=True)
    meta = _meta(params, {
        "drive": opts["drive"], "dt": _fmt(dt), "n": str(n),
        "method": scenario.method, "t_end": _fmt(scenario.t_end),
    })
    diag = result.diagnostics
    rows = (
        tuple(_fmt(diag[c][i]) for c in DIAG_COLUMNS)
        for i in range(len(diag["t"]))
    )
    write_csv(os.path.join(outdir, "diagnostics.csv"), meta, DIAG_COLUMNS, rows)
    for idx, snap in enumerate(result.snapshots):
        srows = ((_fmt(p), _fmt(x)) for p, x in zip(snap.pgrid, snap.x))
        smeta = dict(meta)
        smeta["t"] = _fmt(snap.t)
        write_csv(os.path.join(outdir, f"snapshot_{idx:03d}.csv"), smeta, ("p", "x"), srows)
    last = len(diag["t"]) - 1
    write_json(os.path.join(outdir, "run.json"), {
        "version": __version__,
        "params": {"kappa": params.kappa, "delta": params.delta, "tau": params.tau},
        "drive": opts["drive"],
        "n": n, "dt": dt, "t_end": scenario.t_end, "method": scenario.method,
        "rows": len(diag["t"]),
        "snapshots": [s.t for s in result.snapshots],
        "multiple_interface_times": list(result.multiple_interface_times),
        "min_consecutive_dx": result.min_consecutive_dx,
        "final": {"t": diag["t"][last], "sigma": diag["sigma"][last], "mean_x": diag["mean_x"][last]},
    })


def cmd_wave(model_opts: Dict[str, str], opts: Dict[str, str], outdir: str) -> None:
    params = _params_from(model_opts)
    omega = _float_opt(opts, "omega")
    n_profile = _int_opt(opts, "n_profile")
    t = _float_opt(opts, "t")
    if n_profile < 2:
        raise ConfigError("n_profile must be at least 2")
    wave = build_wave(params, omega, xi_center=_float_opt(opts, "xi_center"))
    P = np.linspace(0.0, 1.0, n_profile)
    X = eval_profile(wave, P - omega * t)
    dv = wave_drive(wave, t)

    os.makedirs(outdir, exist_ok=True)
    meta = _meta(params, {"omega": _fmt(omega), "t": _fmt(t)})
    write_csv(os.path.join(outdir, "profile.csv"), meta, ("P", "X"),
              ((_fmt(a), _fmt(b)) for a, b in zip(P, X)))
    write_json(os.path.join(outdir, "wave.json"), {
        "version": __version__,
        "params": {"kappa": params.kappa, "delta": params.delta, "tau": params.tau},
        "omega": omega,
        "direction": wave.direction.value,
        "xi_lo": wave.xi_lo, "xi_hi": wave.xi_hi,
        "width": wave.width,
        "width_asymptotic": width_asymptotic(params, omega),
        "sigma0": wave.sigma0,
        "t": t,
        "ell_exact": dv.exact,
        "ell_leading_order": dv.leading_order,
    })


def cmd_spectrum(model_opts: Dict[str, str], opts: Dict[str, str], outdir: str) -> None:
    params = _params_from(model_opts)
    omega = _float_opt(opts, "omega")
    if opts["free_width"]:
        problem = SpectralProblem.with_free_width(params, omega, 0.5 * _float_opt(opts, "free_width"))
    else:
        problem = SpectralProblem.from_wave(params, omega)
    window = None
    if opts["window"]:
        vals = _floats_csv(opts["window"])
        if len(vals) != 4:
            raise ConfigError("window must be four numbers re0,re1,im0,im1")
        window = (vals[0], vals[1], vals[2], vals[3])
    gvals = _floats_csv(opts["grid"])
    if len(gvals) != 2:
        raise ConfigError("grid must be two integers")
    grid = (int(gvals[0]), int(gvals[1]))
    thm2 = opts["thm2_check"].strip().lower() in ("1", "true", "yes", "on")

    points = find_spectrum(problem, window=window, grid=grid)
    roots = []
    for pt in points:
        entry = {
            "re": pt.lam.real, "im": pt.lam.imag,
            "tau_re": pt.tau_lambda.real, "tau_im": pt.tau_lambda.imag,
            "class": pt.cls.value, "residual": pt.residual,
            "clustered": pt.clustered,
            "ep_residual": ep_residual(problem, pt),
        }
        roots.append(entry)
    excl = problem.excluded_tau_lambda
    out = {
        "version": __version__,
        "params": {"kappa": params.kappa, "delta": params.delta, "tau": params.tau},
        "omega": omega,
        "coupled": problem.coupled,
        "half_width": problem.half_width,
        "epsilon": problem.epsilon,
        "window": list(window if window is not None else default_window(problem)),
        "excluded_point": {
            "tau_lambda": excl,
            "char_plus_abs": abs(char_plus(problem, excl / params.tau)),
            "reported": False,
        },
        "s_zero": s_zero_line(problem),
        "roots": roots,
    }
    if problem.coupled:
        out["asymptotic_real_part"] = asymptotic_real_part(problem)
        out["asymptotic_limit"] = math.log(2.0 / params.delta)
        v = instability_verdict(params, omega, window=window, grid=grid)
        out["verdict"] = {
            "kind": v.kind,
            "max_re_lambda": v.max_re_lambda,
            "max_re_tau_lambda": v.max_re_tau_lambda,
            "asymptotic_stability": v.asymptotic_stability,
            "n_splus_roots": v.n_splus_roots,
        }
    if thm2:
        out["thm2"] = thm2_sign_resolution(problem, n_pairs=_int_opt(opts, "thm2_pairs"),
                                           window=window, grid=grid)

    os.makedirs(outdir, exist_ok=True)
    win = window if window is not None else default_window(problem)
    res = np.linspace(win[0], win[1], grid[0])
    ims = np.linspace(win[2], win[3], grid[1])
    tau = params.tau

    def _grid_rows():
        for re in res:
            for im in ims:
                lam = complex(re, im) / tau
                yield (_fmt(re), _fmt(im),
                       _fmt(abs(char_minus(problem, lam))),
                       _fmt(abs(char_plus(problem, lam))))

    meta = _meta(params, {"omega": _fmt(omega)})
    write_csv(os.path.join(outdir, "chargrid.csv"), meta,
              ("tau_re", "tau_im", "abs_char_minus", "abs_char_plus"), _grid_rows())
    write_json(os.path.join(outdir, "spectrum.json"), out)


def cmd_limit(model_opts: Dict[str, str], opts: Dict[str, str], outdir: str) -> None:
    params = _params_from(model_opts)
    drive = parse_drive(opts["drive"])
    xi0 = _float_opt(opts, "xi0")
    sigma0 = _float_opt(opts, "sigma0") if opts["sigma0"] else float(drive.ell(0.0)) - 1.0 + 2.0 * xi0
    spacing = _float_opt(opts, "max_row_spacing") if opts["max_row_spacing"] else None
    state = LimitState(sigma=sigma0, xi=xi0, t=0.0)
    result = limit_run(params, drive, state, _float_opt(opts, "t_end"), max_row_spacing=spacing)

    os.makedirs(outdir, exist_ok=True)
    meta = _meta(params, {"drive": opts["drive"]})
    rows = (
        (_fmt(result.t[i]), _fmt(result.sigma[i]), _fmt(result.xi[i]),
         _fmt(result.ell[i]), result.branch[i])
        for i in range(len(result.t))
    )
    write_csv(os.path.join(outdir, "limit.csv"), meta,
              ("t", "sigma", "xi", "ell", "branch"), rows)
    write_json(os.path.join(outdir, "loop.json"), {
        "version": __version__,
        "params": {"kappa": params.kappa, "delta": params.delta, "tau": params.tau},
        "drive": opts["drive"],
        "boundary": loop_boundary(params),
        "events": list(result.events),
    })


def cmd_compare(model_opts: Dict[str, str], opts: Dict[str, str], outdir: str) -> None:
    params = _params_from(model_opts)
    drive = parse_drive(opts["drive"])
    n = _int_opt(opts, "n")
    dt = _float_opt(opts, "dt") if opts["dt"] else params.tau / 20.0
    initial = parse_initial(opts["initial"], n)
    t_end = _float_opt(opts, "t_end")
    try:
        scenario = Scenario(params=params, drive=drive, initial=initial,
                            t_end=t_end, dt=dt, n=n, method=opts["method"])
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    xi0 = _float_opt(opts, "xi0")
    sigma0 = float(drive.ell(0.0)) - 1.0 + 2.0 * xi0

    result = run(scenario)
    lim = limit_run(params, drive, LimitState(sigma=sigma0, xi=xi0, t=0.0), t_end)

    diag = result.diagnostics
    tp = diag["t"]
    sig_l = np.interp(tp, lim.t, lim.sigma)
    xi_l = np.interp(tp, lim.t, lim.xi)
    h = hausdorff(np.column_stack([diag["ell"], diag["sigma"]]),
                  np.column_stack([lim.ell, lim.sigma]))
    metrics = {
        "version": __version__,
        "params": {"kappa": params.kappa, "delta": params.delta, "tau": params.tau},
        "hausdorff_ell_sigma": h,
    }
    if opts["osc_window"]:
        w = _floats_csv(opts["osc_window"])
        if len(w) != 2:
            raise ConfigError("osc_window must be two numbers t0,t1")
        width = diag["xi_plus"] - diag["xi_minus"]
        metrics["oscillation"] = oscillation_metric(tp, width, (w[0], w[1]))
        metrics["osc_window"] = [w[0], w[1]]

    os.makedirs(outdir, exist_ok=True)
    meta = _meta(params, {"drive": opts["drive"], "dt": _fmt(dt), "n": str(n)})
    cols = ("t", "ell", "sigma_particle", "xi_minus", "xi_plus", "sigma_limit", "xi_limit")
    rows = (
        (_fmt(tp[i]), _fmt(diag["ell"][i]), _fmt(diag["sigma"][i]),
         _fmt(diag["xi_minus"][i]), _fmt(diag["xi_plus"][i]),
         _fmt(sig_l[i]), _fmt(xi_l[i]))
        for i in range(len(tp))
    )
    write_csv(os.path.join(outdir, "compare.csv"), meta, cols, rows)
    write_json(os.path.join(outdir, "metrics.json"), metrics)


_DISPATCH = {
    "simulate": cmd_simulate,
    "wave": cmd_wave,
    "spectrum": cmd_spectrum,
    "limit": cmd_limit,
    "compare": cmd_compare,
}


def _sweep_worker(payload) -> dict:
    sub, model_opts, opts, combo_dir, overrides = payload
    record = {"dir": combo_dir, "overrides": overrides}
    try:
        _DISPATCH[sub](model_opts, opts, combo_dir)
        record["status"] = "ok"
        record["error"] = None
    except HystwaveError as exc:
        record["status"] = "error"
        record["error"] = f"{type(exc).__name__}: {exc}"
    return record


def cmd_sweep(ns: argparse.Namespace, cfg: configparser.ConfigParser, outdir: str) -> None:
    sub = ns.sub
    if sub not in _DISPATCH:
        raise ConfigError(f"sweep sub must be one of {sorted(_DISPATCH)}")
    names = ns.param or []
    values = ns.values or []
    if len(names) != len(values) or not names:
        raise ConfigError("each --param needs a matching --values list")
    model_opts = _resolve("model", ns, cfg)
    opts = _resolve(sub, ns, cfg)
    axes = []
    for name, vals in zip(names, values):
        section, _, key = name.partition(".")
        if section not in ("model", sub) or key not in _SECTIONS[section]:
            raise ConfigError(f"unknown sweep parameter {name!r}")
        axes.append([(section, key, v.strip()) for v in vals.split(",") if v.strip()])

    payloads = []
    combos = list(itertools.product(*axes))
    for combo in combos:
        m = dict(model_opts)
        o = dict(opts)
        tags = []
        overrides = {}
        for section, key, val in combo:
            (m if section == "model" else o)[key] = val
            tags.append(f"{key}={val}")
            overrides[f"{section}.{key}"] = val
        combo_dir = os.path.join(outdir, "_".join(tags))
        payloads.append((sub, m, o, combo_dir, overrides))

    # validate every combination before any work or writes
    for _, m, o, _, _ in payloads:
        _params_from(m)

    records: List[dict] = []
    os.makedirs(outdir, exist_ok=True)
    workers = ns.workers or min(len(payloads), os.cpu_count() or 1)
    if workers <= 1 or len(payloads) == 1:
        for payload in payloads:
            records.append(_sweep_worker(payload))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_sweep_worker, payloads))
    write_json(os.path.join(outdir, "sweep.json"), {
        "version": __version__,
        "sub": sub,
        "combos": records,
    })
    if any(r["status"] != "ok" for r in records):
        raise HystwaveError("one or more sweep combinations failed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hystwave",
        description="bistable particle assemblies with a mean constraint: "
                    "simulation, traveling waves, spectra, rate-independent limit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="INI config file")
        sp.add_argument("--outdir", help="output directory (default: $HYSTWAVE_OUTDIR or .)")
        sp.add_argument("--kappa", help="spinodal half width, in (0, 1)")
        sp.add_argument("--delta", help="disorder strength, > 0")
        sp.add_argument("--tau", help="relaxation time, > 0")

    sp = subs.add_parser("simulate", help="integrate the constrained particle system")
    add_common(sp)
    for key in _SECTIONS["simulate"]:
        sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    sp = subs.add_parser("wave", help="construct an exact traveling interface")
    add_common(sp)
    for key in _SECTIONS["wave"]:
        sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    sp = subs.add_parser("spectrum", help="point spectrum of the linearized dynamics")
    add_common(sp)
    for key in _SECTIONS["spectrum"]:
        sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    sp = subs.add_parser("limit", help="rate-independent limit trajectory")
    add_common(sp)
    for key in _SECTIONS["limit"]:
        sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    sp = subs.add_parser("compare", help="particle run against the limit model")
    add_common(sp)
    for key in _SECTIONS["compare"]:
        sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    sp = subs.add_parser("sweep", help="run a subcommand over a parameter grid")
    add_common(sp)
    sp.add_argument("--sub", default="simulate", help="subcommand to sweep")
    sp.add_argument("--param", action="append", help="section.key to vary, e.g. model.delta")
    sp.add_argument("--values", action="append", help="comma-separated values for the last --param")
    sp.add_argument("--workers", type=int, help="process pool size")
    for section in ("simulate", "wave", "spectrum", "limit", "compare"):
        for key in _SECTIONS[section]:
            for action in sp._actions:
                if action.dest == key:
                    break
            else:
                sp.add_argument(f"--{key.replace('_', '-')}", dest=key)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _load_config(ns.config)
        outdir = ns.outdir or os.environ.get("HYSTWAVE_OUTDIR") or "."
        if ns.command == "sweep":
            cmd_sweep(ns, cfg, outdir)
        else:
            model_opts = _resolve("model", ns, cfg)
            opts = _resolve(ns.command, ns, cfg)
            _DISPATCH[ns.command](model_opts, opts, outdir)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except HystwaveError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
