"""Deterministic figure rendering from hystwave CLI artifacts.

All figure kinds consume only the published CSV/JSON schemas; nothing
is recomputed beyond plotting transforms (axis scaling, marker
placement).  The Agg backend with pinned style settings makes renders
reproducible byte for byte.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import SchemaMismatch, need_keys, read_csv, read_json  # noqa: E402

KINDS = (
    "trajectory_overlay",
    "snapshot_grid",
    "wave_profile",
    "spectrum_scatter",
    "oscillation_traces",
)

# pinned style: every run must produce identical bytes
_RC = {
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.25,
    "grid.linewidth": 0.5,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "hystwave-plots",
}


@dataclass
class FigureSpec:
    """One figure request: kind, named input paths, style overrides."""

    kind: str
    inputs: Dict[str, object]
    output: str
    style: Dict[str, object] = field(default_factory=dict)


def _path(spec: FigureSpec, key: str) -> str:
    val = spec.inputs.get(key)
    if not isinstance(val, str):
        raise ValueError(f"{spec.kind} requires input {key!r} (a file path)")
    return val

def _paths(spec: FigureSpec, key: str) -> List[str]:
    val = spec.inputs.get(key)
    if isinstance(val, str):
        return [val]
    if isinstance(val, (list, tuple)) and val and all(isinstance(v, str) for v in val):
        return list(val)
    raise ValueError(f"{spec.kind} requires input {key!r} (one or more file paths)")


def _save(fig, spec: FigureSpec) -> str:
    out = spec.output
    if out.endswith(".svg"):
        # Date is the only nondeterministic SVG field under a fixed hashsalt
        fig.savefig(out, metadata={"Date": None})
    else:
        fig.savefig(out, metadata={"Software": None})
    plt.close(fig)
    return out


def _figure(spec: FigureSpec, ncols: int = 1, nrows: int = 1):
    width = float(spec.style.get("width", 4.2 * ncols))
    height = float(spec.style.get("height", 3.2 * nrows))
    fig, axes = plt.subplots(nrows, ncols, figsize=(width, height))
    return fig, axes


def _loop_polygon(loop_doc: dict, path: str) -> np.ndarray:
    need_keys(path, loop_doc, "boundary.corners")
    corners = loop_doc["boundary"]["corners"]
    order = ("part4_part1", "part1_part2", "part2_part3", "part3_part4")
    for name in order:
        if name not in corners:
            raise SchemaMismatch(path, f"boundary.corners.{name}")
    pts = [corners[name] for name in order]
    pts.append(pts[0])
    return np.array(pts, dtype=float)


def _render_trajectory_overlay(spec: FigureSpec):
    table = read_csv(_path(spec, "compare"))
    ell = table.floats("ell")
    sig_p = table.floats("sigma_particle")
    sig_l = table.floats("sigma_limit")

    fig, ax = _figure(spec)
    if "loop" in spec.inputs:
        loop_path = _path(spec, "loop")
        poly = _loop_polygon(read_json(loop_path), loop_path)
        ax.plot(poly[:, 0], poly[:, 1], color="0.75", linewidth=0.8,
                linestyle=":", label="loop boundary", zorder=1)
    ax.plot(ell, sig_l, color="0.6", linewidth=0.8, label="limit model", zorder=2)
    ax.plot(ell, sig_p, color="black", label="particle system", zorder=3)
    ax.set_xlabel("load")
    ax.set_ylabel("multiplier")
    ax.legend(loc="upper left", frameon=False)
    ax.set_title(str(spec.style.get("title", "trajectory over hysteresis loop")))
    return fig


def _render_snapshot_grid(spec: FigureSpec):
    paths = _paths(spec, "snapshots")
    ncols = min(3, len(paths))
    nrows = (len(paths) + ncols - 1) // ncols
    fig, axes = _figure(spec, ncols=ncols, nrows=nrows)
    axes = np.atleast_1d(axes).ravel()
    for ax in axes[len(paths):]:
        ax.set_axis_off()
    for ax, path in zip(axes, paths):
        table = read_csv(path)
        p = table.floats("p")
        x = table.floats("x")
        ax.plot(p, x, color="black", linewidth=0.9)
        if "kappa" in table.meta:
            k = float(table.meta["kappa"])
            ax.axhline(+k, color="0.7", linewidth=0.6, linestyle=":")
            ax.axhline(-k, color="0.7", linewidth=0.6, linestyle=":")
        ax.set_xlabel("p")
        ax.set_ylabel("x")
        ax.set_title(f"t = {table.meta.get('t', '?')}")
    fig.suptitle(str(spec.style.get("title", "ensemble snapshots")))
    fig.tight_layout()
    return fig


def _render_wave_profile(spec: FigureSpec):
    table = read_csv(_path(spec, "profile"))
    P = table.floats("P")
    X = table.floats("X")
    wave_path = _path(spec, "wave")
    doc = read_json(wave_path)
    need_keys(wave_path, doc, "params.delta", "omega", "sigma0",
              "xi_lo", "xi_hi", "t")

    delta = float(doc["params"]["delta"])
    shift = float(doc["omega"]) * float(doc["t"])
    sigma0 = float(doc["sigma0"])

    fig, ax = _figure(spec)
    # outer-branch equilibrium envelopes in the lab frame
    for off, label in ((1.0, "upper envelope"), (-1.0, "lower envelope")):
        ax.plot(P, delta * (P - shift) + sigma0 + off, color="0.7",
                linewidth=0.7, linestyle="--",
                label=label if off > 0 else None)
    for edge in (float(doc["xi_lo"]) + shift, float(doc["xi_hi"]) + shift):
        ax.axvline(edge, color="0.8", linewidth=0.6, linestyle=":")
    ax.plot(P, X, color="black", label="profile")
    ax.set_xlabel("p")
    ax.set_ylabel("x")
    ax.legend(loc="upper left", frameon=False)
    ax.set_title(str(spec.style.get("title", "traveling-wave profile")))
    return fig


def _contour_valleys(ax, table):
    """Low-level contours of |char| locate the characteristic zero sets."""
    re = table.floats("tau_re")
    im = table.floats("tau_im")
    n_im = len(np.unique(im))
    n_re = len(re) // n_im
    RE = re.reshape(n_re, n_im)
    IM = im.reshape(n_re, n_im)
    for name, style in (("abs_char_plus", "-"), ("abs_char_minus", "--")):
        Z = np.log10(np.maximum(table.floats(name).reshape(n_re, n_im), 1e-300))
        level = float(np.percentile(Z, 5.0))
        ax.contour(RE, IM, Z, levels=[level], colors="0.8",
                   linestyles=style, linewidths=0.7)


def _render_spectrum_scatter(spec: FigureSpec):
    path = _path(spec, "spectrum")
    doc = read_json(path)
    need_keys(path, doc, "roots", "s_zero.re_tau_lambda",
              "excluded_point.tau_lambda")

    rescaled = "asymptotic_limit" in doc
    fig, axes = _figure(spec, ncols=2 if rescaled else 1)
    ax = axes[0] if rescaled else axes

    if "chargrid" in spec.inputs:
        _contour_valleys(ax, read_csv(_path(spec, "chargrid")))

    ax.axvline(float(doc["s_zero"]["re_tau_lambda"]), color="0.6",
               linewidth=1.0, label="continuous spectrum")
    roots = doc["roots"]
    for entry in roots:
        for key in ("re", "tau_re", "tau_im"):
            if key not in entry:
                raise SchemaMismatch(path, f"roots[].{key}")
    stable = [(r["tau_re"], r["tau_im"]) for r in roots if r["re"] < 0.0]
    unstable = [(r["tau_re"], r["tau_im"]) for r in roots if r["re"] >= 0.0]
    if stable:
        pts = np.array(stable)
        ax.scatter(pts[:, 0], pts[:, 1], marker="s", s=28, color="0.5",
                   label="stable")
    if unstable:
        pts = np.array(unstable)
        ax.scatter(pts[:, 0], pts[:, 1], marker="D", s=28, color="black",
                   label="unstable")
    ax.scatter([float(doc["excluded_point"]["tau_lambda"])], [0.0],
               marker="o", s=34, facecolors="none", edgecolors="0.75",
               label="excluded point")
    ax.set_xlabel("Re of tau*lambda")
    ax.set_ylabel("Im of tau*lambda")
    ax.legend(loc="upper left", frameon=False, fontsize=7)
    ax.set_title(str(spec.style.get("title", "point spectrum")))

    if rescaled:
        need_keys(path, doc, "epsilon", "asymptotic_real_part")
        eps = float(doc["epsilon"])
        ax2 = axes[1]
        ax2.axvline(float(doc["asymptotic_limit"]), color="0.4",
                    linewidth=1.0, linestyle=":", label="asymptotic limit")
        ax2.axvline(float(doc["asymptotic_real_part"]), color="0.7",
                    linewidth=0.8, linestyle="--", label="near-origin real part")
        if stable:
            pts = np.array(stable) / eps
            ax2.scatter(pts[:, 0], pts[:, 1], marker="s", s=28, color="0.5")
        if unstable:
            pts = np.array(unstable) / eps
            ax2.scatter(pts[:, 0], pts[:, 1], marker="D", s=28, color="black")
        ax2.set_xlabel("Re of rescaled eigenvalue")
        ax2.set_ylabel("Im of rescaled eigenvalue")
        ax2.legend(loc="upper left", frameon=False, fontsize=7)
        ax2.set_title("rescaled ladder")
        fig.tight_layout()
    return fig


def _render_oscillation_traces(spec: FigureSpec):
    paths = _paths(spec, "diagnostics")
    fig, ax = _figure(spec)
    shades = np.linspace(0.0, 0.6, len(paths))
    for shade, path in zip(shades, paths):
        table = read_csv(path)
        t = table.floats("t")
        width = table.floats("xi_plus") - table.floats("xi_minus")
        label = f"delta = {table.meta.get('delta', '?')}"
        ax.plot(t, width, color=str(shade), label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("interface width")
    ax.legend(loc="upper left", frameon=False)
    ax.set_title(str(spec.style.get("title", "interface width traces")))
    return fig


_RENDERERS = {
    "trajectory_overlay": _render_trajectory_overlay,
    "snapshot_grid": _render_snapshot_grid,
    "wave_profile": _render_wave_profile,
    "spectrum_scatter": _render_spectrum_scatter,
    "oscillation_traces": _render_oscillation_traces,
}


def render(spec: FigureSpec) -> str:
    """Render one figure and return the written image path.

    Parameters
    ----------
    spec : FigureSpec
        Figure kind, named input paths, output path, style overrides.

    Returns
    -------
    str
        The output path, written as PNG or SVG by extension.

    Raises
    ------
    ValueError
        Unknown kind or missing required input path.
    SchemaMismatch
        An input file lacks a required column or key.
    """
    if spec.kind not in _RENDERERS:
        raise ValueError(f"unknown figure kind {spec.kind!r}; expected one of {KINDS}")
    with plt.rc_context(_RC):
        fig = _RENDERERS[spec.kind](spec)
        return _save(fig, spec)
