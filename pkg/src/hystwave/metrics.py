"""Scalar summaries used to compare trajectories across models."""

from __future__ import annotations

import numpy as np

from .errors import WindowEmpty

__all__ = ["oscillation_metric", "hausdorff"]


def oscillation_metric(t, width, window) -> float:
    """Standard deviation of the interface-width velocity inside a window.

    Finite differences of width over t restricted to window = (t0, t1);
    requires at least three samples there.  A sinusoidal width
    a sin(w t) sampled densely gives about a w / sqrt(2).
    """
    t = np.asarray(t, dtype=float)
    width = np.asarray(width, dtype=float)
    if t.shape != width.shape or t.ndim != 1:
        raise ValueError("t and width must be 1-d arrays of equal length")
    t0, t1 = float(window[0]), float(window[1])
    keep = (t >= t0) & (t <= t1)
    if int(keep.sum()) < 3:
        raise WindowEmpty(f"window [{t0}, {t1}] holds {int(keep.sum())} samples; need at least 3")
    ts = t[keep]
    ws = width[keep]
    rate = np.diff(ws) / np.diff(ts)
    return float(np.std(rate, ddof=0))


def _directed_hausdorff(points: np.ndarray, poly: np.ndarray, chunk: int = 512) -> float:
    if len(poly) == 1:
        return float(np.max(np.hypot(points[:, 0] - poly[0, 0], points[:, 1] - poly[0, 1])))
    b0 = poly[:-1]
    seg = poly[1:] - b0
    den = np.einsum("ij,ij->i", seg, seg)
    safe = np.where(den > 0.0, den, 1.0)
    worst = 0.0
    for lo in range(0, len(points), chunk):
        p = points[lo:lo + chunk]
        rel = p[:, None, :] - b0[None, :, :]
        frac = np.einsum("pij,ij->pi", rel, seg) / safe
        frac = np.clip(np.where(den > 0.0, frac, 0.0), 0.0, 1.0)
        diff = rel - frac[:, :, None] * seg[None, :, :]
        d2 = np.einsum("pij,pij->pi", diff, diff)
        worst = max(worst, float(np.sqrt(np.max(np.min(d2, axis=1)))))
    return worst


def hausdorff(path_a, path_b) -> float:
    """Symmetric Hausdorff distance between two planar polylines.

    Each path is an (n, 2) vertex array; distances are measured from
    vertices of one path to the segments of the other, both ways.
    """
    a = np.atleast_2d(np.asarray(path_a, dtype=float))
    b = np.atleast_2d(np.asarray(path_b, dtype=float))
    if a.shape[1] != 2 or b.shape[1] != 2 or len(a) == 0 or len(b) == 0:
        raise ValueError("paths must be nonempty (n, 2) arrays")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))
