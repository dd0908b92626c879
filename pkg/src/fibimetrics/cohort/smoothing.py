"""Locally weighted running-line smoothing (LOWESS without robustness steps)."""

from __future__ import annotations

import numpy as np

DEFAULT_FRACTION = 0.3


def _tricube(u: np.ndarray) -> np.ndarray:
    u = np.clip(np.abs(u), 0.0, 1.0)
    return (1.0 - u**3) ** 3


def lowess(x, y, frac: float = DEFAULT_FRACTION, x_eval=None) -> np.ndarray:
    """Local linear regression with tricube weights.

    Each estimate uses the ``int(frac * n)`` nearest observations (at least
    two); the bandwidth is the distance to the farthest of them.  Where the
    weighted abscissae have no spread the weighted mean is returned.

    Parameters
    ----------
    x, y : array-like of shape (n,)
    frac : float in (0, 1]
    x_eval : array-like, optional
        Points to evaluate at; defaults to ``x``.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError(f"x and y differ in length: {x.size} vs {y.size}")
    if not 0.0 < frac <= 1.0:
        raise ValueError(f"frac must lie in (0, 1], got {frac}")
    n = x.size
    if n == 0:
        raise ValueError("cannot smooth an empty series")
    x_eval = x if x_eval is None else np.asarray(x_eval, dtype=float).ravel()
    k = min(n, max(2, int(frac * n + 1e-10)))
    out = np.empty(x_eval.size)
    for i, x0 in enumerate(x_eval):
        d = np.abs(x - x0)
        h = np.partition(d, k - 1)[k - 1]
        w = _tricube(d / h) if h > 0 else (d == 0).astype(float)
        sw = w.sum()
        if sw == 0:
            # every neighbour sits exactly on the bandwidth edge
            w = (d <= h).astype(float)
            sw = w.sum()
        xm = np.dot(w, x) / sw
        ym = np.dot(w, y) / sw
        dx = x - xm
        sxx = np.dot(w, dx * dx)
        # spread measured against the bandwidth, so shifting x changes nothing
        if sxx <= 1e-12 * sw * h * h:
            out[i] = ym
            continue
        slope = np.dot(w, dx * (y - ym)) / sxx
        out[i] = ym + slope * (x0 - xm)
    return out
