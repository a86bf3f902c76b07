"""Shared numerical kernels: finite differences, cumulative quadrature, alignment.

Everything here operates on plain numpy arrays over uniform grids and is
deterministic; no randomness, no global state.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgumentError

STENCIL = 5  # window width used for all uniform-grid derivatives


def fd_weights(offsets: np.ndarray, order: int) -> np.ndarray:
    """Finite-difference weights for a derivative of given order.

    Solves the small Vandermonde system sum_k w_k * o_k**j = j! * delta(j, order)
    for integer grid offsets ``o_k``; exact for polynomials up to degree
    len(offsets)-1.
    """
    offs = np.asarray(offsets, dtype=float)
    m = len(offs)
    if order >= m:
        raise InvalidArgumentError("derivative order too high for stencil width")
    A = np.vander(offs, m, increasing=True).T
    b = np.zeros(m)
    b[order] = float(math.factorial(order))
    return np.linalg.solve(A, b)


def _stencil_table(order: int) -> list[np.ndarray]:
    # weight rows for window positions 0..4 (offsets relative to the point)
    return [fd_weights(np.arange(STENCIL) - i, order) for i in range(STENCIL)]


_W1 = _stencil_table(1)
_W2 = _stencil_table(2)
_W3 = _stencil_table(3)
_TABLES = {1: _W1, 2: _W2, 3: _W3}


def differentiate(values: np.ndarray, h: float, order: int = 1) -> np.ndarray:
    """Derivative of tabulated values on a uniform grid of step ``h``.

    Five-point stencils: centered in the interior, one-sided (same width) at
    the boundaries.  Works along axis 0 for 1-D or (n, d) arrays.
    """
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    if n < STENCIL:
        raise InvalidArgumentError(f"need at least {STENCIL} samples, got {n}")
    w = _TABLES[order]
    out = np.empty_like(y)
    # interior via correlation with the centered stencil
    wc = w[2]
    acc = np.zeros_like(y[2 : n - 2])
    for j in range(STENCIL):
        acc = acc + wc[j] * y[j : n - 4 + j]
    out[2 : n - 2] = acc
    for i in (0, 1):
        out[i] = np.tensordot(w[i], y[:STENCIL], axes=(0, 0))
        out[n - 1 - i] = np.tensordot(w[STENCIL - 1 - i], y[n - STENCIL :], axes=(0, 0))
    return out / h**order


def differentiate_periodic(values: np.ndarray, h: float, order: int = 1) -> np.ndarray:
    """Centered five-point derivative on a periodic uniform grid (no duplicate endpoint)."""
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    if n < STENCIL:
        raise InvalidArgumentError(f"need at least {STENCIL} samples, got {n}")
    wc = _TABLES[order][2]
    out = np.zeros_like(y)
    for j, off in enumerate(range(-2, 3)):
        out = out + wc[j] * np.roll(y, -off, axis=0)
    return out / h**order


def cumulative_integral(values: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral on a uniform grid via local parabolic (Simpson) segments.

    Each increment integrates the quadratic through three neighbouring samples;
    prefix sums over pairs reproduce composite Simpson.  Works along axis 0.
    """
    f = np.asarray(values, dtype=float)
    n = f.shape[0]
    if n < 3:
        raise InvalidArgumentError("need at least 3 samples to integrate")
    inc = np.empty_like(f)
    inc[0] = 0.0
    inc[1:-1] = (5.0 * f[:-2] + 8.0 * f[1:-1] - f[2:]) * (h / 12.0)
    inc[-1] = (-f[-3] + 8.0 * f[-2] + 5.0 * f[-1]) * (h / 12.0)
    return np.cumsum(inc, axis=0)


def interior_slice(lo: int, hi: int, fraction: float = 0.9) -> slice:
    """Middle ``fraction`` of the inclusive index range [lo, hi]."""
    count = hi - lo + 1
    trim = int(count * (1.0 - fraction) / 2.0)
    return slice(lo + trim, hi + 1 - trim)


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """Angle in radians between two nonzero vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def line_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Angle between the lines spanned by u and v (sign-insensitive)."""
    a = angle_between(u, v)
    return min(a, np.pi - a)


def wrap_angle(a: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    w = float(np.remainder(a + np.pi, 2.0 * np.pi) - np.pi)
    return np.pi if w == -np.pi else w


def rigid_align(moving: np.ndarray, fixed: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Least-squares rigid alignment (rotation + translation, no scaling).

    Returns (aligned_points, rotation, translation) such that
    aligned = moving @ rotation.T + translation best matches ``fixed``.
    """
    P = np.asarray(moving, dtype=float)
    Q = np.asarray(fixed, dtype=float)
    cp, cq = P.mean(axis=0), Q.mean(axis=0)
    H = (P - cp).T @ (Q - cq)
    U, _, Vt = np.linalg.svd(H)
    d = np.sign(np.linalg.det(Vt.T @ U.T))
    D = np.diag([1.0, 1.0, d])
    R = Vt.T @ D @ U.T
    t = cq - R @ cp
    return P @ R.T + t, R, t


def require_finite(arr: np.ndarray, what: str) -> np.ndarray:
    out = np.asarray(arr, dtype=float)
    if not np.all(np.isfinite(out)):
        raise InvalidArgumentError(f"{what} contains non-finite values")
    return out
