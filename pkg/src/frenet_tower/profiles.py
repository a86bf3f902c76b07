"""Curvature/torsion profiles: analytic expressions or interpolated tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import PchipInterpolator, interp1d

from . import expressions as ex
from .errors import InvalidArgumentError, ProfileEvalError

ANALYTIC = "ANALYTIC"
TABLE = "TABLE"


def _first_bad(s: np.ndarray, values: np.ndarray) -> float:
    bad = ~np.isfinite(values)
    return float(np.atleast_1d(s)[np.argmax(bad)])


@dataclass(frozen=True)
class CurvatureProfile:
    """Evaluable pair kappa(s), tau(s) on a domain.

    ANALYTIC profiles wrap two expression trees; TABLE profiles wrap a sorted
    (s, kappa, tau) table with monotone-cubic (default) or linear
    interpolation, whose analytic derivative supplies dkappa/dtau.
    """

    kind: str
    domain: tuple[float, float]
    kappa_source: str = ""
    tau_source: str = ""
    _kappa_node: Optional[ex.Node] = field(default=None, repr=False)
    _tau_node: Optional[ex.Node] = field(default=None, repr=False)
    _table: Optional[tuple] = field(default=None, repr=False)  # (kap_f, tau_f, dkap_f, dtau_f)

    def contains(self, s0: float, s1: float) -> bool:
        return self.domain[0] <= s0 and s1 <= self.domain[1]

    def evaluate(self, s) -> tuple[np.ndarray, np.ndarray]:
        """kappa(s), tau(s); raises ProfileEvalError with the offending location."""
        arr = np.asarray(s, dtype=float)
        if arr.size and (arr.min() < self.domain[0] - 1e-12 or arr.max() > self.domain[1] + 1e-12):
            off = float(arr[np.argmax((arr < self.domain[0]) | (arr > self.domain[1]))])
            raise ProfileEvalError(f"s={off!r} is outside the profile domain", s=off)
        if self.kind == ANALYTIC:
            kap = np.asarray(ex.evaluate(self._kappa_node, arr), dtype=float)
            tau = np.asarray(ex.evaluate(self._tau_node, arr), dtype=float)
        else:
            kap_f, tau_f, _, _ = self._table
            kap = np.asarray(kap_f(arr), dtype=float)
            tau = np.asarray(tau_f(arr), dtype=float)
        for name, vals in (("kappa", kap), ("tau", tau)):
            if not np.all(np.isfinite(vals)):
                loc = _first_bad(arr, vals)
                raise ProfileEvalError(f"{name}(s) is not finite at s={loc!r}", s=loc)
        return kap, tau

    def derivatives(self, s) -> Optional[tuple[np.ndarray, np.ndarray]]:
        """(dkappa, dtau) when the profile owns an analytic derivative (TABLE
        interpolants); None for expression profiles, whose derivatives are
        taken by grid differencing downstream."""
        if self.kind != TABLE:
            return None
        _, _, dkap_f, dtau_f = self._table
        arr = np.asarray(s, dtype=float)
        return np.asarray(dkap_f(arr), dtype=float), np.asarray(dtau_f(arr), dtype=float)

    def negative_kappa_locations(self, s_grid: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """Grid locations where kappa(s) < -tol (profile contract violations)."""
        kap, _ = self.evaluate(s_grid)
        return np.asarray(s_grid, dtype=float)[kap < -tol]


def parse_profile(
    kappa_src: str,
    tau_src: str,
    domain: tuple[float, float] = (-math.inf, math.inf),
) -> CurvatureProfile:
    """Build an ANALYTIC profile from two expression sources."""
    if not kappa_src or not kappa_src.strip() or not tau_src or not tau_src.strip():
        raise InvalidArgumentError("profile sources must be non-empty")
    kap_node = ex.parse_expression(kappa_src)
    tau_node = ex.parse_expression(tau_src)
    return CurvatureProfile(
        kind=ANALYTIC,
        domain=(float(domain[0]), float(domain[1])),
        kappa_source=ex.to_source(kap_node),
        tau_source=ex.to_source(tau_node),
        _kappa_node=kap_node,
        _tau_node=tau_node,
    )


def profile_from_nodes(kappa_node: ex.Node, tau_node: ex.Node,
                       domain: tuple[float, float] = (-math.inf, math.inf)) -> CurvatureProfile:
    return CurvatureProfile(
        kind=ANALYTIC,
        domain=(float(domain[0]), float(domain[1])),
        kappa_source=ex.to_source(kappa_node),
        tau_source=ex.to_source(tau_node),
        _kappa_node=kappa_node,
        _tau_node=tau_node,
    )


def table_profile(
    s: np.ndarray,
    kappa: np.ndarray,
    tau: np.ndarray,
    interpolation: str = "pchip",
) -> CurvatureProfile:
    """TABLE profile over sorted rows; interpolation is 'pchip' or 'linear'."""
    s = np.asarray(s, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    tau = np.asarray(tau, dtype=float)
    if s.ndim != 1 or len(s) < 2:
        raise InvalidArgumentError("table needs at least two rows")
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(kappa)) and np.all(np.isfinite(tau))):
        raise InvalidArgumentError("table rows must be finite")
    if np.any(np.diff(s) <= 0):
        raise InvalidArgumentError("table rows must be strictly increasing in s")
    if interpolation == "pchip":
        kap_f = PchipInterpolator(s, kappa)
        tau_f = PchipInterpolator(s, tau)
        dkap_f = kap_f.derivative()
        dtau_f = tau_f.derivative()
    elif interpolation == "linear":
        kap_f = interp1d(s, kappa)
        tau_f = interp1d(s, tau)
        dk = np.gradient(kappa, s)
        dt = np.gradient(tau, s)
        dkap_f = interp1d(s, dk)
        dtau_f = interp1d(s, dt)
    else:
        raise InvalidArgumentError(f"unknown interpolation {interpolation!r}")
    return CurvatureProfile(
        kind=TABLE,
        domain=(float(s[0]), float(s[-1])),
        kappa_source=f"table[{len(s)} rows, {interpolation}]",
        tau_source=f"table[{len(s)} rows, {interpolation}]",
        _table=(kap_f, tau_f, dkap_f, dtau_f),
    )
