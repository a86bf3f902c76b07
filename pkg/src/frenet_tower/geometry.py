"""Frame-level primitives: Frenet frames, Darboux vectors, geodesic curvature, axes.

Conventions: curves are unit-speed, frames are right-handed orthonormal triples
(T, N, B) with B recomputed as T x N whenever a frame is (re)constructed, and
the geodesic curvature sigma keeps its sign (it is negative for one of the two
axis orientations; the sign carries through to the reported angle theta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AxisUndefinedError,
    FrameCollapseError,
    InvalidArgumentError,
    SigmaUndefinedError,
)

DEFAULT_KAPPA_FLOOR = 1e-9
_COLLAPSE_TOL = 1e-8


def as_vec3(v, what: str = "vector") -> np.ndarray:
    """Validate and convert to a finite float (3,) array."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise InvalidArgumentError(f"{what} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{what} contains non-finite components")
    return arr


def _require_finite_scalar(x: float, what: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidArgumentError(f"{what} must be finite")
    return x


@dataclass(frozen=True)
class FrenetFrame:
    """Right-handed orthonormal triple (T, N, B) at one arclength sample."""

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "T", as_vec3(self.T, "T"))
        object.__setattr__(self, "N", as_vec3(self.N, "N"))
        object.__setattr__(self, "B", as_vec3(self.B, "B"))

    def as_matrix(self) -> np.ndarray:
        """Rows are T, N, B."""
        return np.stack([self.T, self.N, self.B])

    def gram_defect(self) -> float:
        M = self.as_matrix()
        return float(np.abs(M @ M.T - np.eye(3)).max())

    def is_orthonormal(self, tol: float = 1e-9) -> bool:
        return self.gram_defect() <= tol and float(np.abs(np.cross(self.T, self.N) - self.B).max()) <= tol


IDENTITY_FRAME = FrenetFrame(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0]))


@dataclass(frozen=True)
class CurvatureSample:
    """Curvature data at one arclength location, with s-derivatives."""

    s: float
    kappa: float
    tau: float
    dkappa: float
    dtau: float
    kappa_floor: float = DEFAULT_KAPPA_FLOOR

    @property
    def degenerate(self) -> bool:
        return self.kappa < self.kappa_floor


def darboux_vector(frame: FrenetFrame, kappa: float, tau: float) -> np.ndarray:
    """Instantaneous rotation axis of the frame: W = tau*T + kappa*B."""
    kappa = _require_finite_scalar(kappa, "kappa")
    tau = _require_finite_scalar(tau, "tau")
    if kappa < 0:
        raise InvalidArgumentError("kappa must be non-negative")
    return tau * frame.T + kappa * frame.B


def geodesic_curvature(sample: CurvatureSample) -> float:
    """Geodesic curvature of the principal-normal indicatrix.

    Computed as (tau'*kappa - kappa'*tau) / (kappa^2 + tau^2)^(3/2), which
    equals kappa^2 (tau/kappa)' / (kappa^2+tau^2)^(3/2) without dividing by
    kappa.  Constant sigma characterizes slant helices; the sign is kept.
    """
    if sample.degenerate:
        raise SigmaUndefinedError(
            f"kappa={sample.kappa!r} is below the floor {sample.kappa_floor!r}", s=sample.s
        )
    w2 = sample.kappa**2 + sample.tau**2
    if w2 <= 0.0:
        raise SigmaUndefinedError("kappa^2 + tau^2 must be positive", s=sample.s)
    return (sample.dtau * sample.kappa - sample.dkappa * sample.tau) / w2**1.5


def sigma_array(
    kappa: np.ndarray,
    tau: np.ndarray,
    dkappa: np.ndarray,
    dtau: np.ndarray,
    degenerate: np.ndarray,
) -> np.ndarray:
    """Vectorized geodesic curvature; masked entries are set to 0.0."""
    w2 = kappa**2 + tau**2
    safe = ~degenerate & (w2 > 0.0)
    out = np.zeros_like(kappa)
    out[safe] = (dtau[safe] * kappa[safe] - dkappa[safe] * tau[safe]) / w2[safe] ** 1.5
    return out


def helix_axis_tangent(frame: FrenetFrame, theta: float) -> np.ndarray:
    """Axis of a general helix: u = cos(theta) T + sin(theta) B (unit)."""
    theta = _require_finite_scalar(theta, "theta")
    return math.cos(theta) * frame.T + math.sin(theta) * frame.B


def slant_axis(frame: FrenetFrame, kappa: float, tau: float, theta: float) -> np.ndarray:
    """Axis of a slant helix: u = sin(theta) W/|W| + cos(theta) N (unit)."""
    theta = _require_finite_scalar(theta, "theta")
    w = darboux_vector(frame, kappa, tau)
    norm = float(np.linalg.norm(w))
    if norm <= 0.0:
        raise AxisUndefinedError("Darboux vector vanishes; axis undefined")
    return math.sin(theta) * (w / norm) + math.cos(theta) * frame.N


def theta_from_sigma(sigma: float) -> float:
    """Constant angle between N and the slant axis, from sigma = cot(theta).

    Canonical branch: theta in (-pi/2, pi/2], i.e. the axis representative
    with <N, u> >= 0.  sigma = 0 maps to theta = pi/2 (axis along the unit
    Darboux vector, the plain-helix case).
    """
    if sigma == 0.0:
        return math.pi / 2.0
    return math.atan(1.0 / sigma)


def orthonormalize(frame: FrenetFrame) -> FrenetFrame:
    """Modified Gram-Schmidt projection onto the orthonormal right-handed frames.

    B is always recomputed as T x N, so a left-handed input comes out
    right-handed.  Idempotent on already-orthonormal frames to ~1e-15.
    """
    t = frame.T
    tn = float(np.linalg.norm(t))
    if tn < _COLLAPSE_TOL:
        raise FrameCollapseError("tangent vector is (nearly) zero")
    t = t / tn
    n = frame.N - np.dot(frame.N, t) * t
    nn = float(np.linalg.norm(n))
    if nn < _COLLAPSE_TOL * max(1.0, float(np.linalg.norm(frame.N))):
        raise FrameCollapseError("normal vector is (nearly) parallel to the tangent")
    n = n / nn
    return FrenetFrame(t, n, np.cross(t, n))


def orthonormalize_rows(T: np.ndarray, N: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rowwise modified Gram-Schmidt for (n, 3) stacks; B = T x N."""
    tn = np.linalg.norm(T, axis=1, keepdims=True)
    if np.any(tn < _COLLAPSE_TOL):
        raise FrameCollapseError("tangent row is (nearly) zero")
    T = T / tn
    N = N - np.sum(N * T, axis=1, keepdims=True) * T
    nn = np.linalg.norm(N, axis=1, keepdims=True)
    if np.any(nn < _COLLAPSE_TOL):
        raise FrameCollapseError("normal row is (nearly) parallel to the tangent")
    N = N / nn
    return T, N, np.cross(T, N)
