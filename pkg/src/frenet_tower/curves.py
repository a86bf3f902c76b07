"""FramedCurve: a uniform arclength grid with positions, frames and curvatures."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .errors import InvalidArgumentError
from .geometry import DEFAULT_KAPPA_FLOOR, CurvatureSample, FrenetFrame, sigma_array


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class FramedCurve:
    """Immutable sampled curve: positions, frames, kappa/tau/sigma per sample.

    Samples where kappa falls below ``kappa_floor`` are flagged degenerate;
    sigma is stored as 0.0 there and must not be consumed (check the mask).
    """

    s: np.ndarray
    points: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tau: np.ndarray
    dkappa: np.ndarray
    dtau: np.ndarray
    sigma: np.ndarray
    degenerate: np.ndarray
    kappa_floor: float = DEFAULT_KAPPA_FLOOR
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def assemble(
        cls,
        s: np.ndarray,
        points: np.ndarray,
        T: np.ndarray,
        N: np.ndarray,
        B: np.ndarray,
        kappa: np.ndarray,
        tau: np.ndarray,
        kappa_floor: float = DEFAULT_KAPPA_FLOOR,
        dkappa: np.ndarray | None = None,
        dtau: np.ndarray | None = None,
        degenerate: np.ndarray | None = None,
        warnings: tuple[str, ...] = (),
    ) -> "FramedCurve":
        s = np.asarray(s, dtype=float)
        n = len(s)
        if n < 2:
            raise InvalidArgumentError("a curve needs at least two samples")
        h = float(s[1] - s[0])
        kappa = np.asarray(kappa, dtype=float)
        tau = np.asarray(tau, dtype=float)
        if dkappa is None:
            dkappa = numerics.differentiate(kappa, h, 1) if n >= numerics.STENCIL else np.gradient(kappa, h)
        if dtau is None:
            dtau = numerics.differentiate(tau, h, 1) if n >= numerics.STENCIL else np.gradient(tau, h)
        mask = kappa < kappa_floor
        if degenerate is not None:
            mask = mask | np.asarray(degenerate, dtype=bool)
        sigma = sigma_array(kappa, tau, np.asarray(dkappa, float), np.asarray(dtau, float), mask)
        for name, arr in (("s", s), ("points", points), ("T", T), ("N", N), ("B", B),
                          ("kappa", kappa), ("tau", tau)):
            if not np.all(np.isfinite(arr)):
                raise InvalidArgumentError(f"{name} contains non-finite values")
        frozen_mask = np.ascontiguousarray(mask, dtype=bool)
        frozen_mask.setflags(write=False)
        return cls(
            s=_frozen(s),
            points=_frozen(points),
            T=_frozen(T),
            N=_frozen(N),
            B=_frozen(B),
            kappa=_frozen(kappa),
            tau=_frozen(tau),
            dkappa=_frozen(dkappa),
            dtau=_frozen(dtau),
            sigma=_frozen(sigma),
            degenerate=frozen_mask,
            kappa_floor=float(kappa_floor),
            warnings=tuple(warnings),
        )

    # --- basic geometry ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.s)

    @property
    def h(self) -> float:
        return float(self.s[1] - self.s[0])

    @property
    def arc_interval(self) -> tuple[float, float]:
        return float(self.s[0]), float(self.s[-1])

    def frame_at(self, i: int) -> FrenetFrame:
        return FrenetFrame(self.T[i], self.N[i], self.B[i])

    def sample_at(self, i: int) -> CurvatureSample:
        return CurvatureSample(
            s=float(self.s[i]),
            kappa=float(self.kappa[i]),
            tau=float(self.tau[i]),
            dkappa=float(self.dkappa[i]),
            dtau=float(self.dtau[i]),
            kappa_floor=self.kappa_floor,
        )

    def valid_range(self) -> tuple[int, int] | None:
        """Inclusive index range after trimming degenerate samples from both ends."""
        ok = ~self.degenerate
        if not ok.any():
            return None
        idx = np.flatnonzero(ok)
        return int(idx[0]), int(idx[-1])

    def interior(self, fraction: float = 0.9) -> slice:
        """Middle ``fraction`` of the valid range (whole grid if all degenerate)."""
        rng = self.valid_range()
        lo, hi = rng if rng is not None else (0, len(self) - 1)
        return numerics.interior_slice(lo, hi, fraction)

    # --- invariants ---------------------------------------------------------

    def invariant_defects(self) -> dict[str, float]:
        """Worst-case invariant violations, for tests and self-checks."""
        d = np.diff(self.s)
        grid = float(np.abs(d - self.h).max() / abs(self.h)) if len(d) else 0.0
        ok = ~self.degenerate
        if ok.any():
            M = np.stack([self.T[ok], self.N[ok], self.B[ok]], axis=1)
            gram = np.abs(M @ np.transpose(M, (0, 2, 1)) - np.eye(3)).max()
            hand = np.abs(np.cross(self.T[ok], self.N[ok]) - self.B[ok]).max()
        else:
            gram = hand = 0.0
        chords = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        chord = float(np.abs(chords - self.h).max() / abs(self.h)) if len(chords) else 0.0
        return {
            "grid_uniformity": grid,
            "frame_gram": float(gram),
            "frame_handedness": float(hand),
            "chord_consistency": chord,
        }
