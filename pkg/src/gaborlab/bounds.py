"""Frame/Riesz bound containers shared by the Gabor and oracle paths."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import rank_cutoff

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class FrameBounds:
    """Optimal bounds read off a spectrum.

    ``A`` is zero whenever the smallest spectral value falls under the
    relative rank cutoff; ``A_basic`` is then the smallest non-zero value,
    i.e. the lower bound of the family as a frame for its closed span.
    """

    A: float
    B: float
    A_basic: float
    is_frame: bool
    is_bessel_only: bool
    is_parseval: bool
    tolerance: float = DEFAULT_TOL

    @classmethod
    def from_spectrum(cls, values, tol: float = DEFAULT_TOL) -> "FrameBounds":
        values = np.asarray(values, dtype=float).ravel()
        if values.size == 0:
            return cls(0.0, 0.0, 0.0, False, True, False, tol)
        cut = rank_cutoff(values)
        lo = float(values.min())
        hi = max(float(values.max()), 0.0)
        A = lo if lo > cut else 0.0
        nonzero = values[values > cut]
        A_basic = float(nonzero.min()) if nonzero.size else 0.0
        is_frame = A > tol
        parseval = is_frame and abs(A - 1) <= tol and abs(hi - 1) <= tol
        return cls(A, hi, A_basic, is_frame, not is_frame, parseval, tol)

    @property
    def A_opt(self) -> float:
        return self.A

    @property
    def B_opt(self) -> float:
        return self.B

    @property
    def is_tight(self) -> bool:
        return self.is_frame and abs(self.A - self.B) <= self.tolerance * max(1.0, self.B)

    def pair(self) -> tuple[float, float]:
        return (self.A, self.B)


@dataclass(frozen=True)
class SpectralField:
    """Per-fiber spectra (descending) over fibers ``(x, omega)``.

    ``kind`` is ``"eigenvalue"`` for dual Gramians and ``"singular_value"``
    for Zibulski-Zeevi matrices; ``scale`` maps a singular value ``s`` to
    the bound scale ``scale * s**2`` (1 for eigenvalues).
    """

    fibers: np.ndarray
    values: np.ndarray
    kind: str = "eigenvalue"
    scale: float = 1.0

    @property
    def global_min(self) -> float:
        return float(self.bound_values()[:, -1].min()) if self.values.size else 0.0

    @property
    def global_max(self) -> float:
        return float(self.bound_values()[:, 0].max()) if self.values.size else 0.0

    def bound_values(self) -> np.ndarray:
        if self.kind == "singular_value":
            return self.scale * self.values ** 2
        return self.values
