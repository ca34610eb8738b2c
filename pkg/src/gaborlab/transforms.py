"""Fourier, Zak, fiberization and short-time Fourier transforms.

Signals are complex vectors indexed by canonical element order.  A signal
on the dual group uses the same indexing (the dual is identified with the
tuple space of ``G``), so the same helpers serve both sides.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInputError
from .groups import (FiniteAbelianGroup, MeasureWeights, Subgroup, Transversal,
                     annihilator, transversal)


def as_signal(group: FiniteAbelianGroup, f, name: str = "signal") -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != (group.order,):
        raise InvalidInputError(f"{name} must have length {group.order}, got shape {f.shape}")
    if not np.all(np.isfinite(f)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return f


def _weights(group, weights):
    if weights is None:
        return Fraction(1), Fraction(1, group.order)
    if weights.group_factors and tuple(weights.group_factors) != group.factors:
        raise InvalidInputError("weights were derived for a different group")
    return weights.c_G, weights.c_Ghat


def translate(group: FiniteAbelianGroup, f, a) -> np.ndarray:
    """``(T_a f)(x) = f(x - a)``."""
    a = group.index(a)
    return np.asarray(f)[group.sub(np.arange(group.order), a)]


def modulate(group: FiniteAbelianGroup, f, omega) -> np.ndarray:
    """``(E_w f)(x) = w(x) f(x)``."""
    w = group.index(omega)
    return group.pairing([w], np.arange(group.order))[0] * np.asarray(f)


def tf_shift(group: FiniteAbelianGroup, f, x, omega) -> np.ndarray:
    """``E_omega T_x f``."""
    return modulate(group, translate(group, f, x), omega)


# ---------------------------------------------------------------------------
# Fourier transform


def fourier(group: FiniteAbelianGroup, f, weights: MeasureWeights | None = None) -> np.ndarray:
    """``f^(w) = c_G sum_x f(x) conj(w(x))``, computed with an n-dimensional FFT."""
    f = as_signal(group, f)
    c_G, _ = _weights(group, weights)
    out = np.fft.fftn(f.reshape(group.factors))
    return float(c_G) * out.reshape(-1)


def inverse_fourier(group: FiniteAbelianGroup, F, weights: MeasureWeights | None = None) -> np.ndarray:
    F = as_signal(group, F)
    _, c_Ghat = _weights(group, weights)
    out = np.fft.ifftn(F.reshape(group.factors)) * group.order
    return float(c_Ghat) * out.reshape(-1)


def fourier_naive(group: FiniteAbelianGroup, f, weights: MeasureWeights | None = None) -> np.ndarray:
    """Reference O(|G|^2) transform built from the character table."""
    f = as_signal(group, f)
    c_G, _ = _weights(group, weights)
    idx = np.arange(group.order)
    return float(c_G) * (np.conj(group.pairing(idx, idx)) @ f)


# ---------------------------------------------------------------------------
# Zak transform


@dataclass(frozen=True)
class ZakArray:
    """``values[i, j] = Z_H f(rows.reps[i], cols.reps[j])``.

    Columns enumerate the characters of ``H`` through a transversal of
    ``H``-perp in the dual; ``H`` carries counting measure.
    """

    subgroup: Subgroup
    rows: Transversal
    cols: Transversal
    values: np.ndarray

    def norm_squared(self) -> float:
        # counting on the transversal times the measure on H^ dual to counting on H
        return float(np.sum(np.abs(self.values) ** 2)) / self.subgroup.order


def zak_at(H: Subgroup, f, points, chars) -> np.ndarray:
    """``Z_H f(y, w) = sum_h f(y + h) conj(w(h))`` at arbitrary ``y`` and ``w``."""
    G = H.parent
    f = np.asarray(f, dtype=complex)
    points = np.atleast_1d(np.asarray(points, dtype=np.int64))
    chars = np.atleast_1d(np.asarray(chars, dtype=np.int64))
    shifted = f[G.add(points[:, None], H.array[None, :])]
    return shifted @ np.conj(G.pairing(chars, H.array)).T


def zak(H: Subgroup, f) -> ZakArray:
    G = H.parent
    f = as_signal(G, f)
    rows = transversal(G, H)
    cols = transversal(G, annihilator(G, H))
    return ZakArray(H, rows, cols, zak_at(H, f, rows.array, cols.array))


def inverse_zak(za: ZakArray) -> np.ndarray:
    """Recover ``f`` from its Zak array: ``f(x + h) = |H|^-1 sum_w Z(x, w) w(h)``."""
    H = za.subgroup
    G = H.parent
    if za.values.shape != (len(za.rows), len(za.cols)):
        raise InvalidInputError("Zak array has the wrong shape")
    P = G.pairing(za.cols.array, H.array)  # (chars, h)
    block = za.values @ P / H.order  # (reps, h)
    f = np.zeros(G.order, dtype=complex)
    positions = G.add(za.rows.array[:, None], H.array[None, :])
    f[positions] = block
    return f


# ---------------------------------------------------------------------------
# fiberization


@dataclass(frozen=True)
class FiberArray:
    """``values[i, j] = f^(omegas.reps[i] + perp[j])`` for ``H``-perp fibers."""

    subgroup: Subgroup
    omegas: Transversal
    perp: Subgroup
    values: np.ndarray

    def norm_squared(self, weights: MeasureWeights | None = None) -> float:
        c_Ghat = Fraction(1, self.subgroup.parent.order) if weights is None else weights.c_Ghat
        return float(c_Ghat) * float(np.sum(np.abs(self.values) ** 2))


def fiberize(H: Subgroup, f, weights: MeasureWeights | None = None) -> FiberArray:
    G = H.parent
    if H.in_dual:
        raise InvalidInputError("fiberize expects a translation subgroup of G")
    fhat = fourier(G, f, weights)
    perp = annihilator(G, H)
    omegas = transversal(G, perp)
    idx = G.add(omegas.array[:, None], perp.array[None, :])
    return FiberArray(H, omegas, perp, fhat[idx])


# ---------------------------------------------------------------------------
# short-time Fourier transform


def stft(group: FiniteAbelianGroup, g0, f, weights: MeasureWeights | None = None) -> np.ndarray:
    """``V[x, w] = c_G sum_t f(t) conj(w(t)) conj(g0(t - x))``."""
    g0 = as_signal(group, g0, "window")
    f = as_signal(group, f)
    if not np.any(g0):
        raise InvalidInputError("window must be non-zero")
    c_G, _ = _weights(group, weights)
    idx = np.arange(group.order)
    prod = f[None, :] * np.conj(g0[group.sub(idx[None, :], idx[:, None])])
    out = np.fft.fftn(prod.reshape((group.order,) + group.factors), axes=tuple(range(1, group.rank + 1)))
    return float(c_G) * out.reshape(group.order, group.order)
