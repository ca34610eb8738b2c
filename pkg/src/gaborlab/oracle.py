"""Brute-force reference path.

Everything here is built from group arithmetic alone: every time-frequency
atom is assembled by explicit loops, frame operators and Gram matrices are
formed densely.  Nothing from the Zak, fiber or Walnut/Janssen machinery is
used, so agreement with those paths is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import DEFAULT_TOL, FrameBounds
from .groups import MeasureWeights, Subgroup, annihilator
from .numerics import hermitian_eigenvalues

ROUTINE_CAP = 512


def _atom(G, g, x, omega) -> np.ndarray:
    """``E_omega T_x g`` straight from the definition."""
    t = np.arange(G.order)
    return G.pairing([omega], t)[0] * g[G.sub(t, x)]


def atoms(g, Lam: Subgroup, Gam: Subgroup) -> np.ndarray:
    """Rows ``E_gamma T_lambda g`` for lambda in Lam, gamma in Gam (lambda-major)."""
    G = Lam.parent
    g = np.asarray(g, dtype=complex)
    rows = []
    shifts = [G.sub(np.arange(G.order), lam) for lam in Lam.elements]
    chars = G.pairing(Gam.array, np.arange(G.order))
    for s in shifts:
        for c in chars:
            rows.append(c * g[s])
    return np.array(rows).reshape(Lam.order * Gam.order, G.order)


def oracle_frame_matrix(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> np.ndarray:
    """Dense ``S_{g,h}``: ``S[x, y] = c_L c_G sum <e_y, E T g> (E T h)(x)``."""
    c = float(weights.c_Lambda * weights.c_Gamma * weights.c_G)
    Ag = atoms(g, Lam, Gam)
    Ah = atoms(h, Lam, Gam)
    return c * (Ah.T @ np.conj(Ag))


def oracle_frame_bounds(g, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights,
                        tol: float = DEFAULT_TOL) -> FrameBounds:
    S = oracle_frame_matrix(g, g, Lam, Gam, weights)
    S = (S + S.conj().T) / 2
    return FrameBounds.from_spectrum(hermitian_eigenvalues(S), tol)


def oracle_adjoint_family(g, Lam: Subgroup, Gam: Subgroup) -> np.ndarray:
    """Rows ``E_beta T_alpha g`` for alpha in Gam-perp, beta in Lam-perp."""
    G = Lam.parent
    g = np.asarray(g, dtype=complex)
    alphas = annihilator(G, Gam)
    betas = annihilator(G, Lam)
    return np.array([_atom(G, g, a, b) for a in alphas.elements for b in betas.elements])


def oracle_gram(family) -> np.ndarray:
    family = np.asarray(family)
    n = len(family)
    gram = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = np.vdot(family[i], family[j])
    return gram


def oracle_riesz_bounds(family, tol: float = DEFAULT_TOL) -> FrameBounds:
    """Extreme eigenvalues of the Gram matrix of ``family`` (rows)."""
    gram = oracle_gram(family)
    return FrameBounds.from_spectrum(hermitian_eigenvalues((gram + gram.conj().T) / 2), tol)


def oracle_dual_residual(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> float:
    """max_ij |<e_i, e_j> - c sum_k <e_i, h_k><g_k, e_j>| over the standard basis."""
    c = float(weights.c_Lambda * weights.c_Gamma * weights.c_G)
    Ag = atoms(g, Lam, Gam)
    Ah = atoms(h, Lam, Gam)
    M = c * (np.conj(Ah).T @ Ag)
    return float(np.abs(np.eye(M.shape[0]) - M).max())


@dataclass(frozen=True)
class OracleReport:
    frame: FrameBounds
    riesz: FrameBounds
    bessel_bound: float
    dual_residual: float | None


def oracle_report(g, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights, h=None,
                  tol: float = DEFAULT_TOL) -> OracleReport:
    frame = oracle_frame_bounds(g, Lam, Gam, weights, tol)
    riesz = oracle_riesz_bounds(oracle_adjoint_family(g, Lam, Gam), tol)
    residual = None if h is None else oracle_dual_residual(g, h, Lam, Gam, weights)
    return OracleReport(frame, riesz, frame.B, residual)
