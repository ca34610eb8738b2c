"""Gabor systems on finite abelian groups.

A Gabor system ``{E_gamma T_lambda g}`` is indexed by a translation
subgroup ``Lambda`` of ``G`` and a modulation subgroup ``Gamma`` of the dual,
both carrying the Haar weights from :func:`gaborlab.groups.derive_weights`.
Its adjoint system ``{E_beta T_alpha g}`` runs over ``Gamma-perp x
Lambda-perp`` with counting measure.

The module offers several independent routes to the same objects:

* frame operator: direct synthesis of analysis coefficients, Walnut
  (multiplication by ``s_alpha`` after translation) and Janssen (weighted
  sum of adjoint time-frequency shifts);
* frame bounds: dual Gramian eigenvalues over the vector-valued Zak
  transform, Zibulski-Zeevi singular values, the frequency-side Zak of
  ``g^``, and Riesz bounds of the adjoint system.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from . import oracle
from .bounds import DEFAULT_TOL, FrameBounds, SpectralField
from .errors import ConstructionFailedError, InvalidInputError, SingularOperatorError
from .groups import (FiniteAbelianGroup, MeasureWeights, Subgroup, annihilator,
                     derive_weights, intersect, transversal)
from .numerics import (hermitian_eigenvalues, operator_norm, rank_cutoff,
                       singular_values, solve_hpd)
from .transforms import as_signal, fourier, zak, zak_at


@dataclass(frozen=True)
class GaborSystem:
    window: np.ndarray = field(repr=False)
    lattice: Subgroup
    modulations: Subgroup
    weights: MeasureWeights = field(repr=False)

    @property
    def group(self) -> FiniteAbelianGroup:
        return self.lattice.parent

    @cached_property
    def lattice_perp(self) -> Subgroup:
        return annihilator(self.group, self.lattice)

    @cached_property
    def modulations_perp(self) -> Subgroup:
        return annihilator(self.group, self.modulations)

    def with_window(self, h) -> "GaborSystem":
        return replace(self, window=as_signal(self.group, h, "window"))

    @property
    def is_critical(self) -> bool:
        return self.lattice.elements == self.modulations_perp.elements


def gabor_system(g, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights | None = None) -> GaborSystem:
    G = Lam.parent
    if Lam.in_dual:
        raise InvalidInputError("translation subgroup must live in G")
    if not Gam.in_dual or Gam.parent != G:
        raise InvalidInputError("modulation subgroup must live in the dual of G")
    if weights is None:
        weights = derive_weights(G, Lam, Gam)
    return GaborSystem(as_signal(G, g, "window"), Lam, Gam, weights)


def _check_same_lattices(a: GaborSystem, b: GaborSystem):
    if not (a.lattice.same_set(b.lattice) and a.modulations.same_set(b.modulations)):
        raise InvalidInputError("Gabor systems use different subgroups")


def _time_shift_table(G: FiniteAbelianGroup, shifts) -> np.ndarray:
    """``table[i, x] = x - shifts[i]``."""
    return G.sub(np.arange(G.order)[None, :], np.asarray(shifts)[:, None])


# ---------------------------------------------------------------------------
# analysis / synthesis


def coefficients(sys: GaborSystem, f) -> np.ndarray:
    """``C[lambda, gamma] = <f, E_gamma T_lambda g>`` (c_G-weighted)."""
    G = sys.group
    f = as_signal(G, f)
    g = sys.window
    prods = f[None, :] * np.conj(g[_time_shift_table(G, sys.lattice.array)])
    spectra = np.fft.fftn(prods.reshape((-1,) + G.factors), axes=tuple(range(1, G.rank + 1)))
    return float(sys.weights.c_G) * spectra.reshape(len(prods), -1)[:, sys.modulations.array]


def frame_operator_apply(sys_g: GaborSystem, sys_h: GaborSystem, f) -> np.ndarray:
    """``S_{g,h} f = c_L c_G sum <f, E T g> E T h``; ``f`` may be (N,) or (N, m)."""
    _check_same_lattices(sys_g, sys_h)
    G = sys_g.group
    F = np.asarray(f, dtype=complex)
    single = F.ndim == 1
    if single:
        F = F[:, None]
    if F.shape[0] != G.order:
        raise InvalidInputError(f"signal must have length {G.order}")
    w = sys_g.weights
    shifts = _time_shift_table(G, sys_g.lattice.array)  # (L, N)
    chars = G.pairing(sys_g.modulations.array, np.arange(G.order))  # (M, N)
    gl = sys_g.window[shifts]  # g(x - lambda)
    hl = sys_h.window[shifts]
    # coef[l, m, k] = sum_x F[x, k] conj(chars[m, x] g(x - l))
    coef = np.einsum("xk,mx,lx->lmk", F, np.conj(chars), np.conj(gl)) * float(w.c_G)
    # synthesis: sum_{l, m} coef * chars[m, x] h(x - l)
    out = np.einsum("lmk,mx,lx->xk", coef, chars, hl) * float(w.c_Lambda * w.c_Gamma)
    return out[:, 0] if single else out


def frame_operator_matrix(sys_g: GaborSystem, sys_h: GaborSystem | None = None) -> np.ndarray:
    """Dense mixed frame operator via the direct synthesis route."""
    sys_h = sys_g if sys_h is None else sys_h
    return frame_operator_apply(sys_g, sys_h, np.eye(sys_g.group.order, dtype=complex))


def tf_shift_matrix(G: FiniteAbelianGroup, x, omega) -> np.ndarray:
    """Matrix of ``E_omega T_x``: entry ``[t, t - x] = omega(t)``."""
    x = G.index(x)
    omega = G.index(omega)
    t = np.arange(G.order)
    M = np.zeros((G.order, G.order), dtype=complex)
    M[t, G.sub(t, x)] = G.pairing([omega], t)[0]
    return M


def commutation_residual(sys: GaborSystem, lam, gamma, strict: bool = True) -> float:
    """max over basis vectors e_y of ``||S E T e_y - E T S e_y||``.

    With ``strict=False`` shifts outside ``Lambda x Gamma`` are accepted,
    which is how the lemma's hypothesis can be probed negatively.
    """
    G = sys.group
    if strict and (lam not in sys.lattice or gamma not in sys.modulations):
        raise InvalidInputError("time-frequency shift is not in Lambda x Gamma")
    S = frame_operator_matrix(sys)
    U = tf_shift_matrix(G, lam, gamma)
    D = S @ U - U @ S
    return float(np.linalg.norm(D, axis=0).max())


# ---------------------------------------------------------------------------
# Walnut, Janssen, FIGA


def s_alpha(g, h, Lam: Subgroup, weights: MeasureWeights, alpha, Gam: Subgroup | None = None) -> np.ndarray:
    """``s_alpha(x) = c_L sum_lambda conj(g(x - lambda - alpha)) h(x - lambda)``."""
    G = Lam.parent
    a = G.index(alpha)
    if Gam is not None and a not in annihilator(G, Gam):
        raise InvalidInputError("alpha must lie in Gamma-perp")
    g = as_signal(G, g, "g")
    h = as_signal(G, h, "h")
    shifts = _time_shift_table(G, Lam.array)
    shifted_a = G.sub(shifts, a)
    return float(weights.c_Lambda) * np.sum(np.conj(g[shifted_a]) * h[shifts], axis=0)


def t_beta(g, h, Gam: Subgroup, weights: MeasureWeights, beta, Lam: Subgroup | None = None) -> np.ndarray:
    """``t_beta(w) = c_G sum_gamma conj(g^(w - gamma - beta)) h^(w - gamma)`` on the dual."""
    G = Gam.parent
    b = G.index(beta)
    if Lam is not None and b not in annihilator(G, Lam):
        raise InvalidInputError("beta must lie in Lambda-perp")
    gh = fourier(G, g, weights)
    hh = fourier(G, h, weights)
    shifts = _time_shift_table(G, Gam.array)
    return float(weights.c_Gamma) * np.sum(np.conj(gh[G.sub(shifts, b)]) * hh[shifts], axis=0)


def adjoint_coefficients(g, h, Lam: Subgroup, Gam: Subgroup) -> np.ndarray:
    """``c[alpha, beta] = <h, E_beta T_alpha g>`` over Gam-perp x Lam-perp."""
    G = Lam.parent
    g = as_signal(G, g, "g")
    h = as_signal(G, h, "h")
    alphas = annihilator(G, Gam).array
    betas = annihilator(G, Lam).array
    prods = h[None, :] * np.conj(g[_time_shift_table(G, alphas)])  # (A, N)
    return prods @ np.conj(G.pairing(betas, np.arange(G.order))).T


def s_alpha_fourier_coefficients(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> np.ndarray:
    """Fourier coefficients of each ``s_alpha`` as a function on G/Lambda.

    ``c[alpha, beta] = w_{G/L} sum_{x in X} s_alpha(x) conj(beta(x))``.
    """
    G = Lam.parent
    X = transversal(G, Lam).array
    betas = annihilator(G, Lam).array
    rows = [s_alpha(g, h, Lam, weights, a)[X] for a in annihilator(G, Gam).elements]
    chars = np.conj(G.pairing(betas, X))
    return float(weights.w_G_mod_Lambda) * (np.array(rows) @ chars.T)


def walnut_apply(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights, f) -> np.ndarray:
    """``sum_{alpha in Gam-perp} s_alpha . T_alpha f``."""
    G = Lam.parent
    F = np.asarray(f, dtype=complex)
    out = np.zeros_like(F)
    t = np.arange(G.order)
    for a in annihilator(G, Gam).elements:
        s = s_alpha(g, h, Lam, weights, a)
        shifted = F[G.sub(t, a)]
        out += s[:, None] * shifted if F.ndim == 2 else s * shifted
    return out


def walnut_matrix(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> np.ndarray:
    G = Lam.parent
    M = np.zeros((G.order, G.order), dtype=complex)
    t = np.arange(G.order)
    for a in annihilator(G, Gam).elements:
        M[t, G.sub(t, a)] += s_alpha(g, h, Lam, weights, a)
    return M


def janssen_operator(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights | None = None):
    """Janssen matrix ``sum <h, E_b T_a g> E_b T_a`` and the condition-A sum."""
    G = Lam.parent
    coef = adjoint_coefficients(g, h, Lam, Gam)
    alphas = annihilator(G, Gam).elements
    betas = annihilator(G, Lam).array
    t = np.arange(G.order)
    chars = G.pairing(betas, t)
    M = np.zeros((G.order, G.order), dtype=complex)
    for i, a in enumerate(alphas):
        # column t - a of row t gets sum_beta coef * beta(t)
        M[t, G.sub(t, a)] += coef[i] @ chars
    return M, float(np.abs(coef).sum())


def figa_residual(f1, f2, g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> float:
    """|<S_{g,h} f1, f2> - sum <h, E_b T_a g><E_b T_a f1, f2>|."""
    G = Lam.parent
    f1 = as_signal(G, f1, "f1")
    f2 = as_signal(G, f2, "f2")
    sys_g = gabor_system(g, Lam, Gam, weights)
    lhs = np.vdot(f2, frame_operator_apply(sys_g, sys_g.with_window(h), f1))
    coef = adjoint_coefficients(g, h, Lam, Gam)
    adj = adjoint_coefficients(f1, f2, Lam, Gam)  # <f2, E_b T_a f1>
    rhs = np.sum(coef * np.conj(adj))
    return float(abs(lhs - rhs))


def wexler_raz_residual(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights | None = None) -> float:
    """max over the adjoint index set of |<h, E_b T_a g> - delta|."""
    coef = adjoint_coefficients(g, h, Lam, Gam)
    target = np.zeros_like(coef)
    target[0, 0] = 1.0  # alpha = 0 and beta = 0 come first
    return float(np.abs(coef - target).max())


# ---------------------------------------------------------------------------
# duals


def canonical_dual(sys: GaborSystem, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``h = S^-1 g`` via a Cholesky solve."""
    fb = oracle.oracle_frame_bounds(sys.window, sys.lattice, sys.modulations, sys.weights, tol)
    if not fb.is_frame:
        raise SingularOperatorError(
            f"not a frame: optimal lower bound {fb.A:.3e}", lambda_min=fb.A)
    S = frame_operator_matrix(sys)
    S = (S + S.conj().T) / 2
    return solve_hpd(S, sys.window)


@dataclass(frozen=True)
class DualPairResiduals:
    weak: float
    s_side: float
    t_side: float

    def verdict(self, tol: float = DEFAULT_TOL) -> bool:
        return max(self.weak, self.s_side, self.t_side) <= tol

    def sides_agree(self, tol: float = DEFAULT_TOL) -> bool:
        return (self.s_side <= tol) == (self.t_side <= tol)


def verify_dual_pair(g, h, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> DualPairResiduals:
    G = Lam.parent
    sys_g = gabor_system(g, Lam, Gam, weights)
    sys_h = sys_g.with_window(h)
    # <f, f'> = int <f, h_k><g_k, f'>  <=>  S_{h,g} = I
    weak = float(np.abs(frame_operator_matrix(sys_h, sys_g) - np.eye(G.order)).max())
    s_side = 0.0
    for a in sys_g.modulations_perp.elements:
        target = 1.0 if a == 0 else 0.0
        s_side = max(s_side, float(np.abs(s_alpha(g, h, Lam, weights, a) - target).max()))
    t_side = 0.0
    for b in sys_g.lattice_perp.elements:
        target = 1.0 if b == 0 else 0.0
        t_side = max(t_side, float(np.abs(t_beta(g, h, Gam, weights, b) - target).max()))
    return DualPairResiduals(weak, s_side, t_side)


# ---------------------------------------------------------------------------
# Zak-domain characterizations


@dataclass(frozen=True)
class ZakFibers:
    """Vector-valued Zak data ``Phi[x, w, i, j] = Z_H f(x + kappa_i, w + chi_j)``."""

    phi: np.ndarray
    points: np.ndarray
    chars: np.ndarray
    kappas: np.ndarray
    chis: np.ndarray
    weight: float

    @property
    def p(self) -> int:
        return len(self.chis)

    @property
    def q(self) -> int:
        return len(self.kappas)

    def fiber_index(self) -> np.ndarray:
        xs, ws = np.meshgrid(self.points, self.chars, indexing="ij")
        return np.stack([xs.ravel(), ws.ravel()], axis=1)


def _reps_inside(tv, sub: Subgroup) -> np.ndarray:
    # a coset of a subgroup of ``sub`` lies inside ``sub`` iff its smallest member does
    return np.array([r for r in tv.reps if sub.mask[r]], dtype=np.int64)


def vector_zak_fibers(f, T: Subgroup, H: Subgroup, weight) -> ZakFibers:
    """Fiber data for translations along ``T`` and a Zak transform along ``H``.

    ``H`` carries counting measure; ``weight`` is the measure of a single
    point of the transversal ``K`` of ``T cap H`` in ``T``.
    """
    A = T.parent
    f = np.asarray(f, dtype=complex)
    I = intersect(T, H)
    Hperp = annihilator(A, H)
    Iperp = annihilator(A, I)
    X = transversal(A, H)
    char_tv = transversal(A, Hperp)
    kappas = _reps_inside(transversal(A, I), T)
    chis = _reps_inside(char_tv, Iperp)
    zfull = zak_at(H, f, np.arange(A.order), char_tv.array)  # (N, |H|)
    rows = A.add(X.array[:, None], kappas[None, :])  # (nX, q)
    cols = char_tv.coset_index[A.add(char_tv.array[:, None], chis[None, :])]  # (nW, p)
    phi = zfull[rows[:, None, :, None], cols[None, :, None, :]]
    return ZakFibers(phi, X.array, char_tv.array, kappas, chis, float(weight))


def _dual_gramians(zf: ZakFibers) -> np.ndarray:
    return zf.weight * np.einsum("xwij,xwik->xwjk", zf.phi, np.conj(zf.phi))


def _eigen_field(zf: ZakFibers) -> SpectralField:
    grams = _dual_gramians(zf)
    p = zf.p
    eig = hermitian_eigenvalues(grams.reshape(-1, p, p))
    return SpectralField(zf.fiber_index(), eig, "eigenvalue")


def time_zak_fibers(sys: GaborSystem) -> ZakFibers:
    return vector_zak_fibers(sys.window, sys.lattice, sys.modulations_perp, sys.weights.w_K)


def frequency_zak_fibers(sys: GaborSystem) -> ZakFibers:
    ghat = fourier(sys.group, sys.window, sys.weights)
    return vector_zak_fibers(ghat, sys.modulations, sys.lattice_perp, sys.weights.w_K_freq)


def dual_gramian_bounds(sys: GaborSystem, tol: float = DEFAULT_TOL) -> tuple[SpectralField, FrameBounds]:
    field_ = _eigen_field(time_zak_fibers(sys))
    return field_, FrameBounds.from_spectrum(field_.values, tol)


def zz_bounds(sys: GaborSystem, tol: float = DEFAULT_TOL) -> tuple[SpectralField, FrameBounds]:
    """Bounds from the singular values of the q x p Zibulski-Zeevi matrices."""
    zf = time_zak_fibers(sys)
    q, p = zf.q, zf.p
    sv = singular_values(zf.phi.reshape(-1, q, p))
    if q < p:
        sv = np.concatenate([sv, np.zeros((len(sv), p - q))], axis=1)
    field_ = SpectralField(zf.fiber_index(), sv, "singular_value", zf.weight)
    return field_, FrameBounds.from_spectrum(field_.bound_values(), tol)


def zz_gramian_mismatch(sys: GaborSystem) -> float:
    """max over fibers of |eig(dual Gramian) - scale * sigma^2|."""
    eig_field, _ = dual_gramian_bounds(sys)
    sv_field, _ = zz_bounds(sys)
    return float(np.abs(eig_field.values - sv_field.bound_values()).max())


def frequency_side_bounds(sys: GaborSystem, tol: float = DEFAULT_TOL) -> FrameBounds:
    return FrameBounds.from_spectrum(_eigen_field(frequency_zak_fibers(sys)).values, tol)


def zibulski_zeevi_dimensions(Lam: Subgroup, Gam: Subgroup) -> tuple[int, int]:
    """``p = |Gam-perp / (Lam cap Gam-perp)|`` and ``q = |Lam / (Lam cap Gam-perp)|``."""
    gp = annihilator(Lam.parent, Gam)
    inter = intersect(Lam, gp).order
    return gp.order // inter, Lam.order // inter


def psi_vectors(sys: GaborSystem) -> ZakFibers:
    """The less symmetric alternative to the vector Zak transform.

    ``psi[x, w, i, j] = sum_{a in L cap Gam-perp} g(x + a + kappa_i + l_j) conj(w(a))``
    with ``l_j`` coset representatives of ``Gam-perp / (L cap Gam-perp)``.
    Fibers share the indexing of :func:`time_zak_fibers`; the weight is
    ``c_Lambda`` (no ``1/p`` factor).
    """
    G = sys.group
    zf = time_zak_fibers(sys)
    I = intersect(sys.lattice, sys.modulations_perp)
    ells = _reps_inside(transversal(G, I), sys.modulations_perp)
    offsets = G.add(zf.kappas[:, None], ells[None, :])  # (q, p)
    pts = G.add(zf.points[:, None, None], offsets[None, :, :])  # (nX, q, p)
    vals = zak_at(I, sys.window, pts.ravel(), zf.chars).reshape(pts.shape + (len(zf.chars),))
    psi = np.moveaxis(vals, 3, 1)  # (nX, nW, q, p)
    return ZakFibers(psi, zf.points, zf.chars, zf.kappas, ells, float(sys.weights.c_Lambda))


def psi_unitaries(sys: GaborSystem) -> np.ndarray:
    """Per-character unitary ``U(w)`` with ``Z-vector / sqrt(p) = U(w) psi``."""
    G = sys.group
    zf = time_zak_fibers(sys)
    ells = psi_vectors(sys).chis
    p = len(ells)
    table = G.pairing(zf.chis, ells)  # chi_i(l_j)
    phases = np.conj(G.pairing(zf.chars, ells))  # conj(w(l_j))
    return np.conj(table)[None, :, :] * phases[:, None, :] / np.sqrt(p)


# ---------------------------------------------------------------------------
# critical density


@dataclass(frozen=True)
class CriticalDensityReport:
    zak_min: float
    zak_max: float
    zero_fibers: int
    total_fibers: int
    is_frame: bool
    is_riesz_basis: bool
    frame_bounds: FrameBounds
    riesz_bounds: FrameBounds

    @property
    def consistent(self) -> bool:
        if self.is_frame != self.is_riesz_basis:
            return False
        if not self.is_frame:
            return True
        tol = self.frame_bounds.tolerance
        fb, rb = self.frame_bounds, self.riesz_bounds
        return (abs(fb.A - rb.A) <= tol * max(1.0, fb.A)
                and abs(fb.B - rb.B) <= tol * max(1.0, fb.B))


def critical_density_check(sys: GaborSystem, tol: float = DEFAULT_TOL) -> CriticalDensityReport:
    if not sys.is_critical:
        raise InvalidInputError("critical density needs Lambda equal to Gamma-perp")
    za = zak(sys.lattice, sys.window)
    vals = float(sys.weights.c_Lambda) * np.abs(za.values) ** 2
    cut = max(rank_cutoff(vals), np.finfo(float).tiny)
    nonzero = vals[vals > cut]
    zero = int(vals.size - nonzero.size)
    zmin = float(nonzero.min()) if nonzero.size else 0.0
    zmax = float(vals.max()) if vals.size else 0.0
    frame = FrameBounds.from_spectrum(vals.ravel(), tol)
    adj = riesz_bounds(adjoint_system(sys), tol)
    basis = adj.bounds.is_frame and len(adj.family_shape) and adj.family_shape[1] == sys.group.order
    return CriticalDensityReport(zmin, zmax, zero, int(vals.size), frame.is_frame, bool(basis),
                                 frame, adj.bounds)


# ---------------------------------------------------------------------------
# adjoint systems and Riesz bounds


@dataclass(frozen=True)
class AdjointSystem:
    window: np.ndarray = field(repr=False)
    alphas: Subgroup  # Gamma-perp in G
    betas: Subgroup  # Lambda-perp in the dual

    @property
    def size(self) -> int:
        return self.alphas.order * self.betas.order

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.alphas.elements for b in self.betas.elements]

    def vectors(self) -> np.ndarray:
        """Columns ``E_beta T_alpha g``, alpha-major."""
        G = self.alphas.parent
        t = np.arange(G.order)
        shifted = self.window[_time_shift_table(G, self.alphas.array)]  # (A, N)
        chars = G.pairing(self.betas.array, t)  # (B, N)
        return (shifted[:, None, :] * chars[None, :, :]).reshape(-1, G.order).T


def adjoint_system(sys: GaborSystem) -> AdjointSystem:
    return AdjointSystem(sys.window, sys.modulations_perp, sys.lattice_perp)


def adjoint_commutation_defect(sys: GaborSystem, samples: int | None = None, seed: int = 0) -> float:
    """max of ``||(E_g T_l E_b T_a - E_b T_a E_g T_l) f||`` over sampled pairs."""
    G = sys.group
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(G.order) + 1j * rng.standard_normal(G.order)
    prim = [(l, m) for l in sys.lattice.elements for m in sys.modulations.elements]
    adj = adjoint_system(sys).index_pairs()
    pairs = [(u, v) for u in prim for v in adj]
    if samples is not None and samples < len(pairs):
        pick = rng.choice(len(pairs), size=samples, replace=False)
        pairs = [pairs[i] for i in pick]
    worst = 0.0
    for (l, m), (a, b) in pairs:
        U = tf_shift_matrix(G, l, m)
        V = tf_shift_matrix(G, a, b)
        worst = max(worst, float(np.linalg.norm((U @ V - V @ U) @ f)))
    return worst


@dataclass(frozen=True)
class RieszReport:
    bounds: FrameBounds
    biorthogonal: bool
    biorthogonal_residual: float
    biorthogonal_bessel: float
    family_shape: tuple[int, ...]

    @property
    def lower_from_biorthogonal(self) -> float:
        return 1.0 / self.biorthogonal_bessel if self.biorthogonal_bessel > 0 else 0.0


def riesz_bounds(adj: AdjointSystem, tol: float = DEFAULT_TOL) -> RieszReport:
    """Riesz bounds from the Gram matrix, cross-checked through the biorthogonal family."""
    V = adj.vectors()
    gram = np.conj(V.T) @ V
    gram = (gram + gram.conj().T) / 2
    bounds = FrameBounds.from_spectrum(hermitian_eigenvalues(gram), tol)
    if bounds.A == 0.0:
        return RieszReport(bounds, False, float("inf"), float("inf"), V.shape)
    # biorthogonal family W = V gram^-1; its Bessel bound is lambda_max(gram^-1)
    W = np.linalg.solve(gram, np.conj(V.T)).conj().T
    residual = float(np.abs(np.conj(W.T) @ V - np.eye(V.shape[1])).max())
    wgram = np.conj(W.T) @ W
    bessel_w = float(hermitian_eigenvalues((wgram + wgram.conj().T) / 2)[0])
    return RieszReport(bounds, residual <= max(tol, 1e-10), residual, bessel_w, V.shape)


# ---------------------------------------------------------------------------
# Calderon, Bessel estimate, Gamma energy identity


@dataclass(frozen=True)
class CalderonBounds:
    time: tuple[float, float]
    frequency: tuple[float, float]


def calderon_bounds(sys: GaborSystem) -> CalderonBounds:
    G = sys.group
    w = sys.weights
    g = sys.window
    t = np.arange(G.order)
    time = float(w.c_Lambda) * np.sum(np.abs(g[G.add(t[:, None], sys.lattice.array[None, :])]) ** 2, axis=1)
    gh = fourier(G, g, w)
    freq = float(w.c_Gamma) * np.sum(np.abs(gh[G.add(t[:, None], sys.modulations.array[None, :])]) ** 2, axis=1)
    return CalderonBounds((float(time.min()), float(time.max())), (float(freq.min()), float(freq.max())))


def bessel_estimate(g, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights) -> float:
    """max over x, a' of ``c_L sum_l |g(x - l - a')| sum_a |g(x - l - a)|``."""
    G = Lam.parent
    absg = np.abs(as_signal(G, g))
    alphas = annihilator(G, Gam).array
    t = np.arange(G.order)
    base = G.sub(t[:, None], Lam.array[None, :])  # x - l, (N, L)
    inner = absg[G.sub(base[:, :, None], alphas[None, None, :])].sum(axis=2)  # (N, L)
    outer = absg[G.sub(base[:, :, None], alphas[None, None, :])]  # (N, L, A')
    return float(weights.c_Lambda) * float(np.einsum("nla,nl->na", outer, inner).max())


def gamma_energy_identity_residual(g, Lam: Subgroup, Gam: Subgroup, weights: MeasureWeights, f) -> float:
    """max over lambda of |c_G sum_gamma |<f, E T g>|^2 - sum_x sum_a (...)|."""
    G = Lam.parent
    f = as_signal(G, f)
    g = as_signal(G, g, "g")
    sys = gabor_system(g, Lam, Gam, weights)
    C = coefficients(sys, f)
    lhs = float(weights.c_Gamma) * np.sum(np.abs(C) ** 2, axis=1)
    t = np.arange(G.order)
    alphas = sys.modulations_perp.array
    worst = 0.0
    for i, lam in enumerate(Lam.elements):
        Tg = g[G.sub(t, lam)]
        back = G.sub(t[:, None], alphas[None, :])  # x - a
        rhs = np.sum(f[:, None] * np.conj(f[back]) * np.conj(Tg)[:, None] * Tg[back]) * float(weights.c_G)
        worst = max(worst, abs(lhs[i] - rhs))
    return float(worst)


# ---------------------------------------------------------------------------
# weighted B-spline Parseval windows


def build_parseval_bspline(G: FiniteAbelianGroup, Lam: Subgroup, order: int, factors=None) -> np.ndarray:
    """Parseval window for ``Gamma = G^`` from an r-fold weighted B-spline.

    ``W = g_1 1_X * ... * g_r 1_X`` with ``X`` the transversal of ``Lam``;
    ``factors`` are positive functions on ``X`` (length ``|X|`` in
    transversal order, or full signals on ``G``), all ones by default.
    The periodization is constant as soon as one factor is constant on
    ``X``; otherwise it usually is not, and ConstructionFailedError is raised.
    Returns ``sqrt(W / (C |X|))`` where ``sum_l W(x - l) = C``.
    """
    if Lam.in_dual or Lam.parent != G:
        raise InvalidInputError("Lambda must be a subgroup of G")
    if order < 1:
        raise InvalidInputError("B-spline order must be at least 1")
    if Lam.order == G.order:
        raise InvalidInputError("B-spline windows need a proper subgroup Lambda")
    X = transversal(G, Lam).array
    if factors is None:
        factors = [np.ones(len(X))] * order
    if len(factors) != order:
        raise InvalidInputError(f"expected {order} factors, got {len(factors)}")
    pieces = []
    for k, fac in enumerate(factors):
        fac = np.asarray(fac, dtype=float)
        if fac.shape == (G.order,):
            fac = fac[X]
        if fac.shape != (len(X),):
            raise InvalidInputError(f"factor {k} must have length {len(X)} or {G.order}")
        if not np.all(fac > 0):
            raise InvalidInputError(f"factor {k} is not positive on the transversal")
        piece = np.zeros(G.order)
        piece[X] = fac
        pieces.append(piece)
    t = np.arange(G.order)
    W = pieces[0]
    for piece in pieces[1:]:
        # (u * v)(x) = sum_s u(s) v(x - s), counting measure
        W = np.array([np.dot(W, piece[G.sub(x, t)]) for x in t])
    periodized = W[G.sub(t[:, None], Lam.array[None, :])].sum(axis=1)
    C = float(periodized.mean())
    if np.abs(periodized - C).max() > 1e-12 * max(1.0, abs(C)):
        raise ConstructionFailedError("weighted B-spline is not a partition of unity on Lambda")
    return np.sqrt(np.clip(W, 0.0, None) / (C * len(X))).astype(complex)


# ---------------------------------------------------------------------------
# aggregate report


@dataclass
class DualityReport:
    bounds: dict[str, tuple[float, float]]
    frame: FrameBounds
    riesz: RieszReport
    p: int
    q: int
    residuals: dict[str, float]
    condition_A: float
    calderon: CalderonBounds
    bessel_estimate: float
    flags: dict[str, bool]
    tolerance: float


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def duality_report(sys: GaborSystem, tol: float = DEFAULT_TOL, dual_window=None) -> DualityReport:
    """Every bound route side by side plus the duality identities.

    ``dual_window`` defaults to the canonical dual when the system is a frame
    (and to ``g`` otherwise, for the operator identities).
    """
    G = sys.group
    w = sys.weights
    oracle_fb = oracle.oracle_frame_bounds(sys.window, sys.lattice, sys.modulations, w, tol)
    _, gram_fb = dual_gramian_bounds(sys, tol)
    _, zz_fb = zz_bounds(sys, tol)
    freq_fb = frequency_side_bounds(sys, tol)
    riesz = riesz_bounds(adjoint_system(sys), tol)
    bounds = {
        "oracle": oracle_fb.pair(),
        "dual_gramian": gram_fb.pair(),
        "zz": zz_fb.pair(),
        "frequency": freq_fb.pair(),
        "riesz": riesz.bounds.pair(),
    }
    if dual_window is not None:
        h = as_signal(G, dual_window, "dual window")
    elif oracle_fb.is_frame:
        h = canonical_dual(sys, tol)
    else:
        h = sys.window
    S_oracle = oracle.oracle_frame_matrix(sys.window, h, sys.lattice, sys.modulations, w)
    scale = max(1.0, operator_norm(S_oracle))
    walnut = walnut_matrix(sys.window, h, sys.lattice, sys.modulations, w)
    janssen, cond_a = janssen_operator(sys.window, h, sys.lattice, sys.modulations, w)
    rng = np.random.default_rng(0)
    f1 = rng.standard_normal(G.order) + 1j * rng.standard_normal(G.order)
    f2 = rng.standard_normal(G.order) + 1j * rng.standard_normal(G.order)
    residuals = {
        "walnut": operator_norm(walnut - S_oracle) / scale,
        "janssen": operator_norm(janssen - S_oracle) / scale,
        "figa": figa_residual(f1, f2, sys.window, h, sys.lattice, sys.modulations, w)
        / (scale * np.linalg.norm(f1) * np.linalg.norm(f2)),
        "zz_vs_gramian": zz_gramian_mismatch(sys),
    }
    is_dual = None
    if oracle_fb.is_frame or dual_window is not None:
        residuals["wexler_raz"] = wexler_raz_residual(sys.window, h, sys.lattice, sys.modulations, w)
        dp = verify_dual_pair(sys.window, h, sys.lattice, sys.modulations, w)
        residuals["dual_pair"] = max(dp.weak, dp.s_side, dp.t_side)
        is_dual = dp.verdict(tol)
    cald = calderon_bounds(sys)
    M = bessel_estimate(sys.window, sys.lattice, sys.modulations, w)

    ref = bounds["oracle"]
    five_way = all(_rel(ref[0], v[0]) <= tol and _rel(ref[1], v[1]) <= tol for v in bounds.values())
    gram_max = riesz.bounds.B
    bessel_duality = abs(oracle_fb.B - gram_max) <= max(tol, 1e-10) * max(1.0, oracle_fb.B)
    adj_gram = riesz_gram(sys)
    off = adj_gram - np.diag(np.diag(adj_gram))
    orthogonal = bool(np.abs(off).max(initial=0.0) <= tol * max(1.0, np.abs(adj_gram).max()))
    norm_sq = float(np.vdot(sys.window, sys.window).real)
    tight = oracle_fb.is_tight
    tight_ok = (tight == orthogonal) and (not tight or abs(oracle_fb.A - norm_sq) <= tol * max(1.0, norm_sq))
    lo = oracle_fb.A - tol * max(1.0, oracle_fb.B)
    hi = oracle_fb.B + tol * max(1.0, oracle_fb.B)
    if oracle_fb.is_frame:
        calderon_ok = all(lo <= v <= hi for v in cald.time + cald.frequency)
    else:
        calderon_ok = all(v <= hi for v in cald.time + cald.frequency)
    flags = {
        "is_frame": oracle_fb.is_frame,
        "is_tight": tight,
        "is_parseval": oracle_fb.is_parseval,
        "adjoint_orthogonal": orthogonal,
        "five_way_agreement": five_way,
        "duality_principle": _rel(oracle_fb.A, riesz.bounds.A) <= tol and _rel(oracle_fb.B, riesz.bounds.B) <= tol,
        "bessel_duality": bessel_duality,
        "tight_iff_orthogonal": tight_ok,
        "calderon_sandwich": calderon_ok,
        "bessel_estimate_dominates": M >= oracle_fb.B * (1 - tol) - tol,
    }
    if is_dual is not None:
        flags["is_dual_pair"] = is_dual
        flags["wexler_raz_iff_dual"] = (residuals["wexler_raz"] <= tol) == is_dual
    p, q = zibulski_zeevi_dimensions(sys.lattice, sys.modulations)
    return DualityReport(bounds, oracle_fb, riesz, p, q, residuals, cond_a, cald, M, flags, tol)


def riesz_gram(sys: GaborSystem) -> np.ndarray:
    V = adjoint_system(sys).vectors()
    return np.conj(V.T) @ V
