"""Finite abelian groups, their duals, subgroups and Haar weight bookkeeping.

A group ``Z_{n_1} x ... x Z_{n_k}`` is stored by its invariant factors.
Elements are addressed by their position in canonical (lexicographic tuple)
order, so a signal on the group is simply a complex vector of length
``|G|``.  The dual group is identified with the same tuple space through

    pair(w, x) = exp(2 pi i sum_j w_j x_j / n_j),

and subgroups carry an ``in_dual`` flag recording which side they live on.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError

DEFAULT_MAX_ORDER = 4096


def max_order_cap() -> int:
    env = os.environ.get("GABORLAB_MAX_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInputError(f"GABORLAB_MAX_ORDER is not an integer: {env!r}")
    return DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        if len(self.factors) == 0:
            raise InvalidInputError("a group needs at least one invariant factor")
        for n in self.factors:
            if int(n) != n or n < 1:
                raise InvalidInputError(f"invariant factors must be integers >= 1, got {n!r}")

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def coords(self) -> np.ndarray:
        """(order, rank) integer array of element coordinates, canonical order."""
        grids = np.indices(self.factors).reshape(self.rank, -1)
        return np.ascontiguousarray(grids.T, dtype=np.int64)

    @cached_property
    def _lcm(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    @cached_property
    def _scale(self) -> np.ndarray:
        # pair(w, x) = exp(2 pi i <w, x>_L / L) with integer weights L / n_j
        return np.array([self._lcm // n for n in self.factors], dtype=np.int64)

    # -- element conversion ------------------------------------------------

    def index(self, element) -> int:
        """Canonical position of ``element`` (a coordinate tuple or an int)."""
        if isinstance(element, (int, np.integer)):
            i = int(element)
            if not 0 <= i < self.order:
                raise InvalidInputError(f"element index {i} outside group of order {self.order}")
            return i
        coords = tuple(element)
        if len(coords) != self.rank:
            raise InvalidInputError(
                f"element {coords} has {len(coords)} coordinates, group has rank {self.rank}")
        for c, n in zip(coords, self.factors):
            if int(c) != c or not 0 <= c < n:
                raise InvalidInputError(f"element {coords} not reduced modulo {self.factors}")
        return int(np.ravel_multi_index(coords, self.factors))

    def element(self, i: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords[i])

    def indices(self, elements: Iterable) -> np.ndarray:
        return np.array([self.index(e) for e in elements], dtype=np.int64)

    # -- arithmetic on index arrays -----------------------------------------

    def _ravel(self, coords: np.ndarray) -> np.ndarray:
        return np.ravel_multi_index(tuple(np.moveaxis(coords, -1, 0)), self.factors)

    def add(self, a, b):
        """Elementwise sum of index arrays (broadcasting)."""
        n = np.asarray(self.factors)
        return self._ravel((self.coords[a] + self.coords[b]) % n)

    def neg(self, a):
        n = np.asarray(self.factors)
        return self._ravel((-self.coords[a]) % n)

    def sub(self, a, b):
        n = np.asarray(self.factors)
        return self._ravel((self.coords[a] - self.coords[b]) % n)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.neg(np.arange(self.order))

    def phase_numerators(self, omegas, xs) -> np.ndarray:
        """Integer numerators ``k`` with pair(w, x) = exp(2 pi i k / L), outer product."""
        w = self.coords[np.asarray(omegas)] * self._scale
        x = self.coords[np.asarray(xs)]
        return (w @ x.T) % self._lcm

    def pairing(self, omegas, xs) -> np.ndarray:
        """Matrix ``P[i, j] = pair(omegas[i], xs[j])``."""
        k = self.phase_numerators(omegas, xs)
        return np.exp(2j * np.pi * k / self._lcm)

    def pair(self, omega, x) -> complex:
        k = int(self.phase_numerators([self.index(omega)], [self.index(x)])[0, 0])
        return complex(np.exp(2j * np.pi * k / self._lcm))

    def pairs_trivially(self, omegas, xs) -> np.ndarray:
        """Exact test pair(w, x) == 1, outer product over the two index arrays."""
        return self.phase_numerators(omegas, xs) == 0

    def __repr__(self):
        return "Z_" + " x Z_".join(str(n) for n in self.factors)


def make_group(invariant_factors: Sequence[int], max_order: int | None = None) -> FiniteAbelianGroup:
    factors = tuple(int(n) for n in invariant_factors)
    for n in invariant_factors:
        if int(n) != n or n < 1:
            raise InvalidInputError(f"invariant factors must be integers >= 1, got {n!r}")
    cap = max_order_cap() if max_order is None else max_order
    order = math.prod(factors) if factors else 0
    if order > cap:
        raise ResourceLimitError(f"group order {order} exceeds cap {cap}")
    return FiniteAbelianGroup(factors)


def pair(group: FiniteAbelianGroup, omega, x) -> complex:
    """Value of the character ``omega`` at ``x``."""
    return group.pair(omega, x)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """Enumerated subgroup of ``parent`` (or of its dual when ``in_dual``).

    ``elements`` holds canonical indices in increasing order, which is the
    canonical tuple order.
    """

    parent: FiniteAbelianGroup
    elements: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = ()
    in_dual: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.array] = True
        return m

    def __contains__(self, x) -> bool:
        return bool(self.mask[self.parent.index(x)])

    def __len__(self):
        return self.order

    def same_set(self, other: "Subgroup") -> bool:
        return (self.parent == other.parent and self.in_dual == other.in_dual
                and self.elements == other.elements)

    def element_tuples(self) -> list[tuple[int, ...]]:
        return [self.parent.element(i) for i in self.elements]

    def __repr__(self):
        side = "dual " if self.in_dual else ""
        return f"Subgroup({side}{self.parent!r}, order={self.order}, gens={list(self.generators)})"


def _closure(group: FiniteAbelianGroup, start: np.ndarray, gen: int) -> np.ndarray:
    cyclic = [0]
    x = gen
    while x != 0:
        cyclic.append(x)
        x = int(group.add(x, gen))
    total = group.add(start[:, None], np.asarray(cyclic)[None, :])
    return np.unique(total)


def _small_generating_set(group: FiniteAbelianGroup, elements: np.ndarray) -> tuple[tuple[int, ...], ...]:
    current = np.array([0], dtype=np.int64)
    gens = []
    for e in elements:
        if e in set(current.tolist()):
            continue
        gens.append(int(e))
        current = _closure(group, current, int(e))
        if len(current) == len(elements):
            break
    return tuple(group.element(g) for g in gens)


def _from_elements(group: FiniteAbelianGroup, elements, in_dual: bool, generators=None) -> Subgroup:
    arr = np.unique(np.asarray(elements, dtype=np.int64))
    if generators is None:
        generators = _small_generating_set(group, arr)
    return Subgroup(group, tuple(int(e) for e in arr), tuple(generators), in_dual)


def subgroup_from_generators(group: FiniteAbelianGroup, gens: Iterable, in_dual: bool = False) -> Subgroup:
    """Smallest subgroup containing ``gens``; no generators gives ``{0}``."""
    idx = [group.index(g) for g in gens]
    current = np.array([0], dtype=np.int64)
    for g in idx:
        current = _closure(group, current, g)
    return Subgroup(group, tuple(int(e) for e in current),
                    tuple(group.element(g) for g in idx), in_dual)


def whole(group: FiniteAbelianGroup, in_dual: bool = False) -> Subgroup:
    gens = tuple(tuple(1 if j == i else 0 for j in range(group.rank)) for i in range(group.rank))
    return Subgroup(group, tuple(range(group.order)), gens, in_dual)


def trivial(group: FiniteAbelianGroup, in_dual: bool = False) -> Subgroup:
    return Subgroup(group, (0,), (), in_dual)


def annihilator(group: FiniteAbelianGroup, H: Subgroup) -> Subgroup:
    """All characters (elements, if ``H`` lies in the dual) trivial on ``H``."""
    if H.parent != group:
        raise InvalidInputError("subgroup does not belong to this group")
    test = H.array if not H.generators else group.indices(H.generators)
    if len(test) == 0:
        test = np.array([0])
    ok = group.pairs_trivially(np.arange(group.order), test).all(axis=1)
    return _from_elements(group, np.flatnonzero(ok), not H.in_dual)


def _check_same(H1: Subgroup, H2: Subgroup):
    if H1.parent != H2.parent or H1.in_dual != H2.in_dual:
        raise InvalidInputError("subgroups live in different groups")


def intersect(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _check_same(H1, H2)
    common = np.intersect1d(H1.array, H2.array)
    return _from_elements(H1.parent, common, H1.in_dual)


def subgroup_sum(H1: Subgroup, H2: Subgroup) -> Subgroup:
    _check_same(H1, H2)
    G = H1.parent
    total = G.add(H1.array[:, None], H2.array[None, :])
    return _from_elements(G, np.unique(total), H1.in_dual)


def is_closed(H: Subgroup) -> bool:
    G = H.parent
    if 0 not in H.elements:
        return False
    sums = G.add(H.array[:, None], H.array[None, :])
    return bool(H.mask[sums].all() and H.mask[G.neg(H.array)].all())


def enumerate_subgroups(group: FiniteAbelianGroup, in_dual: bool = False,
                        limit: int | None = None) -> list[Subgroup]:
    """Every subgroup, found by adjoining one element at a time to known ones.

    Sorted by order, then by element tuple.  ``limit`` stops the search once
    that many subgroups have been found.
    """
    seen = {(0,): np.array([0], dtype=np.int64)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for key in frontier:
            base = seen[key]
            mask = np.zeros(group.order, dtype=bool)
            mask[base] = True
            for x in range(group.order):
                if mask[x]:
                    continue
                grown = _closure(group, base, x)
                k = tuple(int(e) for e in grown)
                if k not in seen:
                    seen[k] = grown
                    nxt.append(k)
                    if limit is not None and len(seen) >= limit:
                        nxt = []
                        break
            if limit is not None and len(seen) >= limit:
                break
        frontier = nxt
    subs = [_from_elements(group, np.asarray(k), in_dual) for k in seen]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


# ---------------------------------------------------------------------------
# transversals


@dataclass(frozen=True)
class Transversal:
    """One representative per coset of ``subgroup``: its smallest member."""

    subgroup: Subgroup
    reps: tuple[int, ...]
    coset_index: np.ndarray = field(repr=False, compare=False)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.reps, dtype=np.int64)

    def __len__(self):
        return len(self.reps)

    def locate(self, x) -> tuple[int, int]:
        """Decompose ``x = reps[i] + h``; returns ``(i, h)``."""
        G = self.subgroup.parent
        i = int(self.coset_index[x])
        return i, int(G.sub(x, self.reps[i]))


def transversal(group: FiniteAbelianGroup, H: Subgroup) -> Transversal:
    if H.parent != group:
        raise InvalidInputError("subgroup does not belong to this group")
    cosets = group.add(np.arange(group.order)[:, None], H.array[None, :])
    smallest = cosets.min(axis=1)
    reps = np.unique(smallest)
    position = np.searchsorted(reps, smallest)
    return Transversal(H, tuple(int(r) for r in reps), position)


# ---------------------------------------------------------------------------
# Haar weights


@dataclass(frozen=True)
class MeasureWeights:
    """Haar measure constants; each measure is ``constant x counting``.

    ``w_K`` weights the transversal of ``Lambda cap Gamma-perp`` in ``Lambda``
    used by the time-side vector Zak transform; ``w_K_freq`` is its
    frequency-side mirror (transversal of ``Gamma cap Lambda-perp`` in
    ``Gamma``).
    """

    c_G: Fraction
    c_Ghat: Fraction
    c_Lambda: Fraction
    c_Gamma: Fraction
    w_G_mod_Lambda: Fraction
    w_Ghat_mod_Gamma: Fraction
    c_LambdaPerp: Fraction
    c_GammaPerp: Fraction
    w_K: Fraction
    w_K_freq: Fraction
    group_factors: tuple[int, ...] = ()

    def as_float(self) -> dict[str, float]:
        return {k: float(v) for k, v in self.__dict__.items() if isinstance(v, Fraction)}


def derive_weights(group: FiniteAbelianGroup, Lam: Subgroup, Gam: Subgroup) -> MeasureWeights:
    """Fix counting measure on G and solve the Plancherel/Weil chain.

    Annihilators carry counting measure.  G/Lambda is given the measure
    dual to counting on Lambda-perp (it is the dual group of Lambda-perp),
    and Weil's formula then fixes Lambda; the dual side mirrors this.
    """
    if Lam.in_dual or Lam.parent != group:
        raise InvalidInputError("Lambda must be a subgroup of G")
    if not Gam.in_dual or Gam.parent != group:
        raise InvalidInputError("Gamma must be a subgroup of the dual group")
    N = group.order
    c_G = Fraction(1)
    c_Ghat = 1 / (c_G * N)
    lam_perp = annihilator(group, Lam)
    gam_perp = annihilator(group, Gam)
    # measure on a group of order n dual to weight c on its dual is 1 / (c n)
    w_G_mod_Lambda = 1 / (Fraction(1) * lam_perp.order)
    c_Lambda = c_G / w_G_mod_Lambda
    w_Ghat_mod_Gamma = 1 / (Fraction(1) * gam_perp.order)
    c_Gamma = c_Ghat / w_Ghat_mod_Gamma
    p = gam_perp.order // intersect(Lam, gam_perp).order
    p_freq = lam_perp.order // intersect(Gam, lam_perp).order
    return MeasureWeights(
        c_G=c_G, c_Ghat=c_Ghat, c_Lambda=c_Lambda, c_Gamma=c_Gamma,
        w_G_mod_Lambda=w_G_mod_Lambda, w_Ghat_mod_Gamma=w_Ghat_mod_Gamma,
        c_LambdaPerp=Fraction(1), c_GammaPerp=Fraction(1),
        w_K=c_Lambda / p, w_K_freq=c_Gamma / p_freq,
        group_factors=group.factors,
    )


def weil_sides(group: FiniteAbelianGroup, H: Subgroup, c_H, w_quotient, f, c_G=Fraction(1)):
    """Both sides of Weil's formula for ``f`` on G (exact when ``f`` is rational).

    Returns ``(c_G sum_G f, w_quotient sum_reps c_H sum_H f(rep + h))``.
    """
    values = list(f)
    lhs = c_G * sum(values, Fraction(0))
    tv = transversal(group, H)
    rhs = Fraction(0)
    for r in tv.reps:
        shifted = group.add(r, H.array)
        rhs += c_H * sum((values[int(y)] for y in shifted), Fraction(0))
    return lhs, w_quotient * rhs
