from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaborlab import (annihilator, derive_weights, enumerate_subgroups, intersect, make_group, pair,
                      subgroup_from_generators, subgroup_sum, transversal, trivial, whole)
from gaborlab.errors import InvalidInputError, ResourceLimitError
from gaborlab.groups import is_closed, weil_sides

from conftest import SMALL, group_triples


def test_make_group_orders():
    assert make_group([8]).order == 8
    assert make_group([2, 4]).order == 8
    assert make_group([16]).factors == (16,)
    assert make_group([1]).order == 1


@pytest.mark.parametrize("bad", [[0], [-3], [2.5], []])
def test_make_group_rejects(bad):
    with pytest.raises(InvalidInputError):
        make_group(bad)


def test_order_cap(monkeypatch):
    with pytest.raises(ResourceLimitError):
        make_group([64, 128])
    monkeypatch.setenv("GABORLAB_MAX_ORDER", "10000")
    assert make_group([64, 128]).order == 8192
    monkeypatch.setenv("GABORLAB_MAX_ORDER", "4")
    with pytest.raises(ResourceLimitError):
        make_group([8])
    assert make_group([8], max_order=8).order == 8


def test_pair_values():
    G = make_group([8])
    assert pair(G, (1,), (2,)) == pytest.approx(1j)
    assert pair(G, 4, 1) == pytest.approx(-1)
    H = make_group([2, 4])
    assert H.pair((1, 1), (1, 1)) == pytest.approx(np.exp(2j * np.pi * (1 / 2 + 1 / 4)))
    with pytest.raises(InvalidInputError):
        G.pair((8,), (0,))


def test_canonical_order_is_lexicographic():
    G = make_group([2, 3])
    assert [G.element(i) for i in range(6)] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


@given(st.sampled_from(SMALL), st.data())
def test_pairing_is_bicharacter(factors, data):
    G = make_group(factors)
    i = st.integers(0, G.order - 1)
    w, v, x, y = (data.draw(i) for _ in range(4))
    assert G.pair(w, G.add(x, y)) == pytest.approx(G.pair(w, x) * G.pair(w, y))
    assert G.pair(G.add(w, v), x) == pytest.approx(G.pair(w, x) * G.pair(v, x))
    assert abs(G.pair(w, x)) == pytest.approx(1.0)


def test_subgroup_examples():
    G = make_group([8])
    L = subgroup_from_generators(G, [(2,)])
    assert L.elements == (0, 2, 4, 6)
    assert annihilator(G, L).elements == (0, 4)
    assert annihilator(G, L).in_dual
    Z16 = make_group([16])
    for n in range(5):
        assert subgroup_from_generators(Z16, [(2 ** (4 - n) % 16,)]).order == 2 ** n
    assert subgroup_from_generators(G, []).elements == (0,)


def test_cyclic_2group_intersections():
    Z16 = make_group([16])
    subs = {n: subgroup_from_generators(Z16, [(2 ** (4 - n) % 16,)]) for n in range(5)}
    for m in range(5):
        for n in range(5):
            assert intersect(subs[m], subs[n]).order == 2 ** min(m, n)


@given(group_triples())
def test_annihilator_laws(t):
    G, L, M = t
    Lp = annihilator(G, L)
    assert L.order * Lp.order == G.order
    assert annihilator(G, Lp).same_set(L)
    assert G.pairs_trivially(Lp.array, L.array).all()
    # perp of a sum is the intersection of perps
    L2 = subgroup_from_generators(G, [M.elements[-1]])
    assert annihilator(G, subgroup_sum(L, L2)).same_set(intersect(Lp, annihilator(G, L2)))


@given(group_triples())
def test_transversal_partitions(t):
    G, L, _ = t
    tv = transversal(G, L)
    assert len(tv) * L.order == G.order
    cosets = G.add(tv.array[:, None], L.array[None, :])
    assert sorted(cosets.ravel().tolist()) == list(range(G.order))
    for x in range(G.order):
        i, h = tv.locate(x)
        assert h in L and G.add(tv.reps[i], h) == x


def test_enumerate_counts():
    # number of subgroups: Z_8 -> 4, Z_12 -> 6, Z_2 x Z_4 -> 8, Z_3 x Z_9 -> 10
    for factors, count in [((8,), 4), ((12,), 6), ((2, 4), 8), ((3, 9), 10), ((16,), 5), ((2, 2), 5)]:
        subs = enumerate_subgroups(make_group(factors))
        assert len(subs) == count, factors
        assert all(is_closed(s) for s in subs)
    assert len(enumerate_subgroups(make_group([2, 4]), limit=3)) == 3


def test_sum_intersect_errors():
    G = make_group([8])
    L = subgroup_from_generators(G, [(2,)])
    M = subgroup_from_generators(G, [(4,)], in_dual=True)
    with pytest.raises(InvalidInputError):
        intersect(L, M)
    with pytest.raises(InvalidInputError):
        subgroup_sum(L, M)


def test_weights_z8():
    G = make_group([8])
    L = subgroup_from_generators(G, [(2,)])
    M = subgroup_from_generators(G, [(2,)], in_dual=True)
    w = derive_weights(G, L, M)
    assert w.c_G == 1 and w.c_Ghat == Fraction(1, 8)
    assert w.c_Lambda == 2 and w.c_Gamma == Fraction(1, 4)
    assert w.w_G_mod_Lambda == Fraction(1, 2)
    # p = |Gamma-perp / (Lambda cap Gamma-perp)| = 1
    assert w.w_K == w.c_Lambda
    assert w.w_K_freq == Fraction(1, 4)


@given(group_triples())
def test_weights_relations(t):
    G, L, M = t
    w = derive_weights(G, L, M)
    assert w.c_G * w.c_Ghat * G.order == 1
    assert w.c_Lambda * w.w_G_mod_Lambda == w.c_G
    assert w.c_Gamma * w.w_Ghat_mod_Gamma == w.c_Ghat
    Mp = annihilator(G, M)
    p = Mp.order // intersect(L, Mp).order
    assert w.w_K == w.c_Lambda / p


def test_weights_sides():
    G = make_group([8])
    L = subgroup_from_generators(G, [(2,)])
    with pytest.raises(InvalidInputError):
        derive_weights(G, L, L)
    with pytest.raises(InvalidInputError):
        derive_weights(G, whole(G, True), whole(G, True))


@given(group_triples(), st.lists(st.integers(-50, 50), min_size=36, max_size=36))
def test_weil_exact(t, ints):
    G, L, M = t
    w = derive_weights(G, L, M)
    f = [Fraction(v, 7) for v in ints[:G.order]]
    lhs, rhs = weil_sides(G, L, w.c_Lambda, w.w_G_mod_Lambda, f)
    assert lhs == rhs
    # dual side with the dual weights
    lhs, rhs = weil_sides(G, M, w.c_Gamma, w.w_Ghat_mod_Gamma, f, c_G=w.c_Ghat)
    assert lhs == rhs


def test_trivial_whole():
    G = make_group([2, 4])
    assert trivial(G).order == 1 and whole(G).order == 8
    assert annihilator(G, trivial(G)).order == 8
    assert annihilator(G, whole(G)).order == 1
