import ast
from pathlib import Path

import numpy as np
import pytest

import gaborlab.oracle as oracle
from gaborlab import annihilator, derive_weights, make_group, subgroup_from_generators, trivial, whole
from gaborlab.windows import random_window

from conftest import random_signal


def test_oracle_imports_nothing_from_the_fast_paths():
    tree = ast.parse(Path(oracle.__file__).read_text())
    imported = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
        elif isinstance(node, ast.Import):
            imported.update(a.name for a in node.names)
    assert imported <= {"__future__", "dataclasses", "numpy", "bounds", "groups", "numerics"}


def _z8(lam_gen, gam_gen):
    G = make_group([8])
    L = subgroup_from_generators(G, [lam_gen])
    M = subgroup_from_generators(G, [gam_gen], in_dual=True)
    return G, L, M, derive_weights(G, L, M)


def test_full_lattice_gives_scaled_identity(rng):
    G = make_group([2, 4])
    L, M = whole(G), whole(G, True)
    w = derive_weights(G, L, M)
    g = random_signal(rng, 8)
    S = oracle.oracle_frame_matrix(g, g, L, M, w)
    assert np.abs(S - np.sum(np.abs(g) ** 2) * np.eye(8)).max() < 1e-12


def test_translations_only_gives_fourier_multiplier(rng):
    G = make_group([8])
    L, M = whole(G), trivial(G, True)
    w = derive_weights(G, L, M)
    g = random_signal(rng, 8)
    fb = oracle.oracle_frame_bounds(g, L, M, w)
    mult = np.abs(np.fft.fft(g)) ** 2
    assert fb.A == pytest.approx(mult.min(), rel=1e-12)
    assert fb.B == pytest.approx(mult.max(), rel=1e-12)


def test_frozen_bounds_z8_oversampled():
    # values frozen from this routine; the fast routes are compared against them in test_gabor
    G, L, M, w = _z8((2,), (2,))
    fb = oracle.oracle_frame_bounds(random_window(G, 7), L, M, w)
    assert fb.A == pytest.approx(3.3611116606470675, rel=1e-12)
    assert fb.B == pytest.approx(7.863741277663062, rel=1e-12)
    assert fb.is_frame and not fb.is_tight


def test_frozen_bounds_z8_critical():
    # Lambda = Gamma-perp = {0,2,4,6}; delta has a Zak zero at x=1, indicator of {0,1} has |Z| = 1
    from gaborlab.windows import delta, indicator
    G, L, M, w = _z8((2,), (4,))
    fb = oracle.oracle_frame_bounds(delta(G), L, M, w)
    assert fb.A == pytest.approx(0.0, abs=1e-12) and fb.B == pytest.approx(2.0, rel=1e-12)
    fb = oracle.oracle_frame_bounds(indicator(G, [0, 1]), L, M, w)
    assert fb.A == pytest.approx(2.0, rel=1e-12) and fb.B == pytest.approx(2.0, rel=1e-12)


def test_frozen_bounds_other_groups():
    cases = [((12,), (3,), (2,), 2.553233801201528, 14.864553896691097),
             ((2, 4), (0, 2), (1, 1), 2.0648842377872336, 11.009977097059533),
             ((3, 9), (0, 3), (1, 0), 0.0, 101.09022975026312)]
    for factors, lg, mg, A, B in cases:
        G = make_group(factors)
        L = subgroup_from_generators(G, [lg])
        M = subgroup_from_generators(G, [mg], in_dual=True)
        fb = oracle.oracle_frame_bounds(random_window(G, 11), L, M, derive_weights(G, L, M))
        assert fb.A == pytest.approx(A, rel=1e-12, abs=1e-12)
        assert fb.B == pytest.approx(B, rel=1e-12)


def test_atoms_definition():
    G, L, M, w = _z8((4,), (4,))
    g = np.arange(8.0) + 1j
    rows = oracle.atoms(g, L, M)
    assert rows.shape == (4, 8)
    # second row: lambda = 0, gamma = 4 -> (-1)^x g(x)
    assert np.allclose(rows[1], (-1.0) ** np.arange(8) * g)
    # third row: lambda = 4 -> g(x - 4)
    assert np.allclose(rows[2], np.roll(g, 4))


def test_adjoint_family_size_and_riesz(rng):
    G, L, M, w = _z8((2,), (4,))
    g = random_signal(rng, 8)
    fam = oracle.oracle_adjoint_family(g, L, M)
    # |Gamma-perp| |Lambda-perp| = |G|^2 / (|Lambda| |Gamma|)
    assert fam.shape == (8, 8)
    gram = oracle.oracle_gram(fam)
    assert np.allclose(gram, gram.conj().T)
    rb = oracle.oracle_riesz_bounds(fam)
    assert rb.B == pytest.approx(np.linalg.eigvalsh(gram).max())


def test_single_adjoint_element(rng):
    G = make_group([4])
    L, M = whole(G), whole(G, True)
    g = random_signal(rng, 4)
    rb = oracle.oracle_riesz_bounds(oracle.oracle_adjoint_family(g, L, M))
    assert rb.A == pytest.approx(np.sum(np.abs(g) ** 2)) and rb.B == pytest.approx(rb.A)


def test_dual_residual(rng):
    G, L, M, w = _z8((2,), (2,))
    g = random_window(G, 7)
    S = oracle.oracle_frame_matrix(g, g, L, M, w)
    h = np.linalg.solve(S, g)
    assert oracle.oracle_dual_residual(g, h, L, M, w) < 1e-12
    assert oracle.oracle_dual_residual(g, g, L, M, w) > 1e-2
    rep = oracle.oracle_report(g, L, M, w, h)
    assert rep.dual_residual < 1e-12 and rep.bessel_bound == rep.frame.B


def test_annihilator_consistency_for_adjoint():
    G, L, M, _ = _z8((2,), (4,))
    assert annihilator(G, M).elements == (0, 2, 4, 6)
    assert annihilator(G, L).elements == (0, 4)
