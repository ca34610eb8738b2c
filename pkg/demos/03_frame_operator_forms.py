"""Three ways to write the mixed frame operator, and the bilinear identity linking them."""
# %%
import numpy as np

from gaborlab import derive_weights, figa_residual, frame_operator_matrix, gabor_system, janssen_operator, make_group, subgroup_from_generators
from gaborlab import gabor

rng = np.random.default_rng(0)
G = make_group([8])
L = subgroup_from_generators(G, [(2,)])
M = subgroup_from_generators(G, [(4,)], in_dual=True)
w = derive_weights(G, L, M)
g = rng.standard_normal(8) + 1j * rng.standard_normal(8)
h = rng.standard_normal(8) + 1j * rng.standard_normal(8)

# %% synthesis of analysis coefficients
s = gabor_system(g, L, M, w)
S = frame_operator_matrix(s, s.with_window(h))

# %% translate, then multiply by the symbols s_alpha
W = gabor.walnut_matrix(g, h, L, M, w)
print("walnut  - direct:", np.linalg.norm(W - S, 2))

# %% weighted sum over the adjoint lattice
J, cond_a = janssen_operator(g, h, L, M, w)
print("janssen - direct:", np.linalg.norm(J - S, 2))
print("sum of |adjoint coefficients| =", round(cond_a, 6))

# %% S is banded: only shifts in Gamma-perp appear
print("non-zero diagonals of S:", sorted({int(i - j) % 8 for i, j in zip(*np.nonzero(np.abs(S) > 1e-12))}))

# %% the bilinear identity on random probes
f1 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
f2 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
print("bilinear identity residual:", figa_residual(f1, f2, g, h, L, M, w))
