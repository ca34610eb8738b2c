"""Canonical duals and the biorthogonality test for dual pairs."""
# %%
import numpy as np

from gaborlab import canonical_dual, gabor_system, make_group, subgroup_from_generators, verify_dual_pair, wexler_raz_residual
from gaborlab.windows import random_window

G = make_group([8])
L = subgroup_from_generators(G, [(2,)])
M = subgroup_from_generators(G, [(2,)], in_dual=True)
s = gabor_system(random_window(G, 7), L, M)
h = canonical_dual(s)
print("canonical dual:", np.round(h, 4))

# %% three equivalent descriptions of duality
r = verify_dual_pair(s.window, h, L, M, s.weights)
print(f"weak duality {r.weak:.1e}, time-side symbols {r.s_side:.1e}, frequency-side symbols {r.t_side:.1e}")
print("adjoint biorthogonality residual:", wexler_raz_residual(s.window, h, L, M, s.weights))

# %% breaking duality
for label, cand in [("2 h", 2 * h), ("g", s.window), ("h + noise", h + 0.05 * random_window(G, 1))]:
    r = verify_dual_pair(s.window, cand, L, M, s.weights)
    wr = wexler_raz_residual(s.window, cand, L, M, s.weights)
    print(f"{label:>10}: dual={r.verdict()}  biorthogonality residual={wr:.3f}")
