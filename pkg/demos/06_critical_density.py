"""At critical density a Gabor frame is a Riesz basis, governed by one Zak transform."""
# %%
import numpy as np

from gaborlab import critical_density_check, gabor_system, inverse_zak, make_group, subgroup_from_generators, zak
from gaborlab.windows import indicator

G = make_group([8])
L = subgroup_from_generators(G, [(2,)])
M = subgroup_from_generators(G, [(4,)], in_dual=True)  # Gamma-perp = L

for label, g in [("indicator of {0,1}", indicator(G, [0, 1])), ("delta at 0", indicator(G, [0]))]:
    r = critical_density_check(gabor_system(g, L, M))
    print(f"{label:>20}: |Z|^2 in [{r.zak_min:.3f}, {r.zak_max:.3f}], zeros={r.zero_fibers}/{r.total_fibers}, "
          f"frame={r.is_frame}, Riesz basis={r.is_riesz_basis}")

# %% prescribe the Zak transform directly, with a single zero
za = zak(L, np.zeros(8))
field = np.ones(za.values.shape, dtype=complex)
field[1, 3] = 0
g = inverse_zak(type(za)(L, za.rows, za.cols, field))
r = critical_density_check(gabor_system(g, L, M))
print("one Zak zero: A =", r.frame_bounds.A, " lower bound on the span =", r.frame_bounds.A_basic)
