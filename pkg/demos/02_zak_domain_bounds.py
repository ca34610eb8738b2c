"""Frame bounds from the Zak domain, compared with a brute-force frame operator."""
# %%
import numpy as np

from gaborlab import dual_gramian_bounds, frequency_side_bounds, gabor_system, make_group, subgroup_from_generators, zz_bounds
from gaborlab import gabor, oracle
from gaborlab.windows import random_window

G = make_group([12])
L = subgroup_from_generators(G, [(3,)])
M = subgroup_from_generators(G, [(2,)], in_dual=True)
g = random_window(G, seed=11)
s = gabor_system(g, L, M)
p, q = gabor.zibulski_zeevi_dimensions(L, M)
print(f"|L|={L.order} |M|={M.order}: dual Gramians are {p}x{p}, ZZ matrices {q}x{p}")

# %% the brute-force spectrum of S
fb = oracle.oracle_frame_bounds(g, L, M, s.weights)
print("oracle:        A=%.12f  B=%.12f" % fb.pair())

# %% eigenvalues of the dual Gramian on every fiber
field, gb = dual_gramian_bounds(s)
print("dual Gramian:  A=%.12f  B=%.12f  (%d fibers)" % (gb.A, gb.B, len(field.fibers)))

# %% singular values of the ZZ matrices, scaled
field, zb = zz_bounds(s)
print("ZZ:            A=%.12f  B=%.12f" % zb.pair())

# %% the same computation on the frequency side
print("frequency:     A=%.12f  B=%.12f" % frequency_side_bounds(s).pair())

# %% where is the frame weakest?
i = np.argmin(field.bound_values()[:, -1])
x, w = field.fibers[i]
print("lower bound attained at x=%s, omega=%s" % (G.element(int(x)), G.element(int(w))))
