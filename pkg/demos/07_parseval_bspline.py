"""Parseval windows from weighted B-splines."""
# %%
import numpy as np

from gaborlab import build_parseval_bspline, duality_report, gabor_system, make_group, subgroup_from_generators, whole

G = make_group([16])
L = subgroup_from_generators(G, [(4,)])
rng = np.random.default_rng(2)
for r in (1, 2, 3):
    factors = [np.ones(4)] + [rng.uniform(0.5, 2.0, 4) for _ in range(r - 1)]
    g = build_parseval_bspline(G, L, r, factors)
    rep = duality_report(gabor_system(g, L, whole(G, True)))
    print(f"order {r}: support {np.flatnonzero(np.abs(g) > 1e-12).tolist()}, bounds {rep.bounds['oracle']}")
    print("          window", np.round(g.real, 3))
