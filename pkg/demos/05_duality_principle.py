"""Frame bounds of a Gabor system against Riesz bounds of its adjoint system."""
# %%
from gaborlab import duality_report, enumerate_subgroups, gabor_system, make_group
from gaborlab.windows import random_window

G = make_group([12])
print(f"{'|L|':>4} {'|M|':>4} {'adj':>4} {'A frame':>12} {'A riesz':>12} {'B frame':>12} {'B riesz':>12}")
seed = 0
for L in enumerate_subgroups(G):
    for M in enumerate_subgroups(G, in_dual=True):
        if L.order * M.order < G.order:
            continue
        seed += 1
        rep = duality_report(gabor_system(random_window(G, seed), L, M))
        A, B = rep.bounds["oracle"]
        Ar, Br = rep.bounds["riesz"]
        size = rep.riesz.family_shape[1]
        print(f"{L.order:>4} {M.order:>4} {size:>4} {A:>12.6f} {Ar:>12.6f} {B:>12.6f} {Br:>12.6f}")

# %% the adjoint family never has more than |G| members when |L||M| >= |G|,
# which is why a frame can turn into a Riesz sequence on the other side.
