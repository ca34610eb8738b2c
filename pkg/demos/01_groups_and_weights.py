"""Groups, subgroups, annihilators and the Haar weights that tie them together."""
# %%
import numpy as np

from gaborlab import annihilator, derive_weights, enumerate_subgroups, make_group, subgroup_from_generators, transversal

G = make_group([2, 4])
print(G, "has order", G.order)
print("elements in canonical order:", [G.element(i) for i in range(G.order)])

# %% every subgroup, smallest first
for H in enumerate_subgroups(G):
    perp = annihilator(G, H)
    print(f"{str(H.element_tuples()):<48} perp has order {perp.order}")

# %% a translation lattice and a modulation lattice
L = subgroup_from_generators(G, [(0, 2), (1, 0)])
M = subgroup_from_generators(G, [(0, 1)], in_dual=True)
w = derive_weights(G, L, M)
for name, value in w.as_float().items():
    print(f"{name:>18} = {value:.4f}")

# %% cosets of L, one representative each
tv = transversal(G, L)
print("transversal:", [G.element(r) for r in tv.reps])
print("x = (1, 3) decomposes as rep #%d plus %s" % (tv.locate(G.index((1, 3)))[0],
                                                   G.element(tv.locate(G.index((1, 3)))[1])))

# %% characters: the pairing matrix is unitary up to |G|
P = G.pairing(np.arange(8), np.arange(8))
print("max |P P* / 8 - I| =", np.abs(P @ P.conj().T / 8 - np.eye(8)).max())
