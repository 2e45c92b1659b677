# %% [markdown]
# Picard lattices of del Pezzo surfaces, their (-1)-curves, and the
# lattice of the K3 double cover branched along a bi-anticanonical curve.

# %%
from prymcert import lattice
from prymcert.effective import classify_positivity, minus_one_curves
from prymcert.surfaces import del_pezzo, fixed_locus_invariants

# %%
for d in range(1, 9):
    T = del_pezzo(d)
    print(d, "(-1)-curves:", len(minus_one_curves(T)), "K^2 =", T.square(T.canonical))

# %% [markdown]
# The pulled-back lattice is the Picard lattice scaled by 2.  Its
# discriminant group is (Z/2)^a, and it is 2-elementary.

# %%
for d in (1, 3, 5, 8):
    T = del_pezzo(d)
    disc = lattice.discriminant_data(T.k3)
    print(f"dP{d}", "rank", T.k3.rank, "a =", disc.a, "delta =", disc.delta, fixed_locus_invariants(T.k3.rank, disc.a, disc.delta))

# %%
T = del_pezzo(3)
for name, C in [("-K", T.anticanonical), ("E1", T.exceptional(1)), ("H-E1-E2-E3", T.divisor(1, (1, 1, 1, 0, 0, 0)))]:
    print(name, classify_positivity(T, C))
