# %% [markdown]
# Homology of a double cover of curves: the anti-invariant part, the
# parity of the intersection form on it, and whether the images of
# (twist - 1) generate it.

# %%
from prymcert.homology import (
    anti_invariant_basis,
    build_model,
    commutator_images,
    find_dual_cycle,
    generates_anti_invariant,
    parity_obstruction,
    twist_pair,
)

# %%
for l, m in [(1, 0), (2, 0), (0, 1), (1, 1), (2, 2)]:
    M = build_model(l, m)
    g = generates_anti_invariant(M, commutator_images(M))
    print(f"l={l} m={m} genus {M.genus} anti-invariant rank {len(anti_invariant_basis(M))}",
          type(parity_obstruction(M)).__name__, "generates" if g.generates else f"index {g.index}")

# %% [markdown]
# With branch points a vanishing cycle delta has a dual anti-invariant cycle.

# %%
M = build_model(1, 1)
d1 = M.basis_vector("d1")
print("dual to d1:", find_dual_cycle(M, d1))
print("pair twist on b2 + ib2:", twist_pair(M, M.basis_vector("b1"), M.cycle({"b2": 1, "ib2": 1})))
