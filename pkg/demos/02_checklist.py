# %% [markdown]
# Run the hypothesis checklist on a few classes and print the verdicts.

# %%
from prymcert.catalog import format_golden, run_golden
from prymcert.effective import is_two_connected
from prymcert.prym import hypothesis_report, non_integral_pullback_codim, verdict
from prymcert.surfaces import del_pezzo, projective_plane

# %%
T = del_pezzo(3)
C = T.divisor(4, (2, 1, 1, 1, 1, 1))
for n in (1, 2, 3):
    v = verdict(T, C, n)
    print(T.describe(C), "n =", n, "dim", v.dimension, v.verdict)

# %% [markdown]
# Negative controls: each fails for a reason we can name.

# %%
for T, C in [(del_pezzo(1), del_pezzo(1).anticanonical), (del_pezzo(2), del_pezzo(2).anticanonical),
             (projective_plane(), (1,)), (projective_plane(), (2,))]:
    r = hypothesis_report(T, C)
    print(T.name, T.describe(C), r.failures())

# %%
v = is_two_connected(projective_plane(), (2,))
print("2H on P2:", v.two_connected, v.witness, [e.code for e in v.bl_exceptions])

# %%
T2 = del_pezzo(2)
print("split preimages of -2K on dP2:", non_integral_pullback_codim(T2, tuple(2 * x for x in T2.anticanonical)))

# %%
print(format_golden(run_golden()))
