# %% [markdown]
# # Partition combinatorics
#
# Partitions are stored sorted descending. The helpers below are pure
# functions, so every cell can be rerun in any order.

# %%
from nilcommute.partitions import (
    diagonal_lengths,
    dominance_cmp,
    dual,
    h_of_p,
    hilbert_cmp,
    p_of_h,
    string_stats,
    tilde,
)

# %% [markdown]
# Duals transpose the Ferrers diagram; diagonal lengths count cells on each
# anti-diagonal.

# %%
P = (6, 4, 3)
print("dual:", dual(P))
print("diagonal lengths of (5,3,1):", diagonal_lengths((5, 3, 1)))

# %% [markdown]
# `p_of_h` and `h_of_p` are mutually inverse between Hilbert functions and
# partitions with distinct parts, and they reverse the two partial orders.

# %%
H1, H2 = h_of_p((6, 4, 3)), h_of_p((6, 4, 2, 1))
print(H1, H2)
print("partitions:", dominance_cmp((6, 4, 3), (6, 4, 2, 1)).value)
print("Hilbert functions:", hilbert_cmp(H1, H2).value)
print("P(1,2,3,4,3,3,2,1) =", p_of_h((1, 2, 3, 4, 3, 3, 2, 1)))

# %% [markdown]
# String decompositions cut the sorted parts into runs whose extremes differ
# by at most one. `r` is the fewest runs, `s` the longest run.

# %%
for P in [(5, 4, 4, 3, 2), (5, 4, 3, 2, 1)]:
    st = string_stats(P)
    print(P, "r =", st.r, "s =", st.s)
    for d in sorted(st.decompositions, key=lambda d: d.blocks):
        print("   ", " | ".join(map(str, d.blocks)), "->", tilde(d))
