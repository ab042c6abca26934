# %% [markdown]
# # The algebra K[A,B], its Hilbert function and the pencil
#
# The 5x5 pair below has `B = J_(3,1,1)` and a generic-looking `A` in its
# centralizer.

# %%
from nilcommute.algebra import (
    INFINITY,
    generic_pencil_partition,
    hilbert_function,
    is_cyclic,
    monomial_pair,
    pencil_partition,
    socle,
    specialize_example_pair,
)
from nilcommute.exactla import jordan_partition
from nilcommute.partitions import p_of_h

pair = specialize_example_pair()
print(pair.A.entries)

# %%
H = hilbert_function(pair)
print("dim:", pair.dim, "H:", H.values, "basis exponents:", pair.basis.exponents)
print("P(H):", p_of_h(H.values))

# %% [markdown]
# Jordan types of `A + t B` acting on the algebra, including `t = INFINITY`
# (which means `B` alone).

# %%
for t in [0, 1, 7, INFINITY]:
    print(t, pencil_partition(pair, t))
print("generic:", generic_pencil_partition(pair, trials=5, rng=0))
print("socle dimension:", socle(pair).socle_dim, "cyclic:", is_cyclic(pair, 0) is not None)

# %% [markdown]
# Monomial ideals give non-generic pairs: their socle is larger.

# %%
mono = monomial_pair((4, 1))
print("m_y type:", jordan_partition(mono.A), "socle:", socle(mono).socle_dim)
