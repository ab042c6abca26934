# %% [markdown]
# # Sampling the generic commuting nilpotent
#
# A random element of the nilpotent centralizer of `J_P` has, with
# overwhelming probability over F_p with p = 2^31 - 1, the generic Jordan
# type Q(P). The estimator keeps the dominance maximum over several trials.

# %%
from nilcommute.commutant import estimate_qp, sample_nilpotent, string_witness
from nilcommute.exactla import PrimeField, commutes, jordan_matrix, jordan_partition, make_rng
from nilcommute.partitions import qp_predicted, string_stats

F = PrimeField()
rng = make_rng(0)

# %%
P = (5, 4, 2, 2)
A = sample_nilpotent(P, rng, F)
print("commutes with J_P:", commutes(A, jordan_matrix(P, F)))
print("Jordan type of one sample:", jordan_partition(A))

# %%
for P in [(3, 1, 1), (2, 2), (5, 4, 2, 2), (8, 7, 7, 5, 5, 4, 2, 2, 2)]:
    est = estimate_qp(P, trials=20, rng=0, field=F, check=True)
    print(P, "->", est.partition, "predicted:", qp_predicted(P))

# %% [markdown]
# A string decomposition also yields an explicit witness: one Jordan chain per
# block, interleaved across the block's parts.

# %%
P = (5, 4, 2, 2)
d = min(string_stats(P).decompositions, key=lambda d: d.blocks)
W = string_witness(P, d, F)
print(" | ".join(map(str, d.blocks)), "-> witness type", jordan_partition(W))
print("square recovers P:", jordan_partition(W @ W))
