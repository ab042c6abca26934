# %% [markdown]
# # Small characteristic
#
# `A = J_d (x) I_2` and `B = I_d (x) J_2` generate `K[x,y]/(x^d, y^2)`. Over a
# large prime the pencil has type `(d+1, d-1)`. When `p` divides `d` it
# collapses to `(d, d)`.

# %%
from nilcommute.algebra import hilbert_function, mcninch_pair, pencil_partition
from nilcommute.exactla import PrimeField
from nilcommute.harness import Config, characteristic_sensitivity

for d, p in [(3, 3), (4, 2), (6, 3)]:
    large = mcninch_pair(d)
    small = mcninch_pair(d, PrimeField(p))
    print(f"d={d}: H={hilbert_function(large).values}",
          "large p:", pencil_partition(large, 1), f"p={p}:", pencil_partition(small, 1))

# %%
report = characteristic_sensitivity(3, 3, Config(allow_small_characteristic=True))
print(report.summary_line())
