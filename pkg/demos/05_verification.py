# %% [markdown]
# # Running the verification suites
#
# Each suite returns a report with one verdict per partition. Counterexamples
# are recorded with their seed and matrices rather than raised.

# %%
from nilcommute.harness import Config, qp_table, table_to_text, verify_all

cfg = Config(nmax=6, trials=10, seed=0)
for report in verify_all(cfg):
    print(report.summary_line())

# %% [markdown]
# The table collects r_P, s_P, Q(P) and the minimal sampled Hilbert function.

# %%
rows = qp_table(Config(nmax=5, trials=10))
print(table_to_text(rows))
