# %%
# Count statistics of six three-particle states after the tritter.
from multihom import table1

report = table1.reproduce()
names = list(report.columns)
print("config    " + "  ".join(f"{n:>9}" for n in names))
for i, row in enumerate(table1.ROWS):
    cells = "  ".join(f"{report.columns[n][i]:9.4f}" for n in names)
    print(f"{str(row):<9} {cells}")
print("max error vs exact fractions:", report.max_error)

# %%
# Any three-particle input is pinned down by four numbers: p_111 and the three class weights.
import numpy as np

from multihom.states import random_sector_state

psi = random_sector_state(3, np.random.default_rng(3))
predicted, weights = table1.four_parameter_column(psi)
actual = table1.tritter_column(psi)
print("class weights:", np.round(weights, 4))
print("max deviation of the four-parameter form:", max(abs(a - b) for a, b in zip(actual, predicted)))
