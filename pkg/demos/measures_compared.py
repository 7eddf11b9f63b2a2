# %% [markdown]
# Two ways to score n-partite indistinguishability
#
# `cyclic_measure` is |<C>|^2 for the particle cycle C.  `measure_via_multiport`
# reads |sum_k p_k lambda^k|^2 off the Fourier multiport class weights, which
# equals |<X>|^2 for the global mode shift X.  They coincide on the cyclic
# eigenstates and at n = 2, and drift apart for generic inputs.

# %%
import numpy as np

from multihom import cyclic_measure, measure_via_multiport, mode_shift_expectation, rho_representative
from multihom.states import random_sector_state

rng = np.random.default_rng(0)
for n in (2, 3, 4):
    psi = random_sector_state(n, rng)
    print(f"n={n}  cycle={cyclic_measure(psi):.4f}  multiport={measure_via_multiport(psi):.4f}"
          f"  |<X>|^2={abs(mode_shift_expectation(psi)) ** 2:.4f}")

# %%
# The paired mixtures behave differently under the two scores.
for k in range(3):
    rho = rho_representative(3, k)
    print(f"rho k={k}: cycle={cyclic_measure(rho):.4f}  multiport={measure_via_multiport(rho):.4f}")
