# %% [markdown]
# Two particles on a balanced beam splitter
#
# Sweep a two-particle state from distinguishable to fully symmetric and watch
# the coincidence probability fall to zero.

# %%
import numpy as np

from multihom import basis_state, hom_probabilities, make_pure, pairwise_measure

# %%
# |psi(t)> = cos t |12> + sin t |21>; t = pi/4 is the symmetric state
for t in np.linspace(0, np.pi / 4, 6):
    psi = make_pure(2, 2, [((1, 2), np.cos(t)), ((2, 1), np.sin(t))])
    p_b, p_a = hom_probabilities(psi)
    print(f"t={t:.3f}  bunch={p_b:.4f}  coincide={p_a:.4f}  I_12={pairwise_measure(psi, 1, 2):.4f}")

# %%
# The squared contrast tracks the pairwise measure exactly.
p_b, p_a = hom_probabilities(basis_state((1, 2)))
print("distinguishable:", p_b, p_a)
