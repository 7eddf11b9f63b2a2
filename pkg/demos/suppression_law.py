# %%
# Each cyclic eigenstate exits the n-port Fourier multiport in a single class
# of count configurations, those with sum_i i*a_i = k (mod n).
from multihom import barred_eigenstate, class_probabilities, class_sets, cyclic_eigenstate, evolve_grouped, qft_unitary

for n in range(2, 6):
    print(f"n={n}: class sizes {[len(c) for c in class_sets(n)]}")

# %%
n = 5
u = qft_unitary(n)
for k in range(n):
    for label, state in (("lambda", cyclic_eigenstate(n, k)), ("lambda-bar", barred_eigenstate(n, k))):
        p = class_probabilities(evolve_grouped(state, u)).p
        print(f"{label:>10} k={k}: " + " ".join(f"{x:.3f}" for x in p))

# %%
# Which configurations does class 1 at n = 3 contain?
print(class_sets(3)[1])
