"""Build a class-S invariant, validate it, and compare it with a disguised copy.

    python demos/tube_equivalence.py
"""

import random

from codimone import decide_tube_equivalence, manifold_of_S, validate_S
from codimone.generate import copy_S, random_S
from codimone.realize import realize

rng = random.Random(3)
s = random_S(rng, 3, 3)
print(f"tube of k={s.k} automorphisms on T^{s.n}, counts a={s.a} b={s.b} c={s.c}")
for i, auto in enumerate(s.tube):
    print(f"  {i}: epsilon={auto.epsilon} matrix={auto.matrix}")
print("\n".join(validate_S(s).lines()))
print("supporting manifold:", manifold_of_S(s))

c = copy_S(rng, s)
v = decide_tube_equivalence(s, c, 5)
print("\ncopy (permuted and conjugated):", v.status)
print("permutation", v.permutation, "common sign", v.sign)

shifted = type(s)(s.tube, s.a, s.b, s.c + 1)
print("raising c by one breaks:", [f.name for f in validate_S(shifted).failures()])

print("\nrealization:")
print("\n".join(realize(s).report()))
