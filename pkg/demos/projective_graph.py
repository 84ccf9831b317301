"""Graphs of class P in dimension 8: Pontryagin values, genus and commensurability.

    python demos/projective_graph.py
"""

import random

from codimone import decide_commensurable, manifold_of_graph, pontryagin_admissible, validate
from codimone.generate import copy_graph, random_graph, with_pontryagin
from codimone.graph import genus

print("admissible Pontryagin values for n=8 below 200:",
      [v for v in range(200) if pontryagin_admissible(v, 8)[0]])
print("36 in dimension 16:", pontryagin_admissible(36, 16))

rng = random.Random(8)
g = random_graph(rng, "P", 8, 3)
print(f"\nrandom graph: k={g.k} E={g.E} degrees={sorted(g.degrees().values())}")
for e in g.edges:
    print("  edge", e.u, e.v, "marked" if e.marked else "", e.pontryagin or "")
print("valid:", validate(g).ok, " genus:", genus(g))
print("manifold:", manifold_of_graph(g))

c = copy_graph(rng, g)
v = decide_commensurable(g, c, 5)
print("\nrelabelled copy:", v.status, "group map", v.permutation)
for (a, s), (b, t) in sorted(v.vertex_map().items()):
    print(f"  vertex {a}.{s} -> {b}.{t}")

value = 18 if g.pontryagin() != 18 else 50
v = decide_commensurable(g, with_pontryagin(c, value))
print(f"copy with Pontryagin value {value}:", v.status, "certificate", v.certificate)
