"""Walk through deciding GL(n,Z) conjugacy of two toral automorphisms.

    python demos/conjugacy_walkthrough.py
"""

from codimone import (
    ANY,
    IntMatrix,
    char_poly,
    check_anosov,
    decide_conjugacy,
    eigenvalue_modulus_profile,
    fixed_points,
    intertwiner_basis,
)
from codimone.exactint import poly_str

cat = check_anosov([[2, 1], [1, 1]], "a")
z = IntMatrix([[2, 1], [1, 1]]) @ IntMatrix([[1, 0], [3, 1]])
other = check_anosov(z @ cat.matrix @ z.inverse(), "a")

print("A =", cat.matrix, " char poly", poly_str(char_poly(cat.matrix)))
print("B =", other.matrix)
print("eigenvalue moduli (inside, on, outside):", eigenvalue_modulus_profile(cat.matrix))
print("fixed points of A:", [str(p) for p in fixed_points(cat).points])

basis = intertwiner_basis(cat.matrix, other.matrix)
print(f"\nintertwiners Z with Z A = B Z form a rank {len(basis)} lattice; reduced basis:")
for m in basis:
    print("  ", m)

v = decide_conjugacy(cat, other, ANY, 5)
print("\nverdict:", v.status, "witness", v.witness, "det", v.witness.det())
print("check Z A == B Z:", v.witness @ cat.matrix == other.matrix @ v.witness)

far = check_anosov([[3, 2], [1, 1]], "a")
v = decide_conjugacy(cat, far)
print("\nagainst", far.matrix, "->", v.status, "certificate", v.certificate)
