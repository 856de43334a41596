"""Why no transitive orbit of a small group contains a kite with a transcendental side ratio.

A kite's side ratio parameter ``a`` determines ``(alpha, beta) = (-1, a + 1)``.
For transcendental ``a`` the second parameter is transcendental too, so the
question reduces to whether some pencil polynomial vanishes identically along
``alpha = -1``.  A single nonzero value per triple class rules that out.
"""
from fractions import Fraction

from transquad.criterion import certify
from transquad.geometry import kite_params
from transquad.permgroup import catalog

alpha, beta = kite_params(Fraction(1, 3))
print(f"kite with a = 1/3 has parameters ({alpha}, {beta})")

for name, n in [("cyclic", 6), ("dihedral", 5), ("symmetric", 4)]:
    g = catalog(name, n)
    cert = certify(g, alpha)
    nonzero = [r.det for r in cert.classes]
    print(f"{g.name:14s} order {g.order:3d}: {len(cert.classes):4d} classes, "
          f"witness beta {cert.witness_beta}, smallest |det| {min(map(abs, nonzero))}")

print()
print(cert.conclusion)
