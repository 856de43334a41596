"""Isosceles trapezia inside an orbit of the dihedral group of order 8.

With ``alpha = 1`` the relation ``w = x + beta (y - z)`` describes a
trapezium.  Every beta is realized by some orbit; this script finds one for
a few values and checks that the four points lie on a sphere.
"""
from fractions import Fraction

from transquad.criterion import embed
from transquad.geometry import is_concyclic, quad_params, sqdist
from transquad.permgroup import catalog

g = catalog("regular_dihedral8")
for beta in (Fraction(2), Fraction(3), Fraction(5, 2), Fraction(-7, 3)):
    wit = embed(g, 1, beta)
    x, y, z, w = wit.points
    p = quad_params(wit.points)
    print(f"beta = {beta}: params ({p.alpha}, {p.beta}), concyclic {is_concyclic(wit.points)}, "
          f"|xw|^2/|zy|^2 = {sqdist(x, w) / sqdist(z, y)}")
