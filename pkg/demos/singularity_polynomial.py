"""The zero set of ``det L(alpha, beta)`` for a few triples of S3.

Points of the zero set are exactly the parameter pairs realized by some
orbit point.  The script prints each class polynomial and then shows that a
pair on the zero set is realized while a generic pair is not.
"""
from fractions import Fraction

from transquad.criterion import Pencil, embed, membership, pencil_poly
from transquad.permgroup import catalog, triples_reduced
from transquad.representation import DeletedRep

g = catalog("symmetric", 3)
rep = DeletedRep(g)


def show(poly):
    terms = [f"{c}*a^{i}*b^{j}" for (i, j), c in poly.terms.items()]
    return " + ".join(terms) or "0"


for tc in triples_reduced(g)[:12]:
    pen = Pencil(rep.context(tc.triple))
    print(f"{tuple(tc.triple)} x{tc.size}, dim {pen.dim}: {show(pencil_poly(pen))}")

for alpha, beta in [(Fraction(1), Fraction(1, 2)), (Fraction(1, 3), Fraction(2, 7))]:
    hits = membership(g, alpha, beta)
    wit = embed(g, alpha, beta) if hits else None
    print(f"({alpha}, {beta}): {len(hits)} singular classes, witness "
          f"{wit.degeneracy.value if wit else None}")
