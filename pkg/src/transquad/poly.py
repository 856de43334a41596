"""Univariate and bivariate polynomials with rational coefficients.

Polynomials here are built from evaluations: a determinant is sampled on an
integer grid and the coefficients are recovered by interpolation.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactnum import as_rational, format_rational, parse_rational


class InterpolationError(ValueError):
    pass


class UniPoly:
    """Polynomial in one variable; ``coeffs[i]`` multiplies ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        return eval_uni(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def eval_uni(p: UniPoly, x) -> Fraction:
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _newton_coeffs(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    # Divided differences converted to the monomial basis.
    n = len(xs)
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[k]) + dd[k]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[k] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[k]
    return coeffs


def interpolate_uni(samples: Sequence[tuple], degree_bound: int) -> UniPoly:
    """Unique polynomial of degree <= ``degree_bound`` through ``samples``.

    Extra samples beyond ``degree_bound + 1`` are used as consistency checks.
    """
    pts = [(as_rational(x), as_rational(y)) for x, y in samples]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise InterpolationError("duplicate abscissae")
    if len(pts) < degree_bound + 1:
        raise InterpolationError(
            f"{len(pts)} samples cannot determine a degree-{degree_bound} polynomial")
    head = pts[:degree_bound + 1]
    p = UniPoly(_newton_coeffs([x for x, _ in head], [y for _, y in head]))
    for x, y in pts[degree_bound + 1:]:
        if eval_uni(p, x) != y:
            raise InterpolationError(f"samples inconsistent with degree bound {degree_bound}")
    return p


class BivarPoly:
    """Sparse polynomial in (alpha, beta), keyed by exponent pairs."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            c = as_rational(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def constant(cls, c) -> BivarPoly:
        return cls({(0, 0): c})

    @classmethod
    def alpha(cls) -> BivarPoly:
        return cls({(1, 0): 1})

    @classmethod
    def beta(cls) -> BivarPoly:
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree_alpha(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    @property
    def degree_beta(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "BivarPoly(0)"
        parts = [f"{format_rational(c)}*a^{i}*b^{j}" for (i, j), c in self._terms.items()]
        return "BivarPoly(" + " + ".join(parts) + ")"

    @staticmethod
    def _lift(x) -> BivarPoly:
        return x if isinstance(x, BivarPoly) else BivarPoly.constant(x)

    def __add__(self, other) -> BivarPoly:
        other = self._lift(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        return BivarPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> BivarPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> BivarPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> BivarPoly:
        other = self._lift(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out)

    __rmul__ = __mul__

    def __call__(self, a, b) -> Fraction:
        return eval_bivar(self, a, b)

    def slice_alpha(self, a) -> UniPoly:
        """Specialize alpha, leaving a polynomial in beta."""
        a = as_rational(a)
        coeffs = [Fraction(0)] * (self.degree_beta + 1)
        for (i, j), c in self._terms.items():
            coeffs[j] += c * a ** i
        return UniPoly(coeffs)

    def to_json(self) -> list[dict]:
        return [{"da": i, "db": j, "coeff": format_rational(c)}
                for (i, j), c in self._terms.items()]

    @classmethod
    def from_json(cls, terms: Sequence[Mapping]) -> BivarPoly:
        return cls({(t["da"], t["db"]): parse_rational(t["coeff"]) for t in terms})


def eval_bivar(p: BivarPoly, a, b) -> Fraction:
    a, b = as_rational(a), as_rational(b)
    # Horner in beta for each alpha-row, then Horner in alpha.
    rows: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in p._terms.items():
        rows.setdefault(i, {})[j] = c
    acc = Fraction(0)
    for i in range(p.degree_alpha, -1, -1):
        row = rows.get(i, {})
        inner = Fraction(0)
        for j in range(max(row, default=-1), -1, -1):
            inner = inner * b + row.get(j, 0)
        acc = acc * a + inner
    return acc


def interpolate_bivar(grid: Mapping[tuple, object], bounds: tuple[int, int]) -> BivarPoly:
    """Recover a polynomial from its values on a full tensor grid.

    ``bounds`` are the degree bounds in alpha and beta.  The grid must be the
    product of two abscissa sets, each with at least ``bound + 1`` values.
    """
    values = {(as_rational(a), as_rational(b)): as_rational(v) for (a, b), v in grid.items()}
    alphas = sorted({a for a, _ in values})
    betas = sorted({b for _, b in values})
    if len(values) != len(alphas) * len(betas):
        raise InterpolationError("grid is not a full tensor product")
    da, db = bounds
    # beta-direction first: one univariate fit per alpha row
    row_coeffs = []
    for a in alphas:
        p = interpolate_uni([(b, values[(a, b)]) for b in betas], db)
        row_coeffs.append(list(p.coeffs) + [Fraction(0)] * (db + 1 - len(p.coeffs)))
    terms = {}
    for j in range(db + 1):
        q = interpolate_uni([(a, rc[j]) for a, rc in zip(alphas, row_coeffs)], da)
        for i, c in enumerate(q.coeffs):
            terms[(i, j)] = c
    return BivarPoly(terms)
