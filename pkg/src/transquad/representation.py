"""The sum-zero permutation representation and its fixed-point-free parts.

Two coordinate systems are in play.  Determinant work uses the basis
``f_i = e_i - e_n`` (i < n) of the sum-zero subspace, where permutations act
by integer matrices.  Geometry uses ambient length-``n`` vectors whose
entries sum to zero; there the standard inner product is invariant.  A
sum-zero ambient vector ``v`` has ``f``-coordinates ``v[:n-1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import RatMatrix, nullspace
from .permgroup import Perm, PermGroup, Triple, close


def deleted_matrix(p: Perm) -> RatMatrix:
    """Matrix of ``p`` on the sum-zero subspace in the basis ``e_i - e_n``."""
    n = p.degree
    d = n - 1
    rows = [[0] * d for _ in range(d)]
    last = p(n - 1) if n else 0
    for i in range(d):
        # p(e_i - e_n) = f_{p(i)} - f_{p(n)}, with f_n = 0
        if p(i) != n - 1:
            rows[p(i)][i] += 1
        if last != n - 1:
            rows[last][i] -= 1
    return RatMatrix(d, d, (e for r in rows for e in r))


def to_ambient(coords: Sequence) -> tuple:
    """Lift ``f``-coordinates to an ambient sum-zero vector."""
    return tuple(coords) + (-sum(coords, Fraction(0)),)


def to_deleted(v: Sequence) -> tuple:
    return tuple(v[:-1])


def fixed_subspace(group: PermGroup, elements: Iterable[int]) -> list[tuple]:
    """Basis (ambient coordinates) of the sum-zero vectors fixed by ``elements``.

    Computed as the common kernel of ``M(g) - I`` over the given elements,
    which need only generate the subgroup.
    """
    d = group.degree - 1
    ident = RatMatrix.identity(d)
    rows = []
    for k in set(elements):
        if k == 0:
            continue
        m = deleted_matrix(group.elements[k]) - ident
        rows.extend(m.row(i) for i in range(d))
    if not rows:
        rows = [[0] * d] if d else []
    stacked = RatMatrix(len(rows), d, (e for r in rows for e in r))
    basis, _ = nullspace(stacked)
    return [to_ambient(v) for v in basis]


@dataclass(frozen=True)
class SubgroupContext:
    """A triple together with the fixed-point-free part ``U`` of ``<A,B,C>``.

    ``complement_basis`` spans ``U`` in ambient coordinates.  Basis vector
    ``k`` is 1 at ``coordinate_columns[k]`` and 0 at the other listed
    columns, so a vector of ``U`` has basis coordinates read off there.
    """
    triple: Triple
    subgroup_elements: tuple[int, ...]
    fixed_basis: tuple[tuple, ...]
    complement_basis: tuple[tuple, ...]
    coordinate_columns: tuple[int, ...]
    restricted: tuple[RatMatrix, RatMatrix, RatMatrix]

    @property
    def fixed_dim(self) -> int:
        return len(self.fixed_basis)

    @property
    def dim(self) -> int:
        return len(self.complement_basis)

    def coordinates(self, v: Sequence) -> tuple:
        return tuple(v[c] for c in self.coordinate_columns)

    def lift(self, coords: Sequence) -> tuple:
        """Ambient vector with the given coordinates in the ``U`` basis."""
        n = len(self.complement_basis[0]) if self.complement_basis else 0
        out = [Fraction(0)] * n
        for c, u in zip(coords, self.complement_basis):
            if c:
                for i, x in enumerate(u):
                    out[i] += c * x
        return tuple(out)


class _Complement:
    __slots__ = ("elements", "fixed", "basis", "columns", "_restricted")

    def __init__(self, elements, fixed, basis, columns):
        self.elements = elements
        self.fixed = fixed
        self.basis = basis
        self.columns = columns
        self._restricted: dict[int, RatMatrix] = {}


class DeletedRep:
    """Sum-zero representation of a group, with per-subgroup caches.

    Contexts for triples generating the same subgroup share the fixed-space
    and complement computations.
    """

    def __init__(self, group: PermGroup):
        self.group = group
        self.dim = group.degree - 1
        self._matrices: dict[int, RatMatrix] = {}
        self._by_generators: dict[frozenset, _Complement] = {}
        self._by_subgroup: dict[frozenset, _Complement] = {}

    def matrix(self, k: int) -> RatMatrix:
        m = self._matrices.get(k)
        if m is None:
            m = self._matrices[k] = deleted_matrix(self.group.elements[k])
        return m

    def _complement(self, gens: frozenset) -> _Complement:
        comp = self._by_generators.get(gens)
        if comp is not None:
            return comp
        g = self.group
        sub = close([g.elements[k] for k in sorted(gens)], cap=g.order, degree=g.degree)
        elements = tuple(g.index(p) for p in sub.elements)
        key = frozenset(elements)
        comp = self._by_subgroup.get(key)
        if comp is None:
            fixed = fixed_subspace(g, gens)
            n = g.degree
            rows = [[1] * n] + [list(f) for f in fixed]
            basis, free = nullspace(RatMatrix(len(rows), n, (e for r in rows for e in r)))
            comp = _Complement(elements, tuple(fixed), tuple(basis), tuple(free))
            self._by_subgroup[key] = comp
        self._by_generators[gens] = comp
        return comp

    def _restrict(self, comp: _Complement, k: int) -> RatMatrix:
        m = comp._restricted.get(k)
        if m is None:
            p = self.group.elements[k]
            cols = [p.act(u) for u in comp.basis]
            m = RatMatrix.from_columns([[v[c] for c in comp.columns] for v in cols],
                                       rows=len(comp.columns))
            comp._restricted[k] = m
        return m

    def context(self, t: Triple) -> SubgroupContext:
        t = Triple(*t)
        comp = self._complement(frozenset(t))
        return SubgroupContext(
            triple=t,
            subgroup_elements=comp.elements,
            fixed_basis=comp.fixed,
            complement_basis=comp.basis,
            coordinate_columns=comp.columns,
            restricted=(self._restrict(comp, t.a), self._restrict(comp, t.b),
                        self._restrict(comp, t.c)),
        )


def build_context(rep: DeletedRep, t: Triple) -> SubgroupContext:
    return rep.context(t)
