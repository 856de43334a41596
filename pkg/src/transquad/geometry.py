"""Exact geometry of quadrilaterals and group orbits.

A quadrilateral is an ordered 4-tuple ``(x, y, z, w)`` of points with a
common dimension.  Its parameters ``(alpha, beta)`` satisfy
``w = z + alpha (x - z) + beta (y - z)``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple, Sequence

import numpy as np

from .exactnum import RatMatrix, as_rational, dot, rank, solve, vector
from .permgroup import PermGroup

DEFAULT_SCAN_CAP = 12


class NotCoplanar(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


class Degeneracy(str, Enum):
    ALL_DISTINCT = "all-distinct"
    PARTIALLY_COINCIDENT = "partially-coincident"
    TRIVIAL = "trivial"


class Quadrilateral(NamedTuple):
    x: tuple
    y: tuple
    z: tuple
    w: tuple

    @classmethod
    def of(cls, x, y, z, w) -> Quadrilateral:
        pts = [vector(p) for p in (x, y, z, w)]
        if len({len(p) for p in pts}) != 1:
            raise ValueError("quadrilateral points of differing dimension")
        return cls(*pts)


class Params(NamedTuple):
    alpha: Fraction
    beta: Fraction
    non_unique: bool = False


def _sub(p, q) -> tuple:
    return tuple(a - b for a, b in zip(p, q))


def sqdist(p, q) -> Fraction:
    d = _sub(p, q)
    return dot(d, d)


def classify(points: Sequence) -> Degeneracy:
    distinct = len(set(map(tuple, points)))
    if distinct == 1:
        return Degeneracy.TRIVIAL
    if distinct == len(points):
        return Degeneracy.ALL_DISTINCT
    return Degeneracy.PARTIALLY_COINCIDENT


def quad_params(q: Quadrilateral) -> Params:
    """Solve ``w - z = alpha (x - z) + beta (y - z)`` exactly.

    Raises :class:`NotCoplanar` when ``w`` is off the affine span of x, y, z.
    """
    x, y, z, w = q
    m = RatMatrix.from_columns([_sub(x, z), _sub(y, z)], rows=len(z))
    sol = solve(m, _sub(w, z))
    if sol is None:
        raise NotCoplanar("w is not in the affine span of x, y, z")
    a, b = sol.vector
    return Params(a, b, sol.non_unique)


def satisfies_relation(q: Quadrilateral, alpha, beta) -> bool:
    x, y, z, w = q
    alpha, beta = as_rational(alpha), as_rational(beta)
    return all(wi == zi + alpha * (xi - zi) + beta * (yi - zi)
               for xi, yi, zi, wi in zip(x, y, z, w))


@functools.cache
def _check_kite_derivation() -> None:
    # Float cross-check of the closed form at a = 1/2, done once.
    a = 0.5
    h = np.sqrt(1 - a * a)
    z, y, x, w = np.array([-1.0, 0]), np.array([1.0, 0]), np.array([a, h]), np.array([a, -h])
    sol, *_ = np.linalg.lstsq(np.column_stack([x - z, y - z]), w - z, rcond=None)
    if not np.allclose(sol, [-1.0, a + 1], atol=1e-9, rtol=0):
        raise AssertionError(f"kite parameters drifted: {sol}")


def kite_params(a) -> tuple[Fraction, Fraction]:
    """Parameters of the kite (-1,0), (1,0), (a, s), (a, -s) with s = sqrt(1-a^2).

    With z=(-1,0), y=(1,0), x=(a,s), w=(a,-s): the second coordinate forces
    alpha = -1 and the first gives a + 1 = -(a + 1) + 2 beta.
    """
    a = as_rational(a)
    if not -1 < a < 1:
        raise ValueError(f"kite needs -1 < a < 1, got {a}")
    _check_kite_derivation()
    return Fraction(-1), a + 1


def _affine_directions(points: Sequence) -> list[tuple]:
    base = points[0]
    dirs = []
    for p in points[1:]:
        cand = dirs + [_sub(p, base)]
        if rank(RatMatrix.from_rows(cand)) == len(cand):
            dirs = cand
    return dirs


def is_concyclic(q: Quadrilateral) -> bool:
    """True iff the four (distinct, coplanar) points lie on one circle.

    The centre ``c = x + sum t_k d_k`` is sought in the affine hull; every
    point must satisfy ``|p|^2 - 2<p, c> = K`` for one constant ``K``.
    """
    pts = list(q)
    if classify(pts) is not Degeneracy.ALL_DISTINCT:
        raise DegenerateInput("concyclicity needs four distinct points")
    dirs = _affine_directions(pts)
    if len(dirs) > 2:
        raise DegenerateInput("points are not coplanar")
    base = pts[0]
    # unknowns (t_1..t_k, K):  -2<p, d_k> t_k - K = 2<p, base> - |p|^2
    rows, rhs = [], []
    for p in pts:
        rows.append([-2 * dot(p, d) for d in dirs] + [Fraction(-1)])
        rhs.append(2 * dot(p, base) - dot(p, p))
    return solve(RatMatrix.from_rows(rows), rhs) is not None


def _orient(p, q, r) -> int:
    v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (v > 0) - (v < 0)


def convex_position(alpha, beta) -> bool:
    """Whether z=(0,0), x=(1,0), y=(0,1), w=(alpha,beta) are in convex position.

    Three collinear points count as not convex.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    pts = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
           (Fraction(0), Fraction(1)), (alpha, beta)]
    if len(set(pts)) < 4:
        raise DegenerateInput(f"chart point ({alpha}, {beta}) coincides with a vertex")
    for i in range(4):
        tri = [pts[j] for j in range(4) if j != i]
        o = _orient(*tri)
        if o == 0:
            return False
        p = pts[i]
        if (_orient(tri[0], tri[1], p) == o and _orient(tri[1], tri[2], p) == o
                and _orient(tri[2], tri[0], p) == o):
            return False
    return True


@dataclass
class Orbit:
    group_name: str
    start: tuple
    points: list[tuple]
    index: dict = field(default_factory=dict)
    # action[g][i]: position of g applied to points[i]
    action: list[list[int]] = field(default_factory=list, repr=False)

    def __len__(self) -> int:
        return len(self.points)


def orbit(group: PermGroup, start: Sequence) -> Orbit:
    start = vector(start)
    if len(start) != group.degree:
        raise ValueError(f"start vector of length {len(start)} for degree {group.degree}")
    if sum(start) != 0:
        raise ValueError("start vector must have entries summing to zero")
    if not any(start):
        raise ValueError("start vector must be nonzero")
    points = []
    index: dict[tuple, int] = {}
    for g in group.elements:
        p = g.act(start)
        if p not in index:
            index[p] = len(points)
            points.append(p)
    norm = dot(start, start)
    if any(dot(p, p) != norm for p in points):
        raise AssertionError("orbit points of unequal norm")
    action = [[index[g.act(p)] for p in points] for g in group.elements]
    return Orbit(group.name, start, points, index, action)


class ScanHit(NamedTuple):
    indices: tuple[int, int, int, int]
    params: Params
    triple: tuple[int, int, int]


def orbit_quad_scan(o: Orbit, group: PermGroup, cap: int = DEFAULT_SCAN_CAP) -> list[ScanHit]:
    """Every ordered quadruple of distinct orbit points with unique parameters.

    Each hit carries the least element indices ``(A, B, C)`` sending ``w`` to
    ``x``, ``y``, ``z``.
    """
    size = len(o)
    if size > cap:
        raise ValueError(f"orbit of {size} points exceeds scan cap {cap}")
    # first[w][x]: least element index sending point w to point x
    first = [[-1] * size for _ in range(size)]
    for k, row in enumerate(o.action):
        for w, x in enumerate(row):
            if first[w][x] < 0:
                first[w][x] = k
    hits = []
    for x, y, z, w in permutations(range(size), 4):
        q = Quadrilateral(o.points[x], o.points[y], o.points[z], o.points[w])
        try:
            params = quad_params(q)
        except NotCoplanar:
            continue
        if params.non_unique:
            continue
        hits.append(ScanHit((x, y, z, w), params, (first[w][x], first[w][y], first[w][z])))
    return hits
