"""Singularity of the pencil ``alpha A + beta B + (1 - alpha - beta) C - I``.

A nonzero vector ``w`` with ``L(alpha, beta) w = 0`` is exactly a point whose
images ``x = A w``, ``y = B w``, ``z = C w`` satisfy
``w = z + alpha (x - z) + beta (y - z)``.  Everything here is evaluated on
the fixed-point-free part ``U`` of ``<A, B, C>``: ``L`` vanishes on the fixed
space, and a kernel vector there only produces the quadrilateral with all
four points equal.
"""
from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import __version__
from .exactnum import RatMatrix, as_rational, det, format_rational, kernel_basis, linear_combination
from .geometry import Degeneracy, Orbit, Quadrilateral, classify, orbit, quad_params
from .permgroup import PermGroup, Triple, TripleClass, is_transitive, triple_classes
from .poly import BivarPoly, UniPoly, interpolate_bivar, interpolate_uni
from .representation import DeletedRep, SubgroupContext

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TRANSCENDENTAL = "transcendental"


class DomainError(ValueError):
    pass


class NotTransitive(ValueError):
    pass


class CertificateFailure(RuntimeError):
    def __init__(self, triple: Triple, value: Fraction):
        super().__init__(f"pencil determinant vanishes at the witness point for triple "
                         f"{tuple(triple)} (det = {format_rational(value)})")
        self.triple = triple
        self.value = value


@dataclass(frozen=True)
class Pencil:
    context: SubgroupContext
    group_name: str = ""

    @property
    def dim(self) -> int:
        return self.context.dim

    @property
    def triple(self) -> Triple:
        return self.context.triple


def pencil_eval(p: Pencil, alpha, beta) -> RatMatrix:
    alpha, beta = as_rational(alpha), as_rational(beta)
    a, b, c = p.context.restricted
    ident = RatMatrix.identity(p.dim)
    return linear_combination((alpha, beta, 1 - alpha - beta, -1), (a, b, c, ident))


def pencil_det(p: Pencil, alpha, beta) -> Fraction:
    return det(pencil_eval(p, alpha, beta))


def pencil_poly(p: Pencil) -> BivarPoly:
    """``det L`` as a polynomial, interpolated from the ``(d+1) x (d+1)`` integer grid."""
    d = p.dim
    grid = {(i, j): pencil_det(p, i, j) for i in range(d + 1) for j in range(d + 1)}
    return interpolate_bivar(grid, (d, d))


def pencil_poly_symbolic(p: Pencil) -> BivarPoly:
    """``det L`` by cofactor expansion over polynomial entries (small ``d`` only)."""
    from .exactnum import det_cofactor

    a_var, b_var = BivarPoly.alpha(), BivarPoly.beta()
    c_var = 1 - a_var - b_var
    a, b, c = p.context.restricted
    rows = [[a_var * a[i, j] + b_var * b[i, j] + c_var * c[i, j] - (1 if i == j else 0)
             for j in range(p.dim)] for i in range(p.dim)]
    return BivarPoly.constant(1) if p.dim == 0 else det_cofactor(rows)


def slice_poly(group: PermGroup, t: Triple, alpha, rep: DeletedRep | None = None) -> UniPoly:
    """``R(beta) = det L(alpha, beta)`` for one triple, from ``d + 1`` evaluations."""
    rep = rep or DeletedRep(group)
    pen = Pencil(rep.context(t), group.name)
    alpha = as_rational(alpha)
    d = pen.dim
    return interpolate_uni([(j, pencil_det(pen, alpha, j)) for j in range(d + 1)], d)


def witness_beta(alpha) -> Fraction:
    """A beta at which every fixed-point-free pencil is nonsingular.

    For 0 < alpha < 1 the kernel equation makes ``w`` a convex combination
    of ``A w, B w, C w``; for alpha < 0 or alpha > 1 it rearranges into one
    with positive weights.  Strict convexity of the norm then forces
    ``w = A w = B w = C w``.
    """
    alpha = as_rational(alpha)
    if alpha == 0:
        raise DomainError("alpha = 0 is excluded: then w, z and y are collinear")
    if alpha == 1:
        raise DomainError("alpha = 1 is excluded: trapezia realize every beta there")
    if alpha < 0:
        return alpha
    return (1 - alpha) / 2


def _require_transitive(group: PermGroup) -> None:
    if not is_transitive(group):
        raise NotTransitive(f"{group.name} does not act transitively")


# -- per-triple work, shared by the serial path and worker processes --------

_worker_rep: DeletedRep | None = None


def _init_worker(group: PermGroup) -> None:
    global _worker_rep
    _worker_rep = DeletedRep(group)


def _det_record(rep: DeletedRep, tc: TripleClass, alpha, beta):
    ctx = rep.context(tc.triple)
    value = pencil_det(Pencil(ctx), alpha, beta)
    return tc, ctx.dim, value


def _det_chunk(args):
    chunk, alpha, beta = args
    return [_det_record(_worker_rep, tc, alpha, beta) for tc in chunk]


def _kernel_record(rep: DeletedRep, tc: TripleClass, alpha, beta):
    ctx = rep.context(tc.triple)
    if ctx.dim == 0:
        return None
    m = pencil_eval(Pencil(ctx), alpha, beta)
    if det(m) != 0:
        return None
    return tc, [ctx.lift(k) for k in kernel_basis(m)]


def _kernel_chunk(args):
    chunk, alpha, beta = args
    return [_kernel_record(_worker_rep, tc, alpha, beta) for tc in chunk]


def _fan_out(group: PermGroup, classes: Sequence[TripleClass], func, serial_func,
             alpha, beta, jobs: int, rep: DeletedRep | None):
    """Evaluate per class, serially or across processes; output keeps class order."""
    if jobs <= 1 or len(classes) < 2:
        rep = rep or DeletedRep(group)
        return [serial_func(rep, tc, alpha, beta) for tc in classes]
    size = max(1, -(-len(classes) // (jobs * 4)))
    chunks = [(classes[i:i + size], alpha, beta) for i in range(0, len(classes), size)]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=(group,)) as pool:
        # map() yields in submission order, so merging is deterministic
        return [r for part in pool.map(func, chunks) for r in part]


# -- membership ---------------------------------------------------------------

@dataclass
class MembershipHit:
    triple: Triple
    class_size: int
    kernel: list[tuple]  # ambient sum-zero vectors spanning ker L on U


def membership(group: PermGroup, alpha, beta, reduce: bool = True, jobs: int = 1,
               rep: DeletedRep | None = None) -> list[MembershipHit]:
    """Triples whose fixed-point-free pencil is singular at ``(alpha, beta)``.

    Triples generating the trivial action on ``U`` (dimension 0) are never
    reported.
    """
    _require_transitive(group)
    alpha, beta = as_rational(alpha), as_rational(beta)
    classes = triple_classes(group, reduce)
    results = _fan_out(group, classes, _kernel_chunk, _kernel_record, alpha, beta, jobs, rep)
    return [MembershipHit(tc.triple, tc.size, kern) for tc, kern in filter(None, results)]


# -- certificates -------------------------------------------------------------

@dataclass
class ClassRecord:
    triple: Triple
    class_size: int
    restricted_dim: int
    det: Fraction


@dataclass
class NonEmbeddingCertificate:
    group_name: str
    degree: int
    order: int
    alpha: Fraction
    witness_beta: Fraction
    classes: list[ClassRecord]
    conclusion: str
    toolchain: str = f"transquad {__version__}"
    elapsed_ms: int | None = None

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": {"name": self.group_name, "degree": self.degree, "order": self.order},
            "alpha": format_rational(self.alpha),
            "beta": TRANSCENDENTAL,
            "witness_beta": format_rational(self.witness_beta),
            "classes": [{"triple": list(r.triple), "class_size": r.class_size,
                         "restricted_dim": r.restricted_dim, "det": format_rational(r.det)}
                        for r in self.classes],
            "conclusion": self.conclusion,
            "toolchain": self.toolchain,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def check_certificate(cert: NonEmbeddingCertificate) -> bool:
    """Independent re-check of the recorded determinants, coverage and witness beta."""
    return (all(r.det != 0 for r in cert.classes)
            and sum(r.class_size for r in cert.classes) == cert.order ** 3
            and cert.witness_beta == witness_beta(cert.alpha))


def _conclusion(group: PermGroup, alpha: Fraction, wb: Fraction) -> str:
    a = format_rational(alpha)
    return (
        f"For every triple class of {group.name} (order {group.order}, degree "
        f"{group.degree}) the pencil determinant on the fixed-point-free subspace is "
        f"nonzero at (alpha, beta) = ({a}, {format_rational(wb)}). Hence each slice "
        f"R(beta) = P({a}, beta) is a nonzero polynomial with rational coefficients, "
        f"so R(beta) != 0 for every beta transcendental over Q({a}); the pencil then has "
        f"no kernel vector outside the fixed space, and the only quadrilaterals with "
        f"parameters ({a}, beta) in orbits of this group have all four points equal. "
        f"No transitive set arising as an orbit of this action contains a "
        f"quadrilateral with at least two distinct points and these parameters."
    )


def certify(group: PermGroup, alpha, reduce: bool = True, jobs: int = 1,
            rep: DeletedRep | None = None, timing: bool = False) -> NonEmbeddingCertificate:
    """Certify that ``(alpha, beta)`` is not realized for transcendental ``beta``.

    Raises :class:`CertificateFailure` on the first (in class order) triple
    whose determinant vanishes at the witness beta.
    """
    t0 = time.perf_counter()
    alpha = as_rational(alpha)
    wb = witness_beta(alpha)
    _require_transitive(group)
    classes = triple_classes(group, reduce)
    results = _fan_out(group, classes, _det_chunk, _det_record, alpha, wb, jobs, rep)
    records = []
    for tc, dim, value in results:
        if value == 0:
            raise CertificateFailure(tc.triple, value)
        records.append(ClassRecord(tc.triple, tc.size, dim, value))
    elapsed = round((time.perf_counter() - t0) * 1000) if timing else None
    logger.info("certified %s at alpha=%s over %d classes", group.name, alpha, len(records))
    return NonEmbeddingCertificate(group.name, group.degree, group.order, alpha, wb,
                                   records, _conclusion(group, alpha, wb), elapsed_ms=elapsed)


# -- embedding witnesses ------------------------------------------------------

@dataclass
class EmbeddingWitness:
    group_name: str
    triple: Triple
    w: tuple
    orbit: Orbit
    quad: tuple[int, int, int, int]  # positions of x, y, z, w in the orbit
    alpha: Fraction
    beta: Fraction
    degeneracy: Degeneracy
    elapsed_ms: int | None = None

    @property
    def points(self) -> Quadrilateral:
        return Quadrilateral(*(self.orbit.points[i] for i in self.quad))

    def to_json(self) -> dict:
        fmt = lambda v: [format_rational(e) for e in v]  # noqa: E731
        x, y, z, w = self.quad
        return {
            "schema_version": SCHEMA_VERSION,
            "group": {"name": self.group_name, "degree": len(self.w),
                      "orbit_size": len(self.orbit)},
            "alpha": format_rational(self.alpha),
            "beta": format_rational(self.beta),
            "triple": list(self.triple),
            "degeneracy": self.degeneracy.value,
            "w": fmt(self.w),
            "quad": {"x": x, "y": y, "z": z, "w": w},
            "points": {k: fmt(self.orbit.points[i]) for k, i in zip("xyzw", self.quad)},
            "orbit": [fmt(p) for p in self.orbit.points],
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def sample_coefficients(attempt: int, n: int) -> list[int]:
    """Deterministic coefficients (1,1,..), (1,2,4,..), (1,3,9,..), ..."""
    return [(attempt + 1) ** k for k in range(n)]


_RANK = {Degeneracy.ALL_DISTINCT: 0, Degeneracy.PARTIALLY_COINCIDENT: 1, Degeneracy.TRIVIAL: 2}


def embed(group: PermGroup, alpha, beta, attempts: int = 16, reduce: bool = True,
          jobs: int = 1, rep: DeletedRep | None = None,
          timing: bool = False) -> EmbeddingWitness | None:
    """Find an orbit containing a quadrilateral with parameters ``(alpha, beta)``.

    Prefers four distinct points; otherwise returns the least degenerate
    quadrilateral found, or ``None``.
    """
    t0 = time.perf_counter()
    alpha, beta = as_rational(alpha), as_rational(beta)
    rep = rep or DeletedRep(group)
    best: tuple | None = None
    for hit in membership(group, alpha, beta, reduce=reduce, jobs=jobs, rep=rep):
        a, b, c = (group.elements[k] for k in hit.triple)
        for attempt in range(attempts):
            coeffs = sample_coefficients(attempt, len(hit.kernel))
            w = tuple(sum((k * v[i] for k, v in zip(coeffs, hit.kernel)), Fraction(0))
                      for i in range(group.degree))
            if not any(w):
                continue
            pts = (a.act(w), b.act(w), c.act(w), w)
            kind = classify(pts)
            if best is None or _RANK[kind] < _RANK[best[0]]:
                best = (kind, hit.triple, w, pts)
            if kind is Degeneracy.ALL_DISTINCT:
                break
        if best is not None and best[0] is Degeneracy.ALL_DISTINCT:
            break
    if best is None:
        return None
    kind, triple, w, pts = best
    orb = orbit(group, w)
    quad = tuple(orb.index[p] for p in pts)
    witness = EmbeddingWitness(group.name, triple, w, orb, quad, alpha, beta, kind)
    if kind is Degeneracy.ALL_DISTINCT:
        params = quad_params(witness.points)
        assert (params.alpha, params.beta) == (alpha, beta) or params.non_unique
    if timing:
        witness.elapsed_ms = round((time.perf_counter() - t0) * 1000)
    return witness


def default_jobs() -> int:
    return os.cpu_count() or 1
