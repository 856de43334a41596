"""End-to-end checks of the library's claims on small groups.

Each ``check_*`` function returns a :class:`CheckResult`; :func:`run_suite`
runs them all.  Witnesses produced along the way are pooled and every one
with four distinct points is tested for concyclicity at the end.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .criterion import (EmbeddingWitness, Pencil, certify, embed, membership, pencil_det,
                        pencil_poly, pencil_poly_symbolic, slice_poly, witness_beta)
from .geometry import (DEFAULT_SCAN_CAP, Degeneracy, Quadrilateral, convex_position, is_concyclic, kite_params,
                       orbit, orbit_quad_scan, quad_params, satisfies_relation, sqdist)
from .permgroup import PermGroup, all_triples, catalog, triples_reduced
from .representation import DeletedRep

WITNESS_ALPHAS = (Fraction(-1), Fraction(1, 2), Fraction(2))
TRAPEZIUM_BETAS = (Fraction(2), Fraction(3), Fraction(5, 2))
SYMBOLIC_DIM_LIMIT = 4


@dataclass
class CheckResult:
    name: str
    description: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.description} ({self.seconds:.2f}s) {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def criterion_groups(max_degree: int = 8) -> list[PermGroup]:
    """Cyclic 2..8, dihedral 3..8, S3, S4, A4 and D8 acting on itself."""
    specs = ([("cyclic", n) for n in range(2, 9)] + [("dihedral", n) for n in range(3, 9)]
             + [("symmetric", 3), ("symmetric", 4), ("alternating", 4)])
    groups = [catalog(name, n) for name, n in specs if n <= max_degree]
    if max_degree >= 8:
        groups.append(catalog("regular_dihedral8"))
    return groups


@dataclass
class SuiteState:
    groups: list[PermGroup]
    reps: dict = field(default_factory=dict)
    witnesses: list[EmbeddingWitness] = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    scan_cap: int = DEFAULT_SCAN_CAP

    def rep(self, g: PermGroup) -> DeletedRep:
        if g.name not in self.reps:
            self.reps[g.name] = DeletedRep(g)
        return self.reps[g.name]


def _timed(name: str, description: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, description, ok, detail, time.perf_counter() - t0)


def check_kite(state: SuiteState) -> CheckResult:
    def run():
        alpha, _ = kite_params(Fraction(1, 2))
        failures = []
        for g in state.groups:
            cert = certify(g, alpha, rep=state.rep(g))
            state.certificates[g.name] = cert.dumps()
            covered = sum(r.class_size for r in cert.classes)
            if covered != g.order ** 3 or any(r.det == 0 for r in cert.classes):
                failures.append(g.name)
        return not failures, f"{len(state.groups)} groups certified at alpha={alpha}" + (
            f"; failed: {failures}" if failures else "")
    return _timed("kite", "kite parameters (-1, a+1) certified for transcendental a", run)


def check_witness_cases(state: SuiteState) -> CheckResult:
    def run():
        zeros = []
        count = 0
        for g in state.groups:
            rep = state.rep(g)
            for tc in all_triples(g):
                pen = Pencil(rep.context(tc.triple))
                for a in WITNESS_ALPHAS:
                    count += 1
                    if pencil_det(pen, a, witness_beta(a)) == 0:
                        zeros.append((g.name, tuple(tc.triple), str(a)))
        return not zeros, f"{count} determinants, {len(zeros)} zero" + (
            f": {zeros[:5]}" if zeros else "")
    return _timed("witness-beta", "det L(alpha, witness_beta(alpha)) != 0 on every triple", run)


def _random_start(rng: random.Random, degree: int) -> tuple:
    while True:
        head = [Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3))) for _ in range(degree - 1)]
        v = tuple(head) + (-sum(head, Fraction(0)),)
        if any(v):
            return v


def random_starts(g: PermGroup, rng: random.Random, rep: DeletedRep, count: int = 6) -> list:
    """Generic sum-zero starts, plus starts inside the fixed space and the
    fixed-point-free part of a random cyclic subgroup (lower-dimensional,
    often planar, orbits)."""
    starts = [_random_start(rng, g.degree) for _ in range(count // 2)]
    while len(starts) < count:
        k = rng.randrange(g.order)
        ctx = rep.context((k, k, k))
        for basis in (ctx.fixed_basis, ctx.complement_basis):
            coeffs = [Fraction(rng.randint(-5, 5), rng.choice((1, 2))) for _ in basis]
            v = tuple(sum((c * u[i] for c, u in zip(coeffs, basis)), Fraction(0))
                      for i in range(g.degree))
            if any(v):
                starts.append(v)
    return starts[:count]


def relation_scan(points: list[tuple], alpha, beta) -> list[tuple[int, int, int, int]]:
    """Brute force: all index 4-tuples (repeats allowed) satisfying the affine
    relation whose points are not all equal."""
    out = []
    size = len(points)
    for idx in product(range(size), repeat=4):
        if len(set(idx)) == 1:
            continue
        q = Quadrilateral(*(points[i] for i in idx))
        if satisfies_relation(q, alpha, beta):
            out.append(idx)
    return out


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def oracle_samples(g: PermGroup, rng: random.Random, orbits, count: int = 50,
                   cap: int = DEFAULT_SCAN_CAP):
    """Parameter samples: harvested from orbit scans, on coordinate lines, and random."""
    harvested = sorted({(h.params.alpha, h.params.beta)
                        for o in orbits for h in orbit_quad_scan(o, g, cap)})
    samples = rng.sample(harvested, min(len(harvested), count // 2))
    lines = []
    while len(samples) + len(lines) < count * 3 // 4:
        r = _random_rational(rng)
        lines.append([(Fraction(0), r), (r, Fraction(0)), (r, 1 - r)][len(lines) % 3])
    samples += lines
    while len(samples) < count:
        samples.append((_random_rational(rng), _random_rational(rng)))
    return samples, harvested


def check_oracle_equivalence(state: SuiteState, seed: int = 20240601) -> CheckResult:
    def run():
        rng = random.Random(seed)
        problems = []
        tallies = []
        for name, n in [("cyclic", 2), ("cyclic", 3), ("cyclic", 4), ("symmetric", 3)]:
            g = catalog(name, n)
            rep = DeletedRep(g)
            orbits = [orbit(g, s) for s in random_starts(g, rng, rep, count=8)]
            # every scanned quadruple lies on its own triple's zero set
            slices = {}
            scanned = 0
            for o in orbits:
                for h in orbit_quad_scan(o, g, state.scan_cap):
                    key = (h.triple, h.params.alpha)
                    if key not in slices:
                        slices[key] = slice_poly(g, h.triple, h.params.alpha, rep)
                    scanned += 1
                    if slices[key](h.params.beta) != 0:
                        problems.append(f"{g.name}: scan hit {h} off its zero set")
            samples, harvested = oracle_samples(g, rng, orbits, cap=state.scan_cap)
            members = 0
            for a, b in samples:
                hits = membership(g, a, b, rep=rep)
                if hits:
                    members += 1
                    for hit in hits:
                        w = tuple(sum(col) for col in zip(*hit.kernel))
                        for start in [*hit.kernel, w]:
                            if not any(start):
                                continue
                            if not relation_scan(orbit(g, start).points, a, b):
                                problems.append(f"{g.name}: ({a},{b}) kernel orbit lacks quad")
                else:
                    if (a, b) in harvested:
                        problems.append(f"{g.name}: harvested ({a},{b}) not a member")
                    for o in orbits:
                        if relation_scan(o.points, a, b):
                            problems.append(f"{g.name}: ({a},{b}) found in orbit, not member")
            tallies.append(f"{g.name}: {members}/{len(samples)} members, {scanned} scan hits")
        return not problems, "; ".join(tallies) + (f"; problems: {problems[:3]}" if problems else "")
    return _timed("oracle", "zero-set membership agrees with brute-force orbit scans", run)


def check_trapezium(state: SuiteState) -> CheckResult:
    def run():
        g = catalog("regular_dihedral8")
        notes = []
        ok = True
        for b in TRAPEZIUM_BETAS:
            wit = embed(g, 1, b, rep=state.rep(g) if g.name in state.reps else None)
            if wit is None or wit.degeneracy is not Degeneracy.ALL_DISTINCT:
                ok = False
                notes.append(f"beta={b}: no distinct witness")
                continue
            state.witnesses.append(wit)
            p = quad_params(wit.points)
            good = is_concyclic(wit.points) and (p.alpha, p.beta) == (1, b) and not p.non_unique
            ok &= good
            notes.append(f"beta={b}: triple {tuple(wit.triple)} orbit {len(wit.orbit)}"
                         + ("" if good else " FAILED"))
        return ok, "; ".join(notes)
    return _timed("trapezium", "regular D8 realizes alpha=1 trapezia, concyclic", run)


def check_square(state: SuiteState) -> CheckResult:
    def run():
        wit = embed(catalog("cyclic", 4), 1, 1)
        if wit is None or wit.degeneracy is not Degeneracy.ALL_DISTINCT:
            return False, "no witness"
        state.witnesses.append(wit)
        x, y, z, w = wit.points
        sides = {sqdist(z, x), sqdist(x, w), sqdist(w, y), sqdist(y, z)}
        p = quad_params(wit.points)
        return len(sides) == 1 and (p.alpha, p.beta) == (1, 1), f"side^2 {sorted(sides)}"
    return _timed("square", "cyclic:4 realizes (1,1) as a square", run)


def check_concyclic_witnesses(state: SuiteState, seed: int = 7) -> CheckResult:
    def run():
        rng = random.Random(seed)
        for name, n in [("cyclic", 5), ("cyclic", 6), ("dihedral", 4), ("symmetric", 3),
                        ("alternating", 4)]:
            g = catalog(name, n)
            o = orbit(g, _random_start(rng, g.degree))
            hits = orbit_quad_scan(o, g, cap=max(state.scan_cap, len(o)))
            for h in rng.sample(hits, min(4, len(hits))):
                wit = embed(g, h.params.alpha, h.params.beta)
                if wit is not None:
                    state.witnesses.append(wit)
        distinct = [w for w in state.witnesses if w.degeneracy is Degeneracy.ALL_DISTINCT]
        bad = [(w.group_name, str(w.alpha), str(w.beta))
               for w in distinct if not is_concyclic(w.points)]
        return bool(distinct) and not bad, f"{len(distinct)} distinct witnesses" + (
            f"; not concyclic: {bad}" if bad else "")
    return _timed("concyclic", "every all-distinct witness is concyclic", run)


def check_polynomials(state: SuiteState) -> CheckResult:
    def run():
        compared = 0
        problems = []
        for g in state.groups:
            rep = state.rep(g)
            for tc in triples_reduced(g):
                pen = Pencil(rep.context(tc.triple))
                p = pencil_poly(pen)
                if p.degree_alpha > pen.dim or p.degree_beta > pen.dim:
                    problems.append(f"{g.name} {tuple(tc.triple)} degree bound")
                if pen.dim <= SYMBOLIC_DIM_LIMIT:
                    compared += 1
                    if p != pencil_poly_symbolic(pen):
                        problems.append(f"{g.name} {tuple(tc.triple)} mismatch")
        return not problems, f"{compared} contexts compared term-for-term" + (
            f"; problems: {problems[:5]}" if problems else "")
    return _timed("polynomial", "interpolated P equals cofactor expansion; degree bounds", run)


def check_nonconvex(state: SuiteState) -> CheckResult:
    def run():
        flags = {str(a): convex_position(a, witness_beta(a)) for a in WITNESS_ALPHAS}
        return not any(flags.values()), f"convex_position: {flags}"
    return _timed("nonconvex", "witness-beta quadrilaterals are not convex", run)


def check_determinism(state: SuiteState, jobs: int = 8) -> CheckResult:
    def run():
        alpha, _ = kite_params(0)
        differ = []
        for g in state.groups:
            serial = state.certificates.get(g.name) or certify(g, alpha).dumps()
            parallel = certify(g, alpha, jobs=jobs).dumps()
            if serial != parallel:
                differ.append(g.name)
        return not differ, f"1 vs {jobs} workers over {len(state.groups)} groups" + (
            f"; differ: {differ}" if differ else "")
    return _timed("determinism", "certificates byte-identical across worker counts", run)


CHECKS = (check_kite, check_witness_cases, check_oracle_equivalence, check_trapezium,
          check_square, check_concyclic_witnesses, check_polynomials, check_nonconvex,
          check_determinism)


def run_suite(max_degree: int = 8, extra_groups=(), jobs: int = 8,
              scan_cap: int = DEFAULT_SCAN_CAP,
              report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    state = SuiteState(criterion_groups(max_degree) + list(extra_groups), scan_cap=scan_cap)
    results = []
    for check in CHECKS:
        res = check(state, jobs=jobs) if check is check_determinism else check(state)
        results.append(res)
        if report:
            report(res)
    return results
