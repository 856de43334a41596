"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report lines.
Every numeric threshold used below is pinned in the constants block.
"""
from fractions import Fraction

import pytest

from transquad.cli import main
from transquad.criterion import embed, witness_beta
from transquad.geometry import Degeneracy, convex_position, is_concyclic, quad_params, sqdist
from transquad.permgroup import catalog
from transquad.verification import (SuiteState, check_concyclic_witnesses, check_determinism,
                                    check_kite, check_nonconvex, check_oracle_equivalence,
                                    check_polynomials, check_square, check_trapezium,
                                    check_witness_cases, criterion_groups)

# exact arithmetic everywhere: zero tolerance on every determinant, parameter
# and squared distance; only wall-clock budgets carry a slack
ZERO_TOLERANCE = 0
BUDGET_SECONDS = {
    "kite": 60.0,
    "witness-beta": 300.0,
    "oracle": 120.0,
    "trapezium": 10.0,
    "square": 1.0,
    "polynomial": 120.0,
    "nonconvex": 1.0,
}
ORACLE_SAMPLES_PER_GROUP = 50
ORACLE_SEED = 20240601
PARALLEL_WORKERS = 8
EXPECTED_GROUPS = (
    [f"cyclic:{n}" for n in range(2, 9)] + [f"dihedral:{n}" for n in range(3, 9)]
    + ["symmetric:3", "symmetric:4", "alternating:4", "regular_dihedral8"]
)

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def state():
    return SuiteState(criterion_groups(8))


@pytest.fixture
def report(capsys):
    def _report(number, res):
        with capsys.disabled():
            print(f"\ncriterion {number} {res.line()}")
    return _report


def _within_budget(res):
    budget = BUDGET_SECONDS.get(res.name)
    return budget is None or res.seconds < budget


def test_c1_kite_certified_for_catalog(state, report):
    assert [g.name for g in state.groups] == EXPECTED_GROUPS
    res = check_kite(state)
    report(1, res)
    assert res.passed, res.detail
    assert _within_budget(res), f"{res.seconds:.1f}s"
    assert set(state.certificates) == set(EXPECTED_GROUPS)


def test_c2_witness_beta_nonsingular_on_all_triples(state, report):
    res = check_witness_cases(state)
    report(2, res)
    assert res.passed, res.detail
    assert f", {ZERO_TOLERANCE} zero" in res.detail
    assert _within_budget(res), f"{res.seconds:.1f}s"


def test_c3_zero_set_matches_orbit_scans(state, report):
    res = check_oracle_equivalence(state, seed=ORACLE_SEED)
    report(3, res)
    assert res.passed, res.detail
    for name in ("cyclic:2", "cyclic:3", "cyclic:4", "symmetric:3"):
        assert f"{name}: " in res.detail
    assert res.detail.count(f"/{ORACLE_SAMPLES_PER_GROUP} members") == 4
    assert _within_budget(res), f"{res.seconds:.1f}s"


def test_c4_trapezium_in_regular_d8(state, report):
    res = check_trapezium(state)
    report(4, res)
    assert res.passed, res.detail
    assert _within_budget(res), f"{res.seconds:.1f}s"
    g = catalog("regular_dihedral8")
    for beta in (Fraction(2), Fraction(3), Fraction(5, 2)):
        wit = embed(g, 1, beta)
        assert len(set(wit.points)) == 4
        assert is_concyclic(wit.points)
        p = quad_params(wit.points)
        assert (p.alpha - 1, p.beta - beta) == (ZERO_TOLERANCE, ZERO_TOLERANCE)


def test_c5_square_in_cyclic4(state, report):
    res = check_square(state)
    report(5, res)
    assert res.passed, res.detail
    assert _within_budget(res), f"{res.seconds:.3f}s"
    wit = embed(catalog("cyclic", 4), 1, 1)
    x, y, z, w = wit.points
    assert wit.degeneracy is Degeneracy.ALL_DISTINCT
    assert len({sqdist(z, x), sqdist(x, w), sqdist(w, y), sqdist(y, z)}) == 1
    assert tuple(quad_params(wit.points))[:2] == (1, 1)


def test_c6_every_distinct_witness_concyclic(state, report):
    res = check_concyclic_witnesses(state)
    report(6, res)
    assert res.passed, res.detail
    distinct = [w for w in state.witnesses if w.degeneracy is Degeneracy.ALL_DISTINCT]
    assert distinct and all(is_concyclic(w.points) for w in distinct)


def test_c7_interpolation_matches_cofactor_expansion(state, report):
    res = check_polynomials(state)
    report(7, res)
    assert res.passed, res.detail
    assert _within_budget(res), f"{res.seconds:.1f}s"


def test_c8_witness_quadrilaterals_not_convex(state, report):
    res = check_nonconvex(state)
    report(8, res)
    assert res.passed, res.detail
    for a in (Fraction(-1), Fraction(1, 2), Fraction(2)):
        assert convex_position(a, witness_beta(a)) is False


def test_c9_certificates_identical_across_worker_counts(state, report, tmp_path):
    res = check_determinism(state, jobs=PARALLEL_WORKERS)
    report(9, res)
    assert res.passed, res.detail
    # the same property through the command line, comparing file bytes
    for spec in ("dihedral:6", "symmetric:4"):
        files = []
        for jobs in (1, PARALLEL_WORKERS):
            out = tmp_path / f"{spec.replace(':', '_')}_{jobs}.json"
            assert main(["certify", "--group", spec, "--kite", "--jobs", str(jobs),
                         "-o", str(out)]) == 0
            files.append(out.read_bytes())
        assert files[0] == files[1]
