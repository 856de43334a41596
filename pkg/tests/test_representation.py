import random

import pytest

from conftest import element, triple
from transquad.exactnum import RatMatrix, dot
from transquad.permgroup import Perm, catalog, close, parse_cycles, triples_reduced
from transquad.representation import DeletedRep, deleted_matrix, fixed_subspace, to_ambient


def test_identity_matrix():
    assert deleted_matrix(Perm.identity(4)) == RatMatrix.identity(3)


def test_swap_is_sign():
    assert deleted_matrix(parse_cycles("(1 2)", 2)).to_rows() == [[-1]]


def test_three_cycle():
    # e1-e3 -> e2-e1 and e2-e3 -> e3-e1 = -(e1-e3)
    assert deleted_matrix(parse_cycles("(1 2 3)", 3)).to_rows() == [[-1, -1], [1, 0]]


@pytest.mark.parametrize("name,n", [("symmetric", 4), ("dihedral", 6), ("alternating", 5)])
def test_homomorphism(name, n):
    g = catalog(name, n)
    rng = random.Random(3)
    for _ in range(40):
        s, t = rng.choice(g.elements), rng.choice(g.elements)
        assert deleted_matrix(s * t) == deleted_matrix(s) @ deleted_matrix(t)


def test_matrix_agrees_with_coordinate_action():
    p = parse_cycles("(1 3 4)(2 5)", 5)
    v = (3, -1, 4, 1, -7)
    coords = v[:-1]
    assert to_ambient(deleted_matrix(p).apply(coords)) == p.act(v)


def _orbit_count(group, elements):
    # fixed sum-zero vectors are constant on subgroup orbits: dim = #orbits - 1
    sub = close([group.elements[k] for k in elements], degree=group.degree)
    parent = list(range(group.degree))
    for p in sub.elements:
        for i in range(group.degree):
            parent[_root(parent, i)] = _root(parent, p(i))
    return len({_root(parent, i) for i in range(group.degree)})


def _root(parent, i):
    while parent[i] != i:
        i = parent[i]
    return i


def test_fixed_space_transitive_group_empty():
    g = catalog("dihedral", 5)
    assert fixed_subspace(g, range(g.order)) == []


def test_fixed_space_trivial_subgroup(s3):
    assert len(fixed_subspace(s3, [0])) == 2


def test_fixed_space_transposition_degree4():
    g = catalog("symmetric", 4)
    basis = fixed_subspace(g, [element(g, "(1 2)")])
    assert len(basis) == 2
    for v in basis:
        assert v[0] == v[1] and sum(v) == 0


@pytest.mark.parametrize("name,n", [("symmetric", 4), ("dihedral", 6), ("cyclic", 6)])
def test_fixed_dim_matches_orbit_count(name, n):
    g = catalog(name, n)
    for k in range(g.order):
        assert len(fixed_subspace(g, [k])) == _orbit_count(g, [k]) - 1


def test_context_trivial_triple(s3):
    ctx = DeletedRep(s3).context((0, 0, 0))
    assert ctx.dim == 0 and ctx.fixed_dim == 2 and ctx.subgroup_elements == (0,)


def test_context_c2_sign_representation(c2):
    ctx = DeletedRep(c2).context(triple(c2, "(1 2)", "()", "()"))
    assert (ctx.fixed_dim, ctx.dim) == (0, 1)
    assert [m.to_rows() for m in ctx.restricted] == [[[-1]], [[1]], [[1]]]


def test_context_s3_full(s3):
    ctx = DeletedRep(s3).context(triple(s3, "(1 2 3)", "(1 2)", "(1 3)"))
    assert len(ctx.subgroup_elements) == 6
    assert (ctx.fixed_dim, ctx.dim) == (0, 2)


@pytest.mark.parametrize("name,n", [("symmetric", 4), ("dihedral", 5), ("alternating", 4)])
def test_context_invariants(name, n):
    g = catalog(name, n)
    rep = DeletedRep(g)
    for tc in triples_reduced(g)[::7]:
        ctx = rep.context(tc.triple)
        assert ctx.fixed_dim + ctx.dim == g.degree - 1
        for u in ctx.complement_basis:
            assert sum(u) == 0
            assert all(dot(u, f) == 0 for f in ctx.fixed_basis)
        # Gram matrix of the U basis in ambient coordinates is preserved
        basis = ctx.complement_basis
        gram = RatMatrix.from_rows([[dot(u, v) for v in basis] for u in basis], cols=ctx.dim)
        for r, k in zip(ctx.restricted, tc.triple):
            assert r.transpose() @ gram @ r == gram
            # restricted matrix reproduces the ambient action on U
            for j, u in enumerate(basis):
                assert ctx.lift(r.column(j)) == g.elements[k].act(u)
