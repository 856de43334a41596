from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from transquad.permgroup import (CapExceeded, CycleParseError, GeneratorFileError, Perm,
                                 all_triples, catalog, close, format_cycles, is_transitive,
                                 parse_cycles, parse_group_spec, read_generator_file,
                                 triples_reduced)


def test_parse_identity():
    assert parse_cycles("()", 3) == Perm.identity(3)


def test_parse_swap():
    assert parse_cycles("(1 2)", 2).images == (1, 0)


def test_parse_two_cycles():
    assert parse_cycles(" (1 2 3)( 4 5 ) ", 5).images == (1, 2, 0, 4, 3)


@pytest.mark.parametrize("text", ["(1 4)", "(1 2)(2 3)", "(1 2", "1 2", "(1 x)", "(0 1)"])
def test_parse_errors(text):
    with pytest.raises(CycleParseError):
        parse_cycles(text, 3)


@given(st.permutations(range(7)))
def test_format_parse_round_trip(images):
    p = Perm(tuple(images))
    assert parse_cycles(format_cycles(p), 7) == p


def test_composition_is_function_composition():
    p, q = parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)
    assert all((p * q)(i) == p(q(i)) for i in range(3))


def test_close_orders():
    assert close([parse_cycles("(1 2)", 2)]).order == 2
    assert close([parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 3)", 4)]).order == 8
    assert close([parse_cycles("(1 2 3)", 3), parse_cycles("(1 2)", 3)]).order == 6


def test_close_identity_first_and_closed():
    g = catalog("dihedral", 5)
    assert g.elements[0].is_identity()
    elems = set(g.elements)
    assert all(a * b in elems for a in g.elements for b in g.elements)
    assert all(a.inverse() in elems for a in g.elements)


@pytest.mark.parametrize("name,n", [("cyclic", 6), ("dihedral", 4), ("symmetric", 4),
                                    ("alternating", 4)])
def test_close_idempotent(name, n):
    g = catalog(name, n)
    again = close(g.elements)
    assert again.elements == g.elements


def test_cap_exceeded_names_cap():
    with pytest.raises(CapExceeded, match="24"):
        close(catalog("symmetric", 5).generators, cap=24)


def test_transitivity():
    assert is_transitive(catalog("cyclic", 4))
    assert is_transitive(catalog("symmetric", 4))
    assert not is_transitive(close([parse_cycles("(1 2)", 3)]))


@pytest.mark.parametrize("name,n,order,degree", [
    ("cyclic", 4, 4, 4), ("dihedral", 4, 8, 4), ("symmetric", 4, 24, 4),
    ("alternating", 4, 12, 4), ("alternating", 5, 60, 5), ("dihedral", 7, 14, 7),
])
def test_catalog_orders(name, n, order, degree):
    g = catalog(name, n)
    assert (g.order, g.degree) == (order, degree)
    assert is_transitive(g)


def test_regular_dihedral8_is_regular():
    g = catalog("regular_dihedral8")
    assert (g.order, g.degree) == (8, 8)
    assert is_transitive(g)
    # regular: only the identity fixes a point
    assert all(p.is_identity() or all(p(i) != i for i in range(8)) for p in g.elements)


@pytest.mark.parametrize("name,n", [("dihedral", 2), ("alternating", 2), ("bogus", 3)])
def test_catalog_rejects(name, n):
    with pytest.raises(ValueError):
        catalog(name, n)


def test_trivial_group_single_triple():
    g = catalog("cyclic", 1)
    assert [tuple(tc.triple) for tc in triples_reduced(g)] == [(0, 0, 0)]


def test_c2_classes_are_singletons():
    classes = triples_reduced(catalog("cyclic", 2))
    assert len(classes) == 8 and all(tc.size == 1 for tc in classes)


def _burnside_class_count(g):
    # orbits of simultaneous conjugation = average over u of |C(u)|^3
    total = 0
    for u in g.elements:
        cent = sum(1 for x in g.elements if u * x == x * u)
        total += cent ** 3
    return total // g.order


def _brute_force_classes(g):
    n = g.order
    seen, classes = set(), []
    for t in product(range(n), repeat=3):
        if t in seen:
            continue
        orbit = set()
        for u in g.elements:
            ui = u.inverse()
            orbit.add(tuple(g.index(u * g.elements[k] * ui) for k in t))
        seen |= orbit
        classes.append((min(orbit), len(orbit)))
    return classes


def test_s3_class_count_regression():
    g = catalog("symmetric", 3)
    classes = triples_reduced(g)
    assert len(classes) == _burnside_class_count(g) == 49
    assert [(tuple(tc.triple), tc.size) for tc in classes] == _brute_force_classes(g)


@pytest.mark.parametrize("name,n", [("cyclic", 3), ("dihedral", 4), ("alternating", 4),
                                    ("dihedral", 6)])
def test_class_sizes_cover_all_triples(name, n):
    g = catalog(name, n)
    classes = triples_reduced(g)
    assert sum(tc.size for tc in classes) == g.order ** 3
    assert len(classes) == _burnside_class_count(g)
    assert len(all_triples(g)) == g.order ** 3


def test_generator_file(tmp_path):
    f = tmp_path / "g.gens"
    f.write_text("# dihedral on a square\ndegree = 4\n(1 2 3 4)  # rotation\n\n(1 3)\n")
    degree, gens = read_generator_file(f)
    assert degree == 4 and [format_cycles(g) for g in gens] == ["(1 2 3 4)", "(1 3)"]
    assert parse_group_spec(f"file:{f}").order == 8


def test_generator_file_error_names_line(tmp_path):
    f = tmp_path / "bad.gens"
    f.write_text("degree = 3\n(1 2)\n(1 5)\n")
    with pytest.raises(GeneratorFileError) as exc:
        read_generator_file(f)
    assert exc.value.line == 3 and ":3:" in str(exc.value)


def test_group_spec_parsing():
    assert parse_group_spec("cyclic:4").order == 4
    assert parse_group_spec("regular_dihedral8").degree == 8
    for bad in ("cyclic", "cyclic:x", "nope:3"):
        with pytest.raises(ValueError):
            parse_group_spec(bad)
