import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arsobstruct.errors import (
    MixedEndpointsInRelation,
    NonComposablePath,
    NotAdmissibleWithinCap,
    ParseError,
    RelationTooShort,
    UnknownArrow,
)
from arsobstruct.fields import QQ, PrimeField
from arsobstruct.mesh import mesh_presentation
from arsobstruct.path_algebra import (
    AlgebraPresentation,
    format_path,
    format_presentation,
    instantiate,
    is_associative_on_basis,
    multiply,
    opposite,
    parse_presentation,
    quiver_of_algebra,
    radical_power_dims,
)
from arsobstruct.quiver import Quiver, parse_translation_quiver

from generators import random_presentation
from oracles import graded_quotient_dims, monomial_basis

GENTLE_ARROWS = [("a1", "1", "2"), ("b1", "2", "1"), ("a2", "2", "3"), ("b2", "3", "2")]


def gabriel_matrix(a):
    vq = quiver_of_algebra(a)
    vs = a.vertices
    m = [[0] * len(vs) for _ in vs]
    for arr in vq.arrows:
        m[vs.index(arr.source)][vs.index(arr.target)] = vq.valuation[arr.id]
    return m


def oracle_input(p: AlgebraPresentation):
    verts = list(p.quiver.vertices)
    arrows = [(a.id, a.source, a.target) for a in p.quiver.arrows]
    rels = [{path: c for c, path in r} for r in p.relations]
    return verts, arrows, rels


def test_gentle_golden(gentle):
    assert gentle.dim == 9
    assert radical_power_dims(gentle) == [9, 6, 2, 0]
    assert [format_path(b) for b in gentle.basis] == [
        "e_1", "e_2", "e_3", "a1", "b1", "a2", "b2", "a1*a2", "b2*b1"]


def test_gentle_matches_path_enumeration_oracle(gentle):
    zero = [("a1", "b1"), ("b1", "a1"), ("a2", "b2"), ("b2", "a2")]
    basis = monomial_basis(["1", "2", "3"], GENTLE_ARROWS, zero)
    assert len(basis) == gentle.dim
    assert sorted(p for _, p in basis) == sorted(b[1] for b in gentle.basis)
    graded = graded_quotient_dims(*oracle_input(gentle.presentation))
    tail = [sum(graded[k:]) for k in range(len(graded))]
    assert radical_power_dims(gentle) == tail


def test_gabriel_quiver_recovery(gentle):
    gq = quiver_of_algebra(gentle)
    assert gabriel_matrix(gentle) == gentle.quiver.arrow_count_matrix()
    assert set(gq.valuation.values()) == {1}


def test_semisimple_has_no_arrows():
    a = instantiate(AlgebraPresentation(Quiver(("1", "2"), ())))
    assert a.dim == 2 and quiver_of_algebra(a).quiver.arrows == ()


def test_dual_numbers(inputs):
    a = instantiate(parse_presentation((inputs / "dual_numbers.alg").read_text()))
    assert a.dim == 2 and radical_power_dims(a) == [2, 1, 0]


def test_two_vertex_mesh(inputs):
    tq = parse_translation_quiver((inputs / "two_cycle.tq").read_text())
    a = instantiate(mesh_presentation(tq))
    assert a.dim == 4
    assert graded_quotient_dims(*oracle_input(a.presentation)) == [2, 2, 0]
    assert gabriel_matrix(a) == [[0, 1], [1, 0]]


def test_non_homogeneous_relation_uses_completion():
    # x^2 = x^3 forces x^2 = x^4 = ... = 0 in the completed algebra
    p = parse_presentation("vertex v\narrow x v v\nrelation x*x - x*x*x\n")
    a = instantiate(p)
    assert [format_path(b) for b in a.basis] == ["e_v", "x"]


def test_commutative_square_binomial():
    text = """vertex 1 2 3 4
    arrow a 1 2
    arrow b 2 4
    arrow c 1 3
    arrow d 3 4
    relation a*b - c*d
    """
    a = instantiate(parse_presentation(text))
    assert a.dim == 9
    ab, cd = a.path_element(("a", "b")), a.path_element(("c", "d"))
    assert ab == cd


def test_not_admissible():
    p = parse_presentation("vertex v\narrow x v v\n")
    with pytest.raises(NotAdmissibleWithinCap) as exc:
        instantiate(p, 5)
    assert exc.value.cap == 5


def test_multiply_diagrammatic(gentle):
    a1, a2 = gentle.path_element(("a1",)), gentle.path_element(("a2",))
    assert multiply(gentle, a1, a2) == gentle.path_element(("a1", "a2"))
    assert multiply(gentle, a2, a1) == {}


@pytest.mark.parametrize("text, err, line", [
    ("vertex 1\narrow a 1 1\nrelation a*b\n", UnknownArrow, 3),
    ("vertex 1 2\narrow a 1 2\nrelation a*a\n", NonComposablePath, 3),
    ("vertex 1 2\narrow a 1 1\narrow b 1 2\narrow c 2 2\nrelation a*b - b*c\nrelation a*a - a*b\n",
     MixedEndpointsInRelation, 6),
    ("vertex 1\narrow a 1 1\nrelation a\n", RelationTooShort, 3),
    ("vertex 1\nfield F 4\n", ParseError, 2),
    ("vertex 1\nwhat\n", ParseError, 2),
])
def test_parse_errors(text, err, line):
    with pytest.raises(err) as exc:
        parse_presentation(text, source="x.alg")
    assert exc.value.line == line
    assert "x.alg" in str(exc.value)


def test_format_roundtrip(gentle):
    text = format_presentation(gentle.presentation)
    assert parse_presentation(text) == gentle.presentation


def test_coefficients_and_fractions():
    p = parse_presentation("vertex 1\narrow a 1 1\narrow b 1 1\nrelation a*b - 1/2 b*a\nrelation a*a\nrelation b*b\n")
    assert p.relations[0] == ((Fraction(1), ("a", "b")), (Fraction(-1, 2), ("b", "a")))
    assert instantiate(p).dim == 4


def test_opposite_preserves_dimension(gentle):
    op = instantiate(opposite(gentle.presentation))
    assert op.dim == gentle.dim
    assert radical_power_dims(op) == radical_power_dims(gentle)


# ---------------------------------------------------------------- properties

def _admissible(seed: int, cap: int = 8):
    p = random_presentation(random.Random(seed))
    try:
        return p, instantiate(p, cap)
    except NotAdmissibleWithinCap:
        return p, None


@given(st.integers(0, 10**6))
def test_monomial_dimension_matches_oracle(seed):
    p, a = _admissible(seed)
    if a is None:
        return
    mono = AlgebraPresentation(p.quiver, tuple(r[:1] for r in p.relations), p.field)
    try:
        m = instantiate(mono, 8)
    except NotAdmissibleWithinCap:
        return
    v, arrows, _ = oracle_input(mono)
    zero = [r[0][1] for r in mono.relations]
    assert m.dim == len(monomial_basis(v, arrows, zero, 10))


@given(st.integers(0, 10**6))
def test_graded_dimension_matches_oracle(seed):
    p, a = _admissible(seed)
    if a is None or not p.is_homogeneous or a.dim > 40:
        return
    graded = graded_quotient_dims(*oracle_input(p))
    assert a.dim == sum(graded)
    assert radical_power_dims(a) == [sum(graded[k:]) for k in range(len(graded))]


@given(st.integers(0, 10**6))
def test_associative(seed):
    _, a = _admissible(seed)
    if a is not None and a.dim <= 24:
        assert is_associative_on_basis(a)


@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_order_independence(seed, rnd):
    p, a = _admissible(seed)
    if a is None:
        return
    rels = list(p.relations)
    arrows = list(p.quiver.arrows)
    rnd.shuffle(rels)
    rnd.shuffle(arrows)
    q = AlgebraPresentation(Quiver(p.quiver.vertices, tuple(arrows)), tuple(rels), p.field)
    b = instantiate(q, 8)
    assert b.dim == a.dim
    assert radical_power_dims(b) == radical_power_dims(a)
    assert gabriel_matrix(b) == gabriel_matrix(a)


@given(st.integers(0, 10**6))
def test_gabriel_quiver_recovered(seed):
    p, a = _admissible(seed)
    if a is not None:
        assert gabriel_matrix(a) == p.quiver.arrow_count_matrix()


@given(st.integers(0, 10**6))
def test_field_independence_for_unit_coefficients(seed):
    p, a = _admissible(seed)
    if a is None or any(abs(c) != 1 for r in p.relations for c, _ in r):
        return
    b = instantiate(p, 8, field=PrimeField(7))
    assert b.dim == a.dim and radical_power_dims(b) == radical_power_dims(a)


def test_length_filtration_counts(gentle):
    lengths = [len(b[1]) for b in gentle.basis]
    dims = radical_power_dims(gentle)
    for k, d in enumerate(dims):
        assert d == sum(1 for x in lengths if x >= k)
