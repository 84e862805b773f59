"""Property-based checks over randomly drawn roots, words, and semilattices."""

from fractions import Fraction

import pytest

hypothesis = pytest.importorskip("hypothesis")

from hypothesis import given, settings, strategies as st

from ears.examples import (
    integer_lattice,
    nullity2_system,
    odd_translated,
    product_even_semilattice,
)
from ears.linalg import Vector, preserves_form, reflect, reflection_matrix
from ears.presentation import (
    Infinite,
    conjugation_relation,
    conjugation_rewrite,
    coxeter_order,
    evaluate,
    line_relation,
    parity,
    square_relation,
)
from ears.weyl import orbit_bfs, orbit_closed_form

R2 = nullity2_system()
SP2 = R2.space
ANISO2 = R2.anisotropic_window(2)

SEMILATTICES = [
    integer_lattice(1),
    integer_lattice(2),
    product_even_semilattice(2),
    product_even_semilattice(3),
    odd_translated(1),
]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(SEMILATTICES) - 1), st.data())
def test_semilattice_closure(idx, data):
    sl = SEMILATTICES[idx]
    members = sl.window(3)
    a = data.draw(st.sampled_from(members))
    b = data.draw(st.sampled_from(members))
    assert sl.contains(a + b * 2)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_reflection_properties(data):
    root = data.draw(st.sampled_from(ANISO2))
    coords = data.draw(
        st.lists(st.integers(-3, 3), min_size=SP2.dim, max_size=SP2.dim)
    )
    v = Vector([Fraction(c) for c in coords])
    w = Vector(reflect(SP2, root, v))
    assert Vector(reflect(SP2, root, w)) == v
    assert SP2.pair(w, w) == SP2.pair(v, v)
    assert Vector(reflect(SP2, root, root)) == -root
    assert preserves_form(SP2, reflection_matrix(SP2, root))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_bfs_members_lie_in_closed_form(data):
    alpha = data.draw(st.sampled_from(ANISO2))
    orbit = orbit_closed_form(R2, alpha)
    for member in orbit_bfs(R2, alpha, 2):
        assert orbit.contains(member)
        assert member.max_norm() <= 2


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_coxeter_order_is_symmetric(data):
    a = data.draw(st.sampled_from(ANISO2))
    b = data.draw(st.sampled_from(ANISO2))
    fwd = coxeter_order(SP2, a, b)
    bwd = coxeter_order(SP2, b, a)
    if isinstance(fwd, Infinite):
        assert isinstance(bwd, Infinite)
    else:
        assert fwd == bwd


def random_relation(data):
    kind = data.draw(st.sampled_from(["line", "square", "conjugation"]))
    a = data.draw(st.sampled_from(ANISO2))
    if kind == "line":
        return line_relation(a, -a)
    if kind == "square":
        return square_relation(a)
    b = data.draw(st.sampled_from(ANISO2))
    return conjugation_relation(SP2, a, b)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_relations_have_zero_parity(data):
    letters = []
    for _ in range(data.draw(st.integers(1, 4))):
        letters.extend(random_relation(data))
    assert evaluate(letters, SP2).matrix.is_identity()
    assert parity(letters, R2).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_rewrite_preserves_parity_and_evaluation(data):
    letters = []
    for _ in range(data.draw(st.integers(1, 3))):
        letters.extend(random_relation(data))
    preferred = data.draw(
        st.lists(st.sampled_from(ANISO2), min_size=1, max_size=4, unique=True)
    )
    before = parity(letters, R2)
    word, _ = conjugation_rewrite(letters, R2, preferred)
    assert evaluate(word, SP2).matrix.is_identity()
    assert parity(word, R2) == before
    assert before.is_zero()
