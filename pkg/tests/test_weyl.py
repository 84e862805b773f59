"""Orbits, generation certificates, minimality, extraction."""

import pytest

from ears.core import construct_ears, verify_axioms
from ears.linalg import Vector, reflection_matrix, vec
from ears.semilattice import Lattice, Semilattice
from ears.weyl import (
    Generates,
    Minimal,
    NotAnOrbit,
    NotGenerates,
    NotMinimal,
    NotOverFinitePart,
    anisotropic_orbits,
    extract_minimal,
    generation_check,
    minimality,
    orbit_bfs,
    orbit_closed_form,
    word_element,
)

from ears.examples import product_even_semilattice, removable_root

GAMMA = removable_root()
PRODUCT_EVEN3 = product_even_semilattice(3)


def test_orbit_closed_form_basic(nullity2):
    alpha = nullity2.space.assemble(vec(0, 0), vec(1))
    ob = orbit_closed_form(nullity2, alpha)
    assert ob.translation_lattice == Lattice(2, [[2, 0], [0, 2]])
    assert len(ob.finite_orbit) == 2


def test_orbit_counts(nullity2, nullity3, even3):
    assert len(anisotropic_orbits(nullity2)) == 3
    assert len(anisotropic_orbits(nullity3)) == 8
    assert len(anisotropic_orbits(even3)) == 7


def test_gamma_orbit_membership(nullity3):
    ob = orbit_closed_form(nullity3, GAMMA)
    assert ob.translation_lattice == Lattice(3, [[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert ob.contains(vec(3, 1, -1, 1, 0, 0, 0))
    assert ob.contains(vec(1, 1, 1, -1, 0, 0, 0))
    assert not ob.contains(vec(2, 1, 1, 1, 0, 0, 0))


def test_isotropic_orbit_is_singleton(nullity3):
    ob = orbit_closed_form(nullity3, vec(1, 0, 0, 0, 0, 0, 0))
    assert ob.finite_orbit == frozenset([vec(0)])
    assert ob.translation_lattice.rank == 0
    assert ob.window(2) == [vec(1, 0, 0, 0, 0, 0, 0)]


def test_orbit_rejects_foreign_vector(nullity2):
    from ears.linalg import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        orbit_closed_form(nullity2, vec(1, 0, 1))
    with pytest.raises(NotOverFinitePart):
        orbit_closed_form(nullity2, vec(0, 0, 1, 1, 0))
    with pytest.raises(NotOverFinitePart):
        orbit_closed_form(nullity2, vec(0, 0, 2, 0, 0))


def test_bfs_rejects_bad_bound(nullity2):
    with pytest.raises(ValueError):
        orbit_bfs(nullity2, vec(0, 0, 1, 0, 0), 0)


@pytest.mark.parametrize(
    "coords",
    [(0, 0, 1, 0, 0), (1, 0, 1, 0, 0)],
    ids=["base-root", "shifted-root"],
)
def test_bfs_matches_closed_form(nullity2, coords):
    alpha = vec(*coords)
    got = orbit_bfs(nullity2, alpha, 3)
    want = frozenset(orbit_closed_form(nullity2, alpha).window(3))
    assert got == want


def test_bfs_matches_closed_form_nullity3(nullity3):
    got = orbit_bfs(nullity3, GAMMA, 3)
    want = frozenset(orbit_closed_form(nullity3, GAMMA).window(3))
    assert got == want


def test_seven_reflection_certificate(nullity3):
    # frozen from a brute-force search over reflection words; this ordering
    # of the seven roots multiplies out to the reflection in gamma
    from ears.examples import certificate_word

    prod = word_element(nullity3.space, certificate_word())
    assert prod.matrix == reflection_matrix(nullity3.space, GAMMA)


def test_gamma_orbit_generates(nullity3):
    ob = orbit_closed_form(nullity3, GAMMA)
    verdict = generation_check(nullity3, ob)
    assert isinstance(verdict, Generates)
    # the certificate actually writes the removed reflection
    m = word_element(nullity3.space, verdict.certificate).matrix
    assert m == reflection_matrix(nullity3.space, GAMMA)


def test_generation_check_validates_orbit(nullity3):
    from ears.weyl import OrbitDescriptor

    with pytest.raises(NotAnOrbit):
        generation_check(nullity3, "not an orbit")
    ob = orbit_closed_form(nullity3, GAMMA)
    fake = OrbitDescriptor(
        ob.space,
        ob.base,
        ob.dot_part,
        ob.finite_orbit,
        Lattice(3, [[4, 0, 0], [0, 4, 0], [0, 0, 4]]),
    )
    with pytest.raises(NotAnOrbit):
        generation_check(nullity3, fake)


def test_minimality_verdicts(nullity2, nullity3, even3):
    m = minimality(nullity3)
    assert isinstance(m, NotMinimal)
    assert m.orbit.contains(GAMMA)
    assert isinstance(minimality(nullity2), Minimal)
    assert isinstance(minimality(even3), Minimal)


def test_extract_minimal(nullity3):
    ext = extract_minimal(nullity3)
    assert ext.finite_part.label == "A1"
    assert len(ext.removal_chain) == 1
    assert ext.translations["short"] == PRODUCT_EVEN3
    win = set(ext.anisotropic_window(2))
    want = {
        Vector((a, b, c, d, 0, 0, 0))
        for a in range(-2, 3)
        for b in range(-2, 3)
        for c in range(-2, 3)
        for d in (-1, 1)
        if a * b * c % 2 == 0
    }
    assert win == want
    assert verify_axioms(ext, 2).ok


def test_extract_minimal_idempotent(nullity2):
    ext = extract_minimal(nullity2)
    assert ext == nullity2
    assert ext.removal_chain == ()


def test_finite_a1_orbit_does_not_generate():
    a1f = construct_ears("A1", Semilattice([], [[]]))
    orbs = anisotropic_orbits(a1f)
    assert len(orbs) == 1
    assert isinstance(generation_check(a1f, orbs[0]), NotGenerates)


def test_finite_a2_minimal():
    a2f = construct_ears("A2", Semilattice([], [[]]))
    assert isinstance(minimality(a2f), Minimal)


def test_bc1_nothing_removable(bc1_shifted):
    # every orbit carries essential translations here
    for ob in anisotropic_orbits(bc1_shifted):
        assert isinstance(generation_check(bc1_shifted, ob), NotGenerates)
    assert extract_minimal(bc1_shifted) == bc1_shifted


def test_bc1_lattice_case_minimal():
    bc1 = construct_ears(
        "BC1",
        Semilattice([[1]], [[0], [1]]),
        extra=Semilattice([[1]], [[1]], translated=True),
    )
    assert isinstance(minimality(bc1), Minimal)


def test_word_element_composes(nullity2):
    a = vec(0, 0, 1, 0, 0)
    b = vec(1, 0, 1, 0, 0)
    g = word_element(nullity2.space, [a, b, a])
    assert g.matrix == word_element(nullity2.space, [a]).matrix @ word_element(
        nullity2.space, [b, a]
    ).matrix
    assert word_element(nullity2.space, [a, a]).matrix == word_element(
        nullity2.space, []
    ).matrix
