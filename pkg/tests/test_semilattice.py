import pytest

from ears.linalg import vec
from ears.semilattice import Lattice, RankMismatch, Semilattice, verify_semilattice
from ears.examples import integer_lattice, product_even_semilattice


def test_lattice_reduce_and_contains():
    lat = Lattice(2, [[2, 0], [0, 2]])
    assert lat.contains(vec(4, -2))
    assert not lat.contains(vec(1, 0))
    assert lat.reduce(vec(5, 4)) == vec(1, 0)


def test_lattice_intersection():
    a = Lattice(2, [[2, 0], [0, 1]])
    b = Lattice(2, [[1, 0], [0, 3]])
    both = a.intersect(b)
    assert both.contains(vec(2, 3))
    assert not both.contains(vec(2, 1))
    assert not both.contains(vec(1, 3))


def test_lattice_quotient_reps():
    big = Lattice(2, [[1, 0], [0, 1]])
    small = Lattice(2, [[2, 0], [0, 2]])
    reps = big.quotient_reps(small)
    assert len(reps) == 4


def test_constructor_doubles_the_basis():
    # Semilattice(basis, cosets) models cosets + 2<basis>: a single zero
    # coset over basis [[1]] is 2Z, not Z
    s = Semilattice([[1]], [[0]])
    assert s.contains(vec(2))
    assert not s.contains(vec(1))
    full = Semilattice([[1]], [[0], [1]])
    assert full.contains(vec(1))
    assert full.is_lattice()


def test_from_cosets_takes_modulus_as_given():
    s = Semilattice.from_cosets([vec(1)], Lattice(1, [[2]]), translated=True)
    assert s.contains(vec(3))
    assert not s.contains(vec(0))
    assert s.translated


def test_product_even_is_semilattice_but_not_lattice():
    s = product_even_semilattice(2)
    assert s.contains(vec(1, 0))
    assert s.contains(vec(0, 1))
    assert not s.contains(vec(1, 1))
    assert not s.is_lattice()
    assert verify_semilattice(s).ok


def test_closure_under_adding_twice_an_element():
    s = product_even_semilattice(3)
    members = s.window(2)
    for a in members[:12]:
        for b in members[:12]:
            assert s.contains(a + b * 2)


def test_union_and_scaling():
    s = Semilattice([[1]], [[0]])          # 2Z
    t = Semilattice([[1]], [[1]], translated=True)  # 1 + 2Z
    u = s.union(t)
    assert u == integer_lattice(1)
    assert s.scaled(2).contains(vec(4))
    assert not s.scaled(2).contains(vec(2))


def test_sum_set():
    s = product_even_semilattice(2)
    ss = s.sum_set(s)
    # sums of two product-even vectors cover every residue
    assert ss.contains(vec(1, 1))
    assert ss == integer_lattice(2)


def test_window_is_sorted_and_complete():
    s = integer_lattice(2)
    win = s.window(1)
    assert sorted(win, key=lambda v: v.coords) == list(win)
    assert len(win) == 9


def test_rank_mismatch_rejected():
    with pytest.raises(RankMismatch):
        Semilattice([[1, 0], [0, 1]], [[0]])


def test_verify_semilattice_flags_non_closure():
    # {0,1,4} + modulus 8Z misses 1 + 2*4 = 9 ≡ 1: fine; but 4 + 2*1 = 6
    # is not covered, so closure fails
    s = Semilattice.from_cosets([vec(0), vec(1), vec(4)], Lattice(1, [[8]]))
    assert not verify_semilattice(s).ok


def test_spanning_required():
    report = verify_semilattice(
        Semilattice.from_cosets([vec(0, 0), vec(2, 0)], Lattice(2, [[4, 0], [0, 0]]))
    )
    assert not report.ok
