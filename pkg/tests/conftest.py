import pytest

from ears.examples import (
    acceptance_suite,
    bc1_double_fixture,
    even_system,
    integer_lattice,
    nullity2_system,
    nullity3_system,
    odd_translated,
    product_even_semilattice,
)


@pytest.fixture(scope="session")
def nullity2():
    return nullity2_system()


@pytest.fixture(scope="session")
def nullity3():
    return nullity3_system()


@pytest.fixture(scope="session")
def even3():
    return even_system()


@pytest.fixture(scope="session")
def bc1_shifted():
    return bc1_double_fixture()


@pytest.fixture(scope="session")
def suite():
    return acceptance_suite()


@pytest.fixture(scope="session")
def z1():
    return integer_lattice(1)


@pytest.fixture(scope="session")
def z2():
    return integer_lattice(2)


@pytest.fixture(scope="session")
def s_even2():
    return product_even_semilattice(2)


@pytest.fixture(scope="session")
def odd1():
    return odd_translated(1)
