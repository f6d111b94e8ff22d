import pytest

from pnoninner import families


@pytest.fixture(scope="session")
def e3():
    return families.extraspecial(3, 1)


@pytest.fixture(scope="session")
def e5():
    return families.extraspecial(5, 1)


@pytest.fixture(scope="session")
def es32():
    return families.extraspecial(3, 2)


@pytest.fixture(scope="session")
def es52():
    return families.extraspecial(5, 2)


@pytest.fixture(scope="session")
def w3():
    return families.maximal_class_p4(3)


@pytest.fixture(scope="session")
def w5():
    return families.maximal_class_p4(5)


@pytest.fixture(scope="session")
def c9():
    return families.cyclic(3, 2)


@pytest.fixture(scope="session")
def c25():
    return families.cyclic(5, 2)


@pytest.fixture(scope="session")
def e5xc5():
    return families.direct_product(families.extraspecial(5, 1), families.cyclic(5, 1))


@pytest.fixture(scope="session")
def e3xc3():
    return families.direct_product(families.extraspecial(3, 1), families.cyclic(3, 1))


@pytest.fixture(scope="session")
def fc4_3():
    return families.free_class4_exp_p(3)


@pytest.fixture(scope="session")
def fc4_5():
    return families.free_class4_exp_p(5)


@pytest.fixture(scope="session")
def ccc4_5():
    return families.cyclic_center_class4(5)
