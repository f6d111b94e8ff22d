import pytest

from pnoninner import families
from pnoninner import structure as st
from pnoninner.pc import PresentationError


def test_extraspecial_shapes(e5, es52):
    assert e5.order == 125
    assert st.is_extra_special(e5)
    assert es52.order == 5**5
    assert st.rank(es52) == 4
    assert st.exponent(es52) == 5
    assert st.is_extra_special(es52)


def test_maximal_class_p4(w5):
    assert w5.order == 625
    assert st.nilpotency_class(w5) == 3
    assert st.coclass(w5) == 1


def test_cyclic_and_elementary():
    c27 = families.cyclic(3, 3)
    assert c27.element_order(c27.generator(1)) == 27
    ea = families.elementary_abelian(5, 3)
    assert st.exponent(ea) == 5
    assert st.nilpotency_class(ea) == 1


def test_direct_product(e5xc5):
    assert e5xc5.order == 625
    assert sum(1 for _ in e5xc5.elements()) == 625
    assert st.center(e5xc5).order == 25


def test_free_class4_p5(fc4_5):
    assert fc4_5.order == 5**8
    assert st.nilpotency_class(fc4_5) == 4
    assert st.rank(fc4_5) == 2
    assert fc4_5.is_consistent(samples=20000)


def test_free_class4_p3(fc4_3):
    assert fc4_3.order == 3**8
    assert st.nilpotency_class(fc4_3) == 4
    assert st.rank(fc4_3) == 2
    assert fc4_3.is_consistent(samples=20000)
    # the p = 3 object cannot have exponent 3 (Burnside); it has exponent 9
    assert st.exponent(fc4_3) == 9


def test_cyclic_center_class4(ccc4_5):
    assert ccc4_5.order == 5**6
    assert st.nilpotency_class(ccc4_5) == 4
    assert st.coclass(ccc4_5) == 2
    assert st.center(ccc4_5).order == 5
    assert ccc4_5.is_consistent(samples=20000)


def test_gen_family_dispatch():
    G = families.gen_family("extraspecial", 3, 1)
    assert G.order == 27
    with pytest.raises(PresentationError):
        families.gen_family("extraspecial", 3)  # missing n
    with pytest.raises(PresentationError):
        families.gen_family("maximal_class_p4", 5, 2)  # spurious n
    with pytest.raises(PresentationError):
        families.gen_family("nope", 5)
    with pytest.raises(PresentationError):
        families.gen_family("extraspecial", 4, 1)  # p not an odd prime


def test_catalog_contents():
    import os

    from pnoninner.families import CATALOG, catalog_dir
    from pnoninner.presentation_io import parse_presentation, print_presentation

    files = sorted(os.listdir(catalog_dir()))
    assert files == sorted(CATALOG)
    for name in files:
        text = open(os.path.join(catalog_dir(), name)).read()
        G = parse_presentation(text)
        assert print_presentation(G) == text
        assert G == CATALOG[name]()


def test_catalog_consistency_modes():
    import os

    from pnoninner.families import catalog_dir
    from pnoninner.presentation_io import parse_presentation
    from pnoninner.pc import EXHAUSTIVE_ASSOC_BOUND

    for name in sorted(os.listdir(catalog_dir())):
        G = parse_presentation(open(os.path.join(catalog_dir(), name)).read())
        if G.order <= EXHAUSTIVE_ASSOC_BOUND:
            assert G.is_consistent(exhaustive=True)
        else:
            assert G.is_consistent(samples=20000)
