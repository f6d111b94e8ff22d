import numpy as np
import pytest

from pnoninner import families
from pnoninner.pc import EnumerationBoundError, PcPresentation, PresentationError


def test_collect_extraspecial_goldens(e5):
    # x*y already normal; y*x picks up the commutator tail
    assert e5.collect([1, 2]) == (1, 1, 0)
    assert e5.collect([2, 1]) == (1, 1, 4)
    assert e5.collect([]) == (0, 0, 0)


def test_collect_idempotent_on_normal_words(e5, w5):
    for G in (e5, w5):
        rng = np.random.default_rng(3)
        for _ in range(50):
            x = G.element_at(int(rng.integers(G.order)))
            assert G.collect(G.word_letters(x)) == x


def test_multiply_golden(e5):
    assert e5.multiply((0, 1, 0), (1, 0, 0)) == (1, 1, 4)
    ident = e5.identity
    for i in range(1, 4):
        g = e5.generator(i)
        assert e5.multiply(ident, g) == g
        assert e5.multiply(g, ident) == g


def test_power_and_order(e5, c9):
    assert e5.power((1, 0, 0), 5) == e5.identity
    assert e5.element_order(e5.identity) == 1
    assert e5.element_order((1, 0, 0)) == 5
    assert c9.element_order((1, 0)) == 9
    assert c9.power((1, 0), 3) == (0, 1)


def test_power_negative(e5):
    a = (1, 2, 3)
    assert e5.multiply(e5.power(a, -1), a) == e5.identity
    assert e5.power(a, -2) == e5.inverse(e5.multiply(a, a))


def test_inverse(e5, w5, fc4_3):
    for G in (e5, w5, fc4_3):
        rng = np.random.default_rng(4)
        for _ in range(30):
            a = G.element_at(int(rng.integers(G.order)))
            assert G.multiply(G.inverse(a), a) == G.identity
            assert G.multiply(a, G.inverse(a)) == G.identity


def test_commutator_goldens(e5, w5):
    assert e5.commutator((0, 1, 0), (1, 0, 0)) == (0, 0, 4)
    assert e5.commutator((1, 2, 3), e5.identity) == e5.identity
    got = w5.left_normed([w5.generator(2), w5.generator(1), w5.generator(1)])
    assert got == w5.generator(4)


def test_left_normed_requires_two(e5):
    with pytest.raises(ValueError):
        e5.left_normed([e5.generator(1)])


def test_collect_rejects_bad_letters(e5):
    with pytest.raises(IndexError):
        e5.collect([4])
    with pytest.raises(IndexError):
        e5.collect([0])


def test_index_invariants_rejected():
    with pytest.raises(PresentationError):
        PcPresentation(5, 3, comm={(2, 1): (1, 0, 0)})
    with pytest.raises(PresentationError):
        PcPresentation(5, 2, power={1: (1, 0)})
    with pytest.raises(PresentationError):
        PcPresentation(4, 2)
    with pytest.raises(PresentationError):
        PcPresentation(2, 2)


def test_enumerate_counts(e3, w5, e5xc5):
    assert sum(1 for _ in e3.elements()) == 27
    assert sum(1 for _ in w5.elements()) == 625
    assert sum(1 for _ in e5xc5.elements()) == 625


def test_enumerate_lex_order(e3):
    elems = list(e3.elements())
    assert elems[0] == (0, 0, 0)
    assert elems == sorted(elems)


def test_enumeration_bound(monkeypatch, e3):
    monkeypatch.setenv("PNONINNER_ENUM_BOUND", "10")
    with pytest.raises(EnumerationBoundError):
        list(e3.elements())
    monkeypatch.delenv("PNONINNER_ENUM_BOUND")
    assert len(list(e3.elements())) == 27


def test_consistency(e3, w5):
    assert e3.is_consistent() is True
    assert w5.is_consistent() is True


def test_inconsistent_presentation_detected():
    # naive mod-3 reduction of the full weight-4 basic-commutator table;
    # the top weight-4 relator collapses, so collection cannot be associative
    n = 8

    def w(**kw):
        out = [0] * n
        for k, e in kw.items():
            out[int(k[1:]) - 1] = e
        return tuple(out)

    comm = {
        (2, 1): w(g3=1),
        (3, 1): w(g4=1),
        (3, 2): w(g5=1),
        (4, 1): w(g6=1),
        (4, 2): w(g7=1),
        (5, 1): w(g7=1),
        (5, 2): w(g8=1),
    }
    G = PcPresentation(3, 8, comm=comm)
    assert G.is_consistent() is False


def test_table_multiplication_matches_scalar(w5, fc4_3):
    for G in (w5, fc4_3):
        G.ensure_tables()
        rng = np.random.default_rng(5)
        for _ in range(200):
            a = G.element_at(int(rng.integers(G.order)))
            b = G.element_at(int(rng.integers(G.order)))
            i = G.index_of(G.multiply(a, b))
            # scalar collection from scratch
            fresh = G.collect(G.word_letters(a) + G.word_letters(b))
            assert G.index_of(fresh) == i


def test_commutator_expansion_identities(e5, w5, fc4_3):
    # [xy, z] = [x, z]^y [y, z] and [z, xy] = [z, y] [z, x]^y
    for G in (e5, w5, fc4_3):
        rng = np.random.default_rng(6)
        for _ in range(40):
            x, y, z = (G.element_at(int(rng.integers(G.order))) for _ in range(3))
            lhs = G.commutator(G.multiply(x, y), z)
            rhs = G.multiply(G.conjugate(G.commutator(x, z), y), G.commutator(y, z))
            assert lhs == rhs
            lhs2 = G.commutator(z, G.multiply(x, y))
            rhs2 = G.multiply(G.commutator(z, y), G.conjugate(G.commutator(z, x), y))
            assert lhs2 == rhs2


def test_inverse_array(w5):
    inv = w5.inverse_array()
    for i in (0, 1, 17, 100, 624):
        a = w5.element_at(i)
        assert w5.element_at(int(inv[i])) == w5.inverse(a)


def test_left_right_mult_arrays(w5):
    a = (1, 2, 0, 3)
    L = w5.left_mult_array(a)
    B = w5.right_mult_array(a)
    rng = np.random.default_rng(7)
    for _ in range(50):
        i = int(rng.integers(w5.order))
        x = w5.element_at(i)
        assert w5.element_at(int(L[i])) == w5.multiply(a, x)
        assert w5.element_at(int(B[i])) == w5.multiply(x, a)


def test_power_commutator_equivalences_class_le_p(w3):
    # for class <= p: [x, y^p] = 1 iff [x, y]^p = 1 iff [x^p, y] = 1;
    # W(3) sits exactly at class = p = 3
    p = w3.p
    elems = list(w3.elements())
    for x in elems:
        for y in elems:
            a = w3.commutator(x, w3.power(y, p)) == w3.identity
            b = w3.power(w3.commutator(x, y), p) == w3.identity
            c = w3.commutator(w3.power(x, p), y) == w3.identity
            assert a == b == c
