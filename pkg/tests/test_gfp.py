import numpy as np
import pytest

from pnoninner import gfp


def test_rref_canonical():
    a = np.array([[2, 4, 1], [1, 2, 3]])
    r = gfp.rref(a, 5)
    assert r[0, 0] == 1
    # every pivot column is cleared elsewhere
    for i in range(r.shape[0]):
        lead = np.nonzero(r[i])[0][0]
        col = r[:, lead]
        assert col[i] == 1 and col.sum() == 1


def test_nullspace_matches_bruteforce():
    rng = np.random.default_rng(0)
    for p in (3, 5):
        for _ in range(20):
            a = rng.integers(0, p, size=(4, 3))
            ns = gfp.nullspace(a, p)
            count = 0
            for v in _all_vectors(4, p):
                if not ((v @ a) % p).any():
                    count += 1
                    assert gfp.in_row_space(ns, v, p)
            assert count == p ** ns.shape[0]


def _all_vectors(n, p):
    import itertools

    for combo in itertools.product(range(p), repeat=n):
        yield np.array(combo, dtype=np.int64)


def test_solve_right():
    rng = np.random.default_rng(1)
    p = 5
    for _ in range(20):
        a = rng.integers(0, p, size=(3, 4))
        x = rng.integers(0, p, size=3)
        b = (x @ a) % p
        sol = gfp.solve_right(a, b, p)
        assert sol is not None
        assert (((sol @ a) % p) == b).all()


def test_solve_right_inconsistent():
    a = np.array([[1, 0], [2, 0]])
    assert gfp.solve_right(a, np.array([0, 1]), 5) is None


def test_mat_inv():
    rng = np.random.default_rng(2)
    p = 7
    m = np.array([[1, 2, 0], [0, 1, 3], [0, 0, 1]])
    inv = gfp.mat_inv(m, p)
    assert ((m @ inv) % p == np.eye(3, dtype=np.int64)).all()
    with pytest.raises(ValueError):
        gfp.mat_inv(np.zeros((2, 2), dtype=np.int64), p)


def test_intersect_row_spaces():
    p = 3
    a = np.array([[1, 0, 0], [0, 1, 0]])
    b = np.array([[0, 1, 0], [0, 0, 1]])
    got = gfp.intersect_row_spaces(a, b, p)
    assert got.shape[0] == 1
    assert gfp.in_row_space(got, np.array([0, 1, 0]), p)


def test_coords_in_row_space():
    p = 5
    basis = gfp.rref(np.array([[1, 2, 0], [0, 0, 1]]), p)
    v = (3 * basis[0] + 2 * basis[1]) % p
    c = gfp.coords_in_row_space(basis, v, p)
    assert c is not None and ((c @ basis) % p == v).all()
    assert gfp.coords_in_row_space(basis, np.array([0, 1, 0]), p) is None


def test_enumerate_space_counts():
    basis = np.array([[1, 0], [0, 1]])
    got = list(gfp.enumerate_space(basis, 3))
    assert len(got) == 9
    assert len({tuple(v) for v in got}) == 9
