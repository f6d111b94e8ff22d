"""Exact linear algebra over GF(p), p an odd prime.

All matrices are numpy int64 arrays with entries reduced mod p.  Vectors are
1-d arrays; a "row space" is a matrix whose rows form a basis in reduced row
echelon form, which makes every basis here canonical and therefore safe to
freeze into golden tests.  No floating point anywhere.
"""

from __future__ import annotations

import numpy as np


def asmat(a, p: int) -> np.ndarray:
    m = np.array(a, dtype=np.int64) % p
    if m.ndim == 1:
        m = m.reshape(1, -1)
    return m


def rref(a, p: int) -> np.ndarray:
    """Reduced row echelon form, zero rows dropped."""
    m = asmat(a, p).copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    m = m[:r]
    return m


def rank(a, p: int) -> int:
    return rref(a, p).shape[0]


def nullspace(a, p: int) -> np.ndarray:
    """Basis (rref rows) of {x : x @ a == 0}.

    Row-reduce [a | I]; rows whose left block vanished record, in the right
    block, the row combination that killed them, i.e. a kernel vector.
    """
    m = asmat(a, p)
    n, cols = m.shape
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    red = _rref_full(aug, p, lead_cols=cols)
    out = [row[cols:] for row in red if not row[:cols].any()]
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return rref(np.array(out), p)


def _rref_full(m: np.ndarray, p: int, lead_cols: int) -> np.ndarray:
    """rref using only the first lead_cols columns for pivoting; keeps all rows."""
    m = m.copy() % p
    rows = m.shape[0]
    r = 0
    for c in range(lead_cols):
        piv = None
        for i in range(r, rows):
            if m[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        r += 1
        if r == rows:
            break
    return m


def row_space(a, p: int) -> np.ndarray:
    return rref(a, p)


def in_row_space(basis: np.ndarray, v, p: int) -> bool:
    """Membership test against an rref basis."""
    v = np.array(v, dtype=np.int64) % p
    for row in basis:
        lead = _lead(row)
        if lead is None:
            continue
        if v[lead]:
            v = (v - v[lead] * row) % p
    return not v.any()


def coords_in_row_space(basis: np.ndarray, v, p: int):
    """Coefficients c with c @ basis == v, or None."""
    v = np.array(v, dtype=np.int64) % p
    coeff = np.zeros(basis.shape[0], dtype=np.int64)
    for k, row in enumerate(basis):
        lead = _lead(row)
        if lead is None:
            continue
        if v[lead]:
            coeff[k] = v[lead] % p
            v = (v - v[lead] * row) % p
    if v.any():
        return None
    return coeff


def _lead(row):
    nz = np.nonzero(row)[0]
    return int(nz[0]) if len(nz) else None


def intersect_row_spaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Basis of the intersection of two row spaces (Zassenhaus)."""
    a = rref(a, p)
    b = rref(b, p)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, a.shape[1] if a.size else b.shape[1]), dtype=np.int64)
    n = a.shape[1]
    top = np.concatenate([a, a], axis=1)
    bot = np.concatenate([b, np.zeros_like(b)], axis=1)
    m = rref(np.concatenate([top, bot]), p)
    out = [row[n:] for row in m if not row[:n].any() and row[n:].any()]
    if not out:
        return np.zeros((0, n), dtype=np.int64)
    return rref(np.array(out), p)


def solve_right(a: np.ndarray, b, p: int):
    """One solution x of x @ a == b, or None."""
    a = asmat(a, p)
    b = np.array(b, dtype=np.int64) % p
    k, n = a.shape
    aug = np.concatenate([a, np.eye(k, dtype=np.int64)], axis=1)
    red = rref(aug, p)
    x = np.zeros(k, dtype=np.int64)
    v = b.copy()
    for row in red:
        lead = _lead(row[:n])
        if lead is None:
            continue
        if v[lead]:
            c = v[lead]
            v = (v - c * row[:n]) % p
            x = (x + c * row[n:]) % p
    if v.any():
        return None
    return x


def mat_inv(m: np.ndarray, p: int) -> np.ndarray:
    m = asmat(m, p)
    k = m.shape[0]
    aug = np.concatenate([m, np.eye(k, dtype=np.int64)], axis=1)
    red = rref(aug, p)
    if red.shape[0] < k or (red[:, :k] != np.eye(k, dtype=np.int64)).any():
        raise ValueError("matrix not invertible mod %d" % p)
    return red[:, k:]


def enumerate_space(basis: np.ndarray, p: int):
    """All vectors of a row space, coefficient tuples in lexicographic order."""
    k = basis.shape[0]
    n = basis.shape[1]
    if k == 0:
        yield np.zeros(n, dtype=np.int64)
        return
    idx = np.zeros(k, dtype=np.int64)
    total = p**k
    for t in range(total):
        coeffs = []
        tt = t
        for _ in range(k):
            coeffs.append(tt % p)
            tt //= p
        coeffs = np.array(coeffs[::-1], dtype=np.int64)
        yield (coeffs @ basis) % p
