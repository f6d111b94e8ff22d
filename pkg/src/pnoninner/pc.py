"""Power-commutator presentation engine for finite p-groups.

A presentation on generators g1..gn (p an odd prime) is given by

    g_i^p        = power_rel[i]     (a normal word over generators of index > i)
    [g_j, g_i]   = comm_rel[j, i]   (j > i, a normal word over generators of index > j)

with omitted relations trivial.  Commutators are [g, h] = g^-1 h^-1 g h, so the
exchange rule used by collection is  g_j g_i = g_i g_j [g_j, g_i]  for j > i.

Elements are plain tuples of exponents (e_1, ..., e_n), each in [0, p); the
tuple IS the normal form g1^e1 ... gn^en.  Collection from the left inserts one
generator at a time into an already-normal word, reducing exponents mod p
immediately through the power relations.  All operations are pure; a
presentation caches derived tables (guarded by a lock) but is otherwise
immutable.

Words handed to collect() are sequences of signed 1-based letters: +i means
g_i, -i means g_i^-1.  Inverse letters are rewritten through
g_i^-1 = g_i^(p-1) * (g_i^p)^-1 before collection, which keeps the collector
single-pass.
"""

from __future__ import annotations

import threading

import numpy as np

DEFAULT_ENUM_BOUND = 10**6
EXHAUSTIVE_ASSOC_BOUND = 3**6
RANDOM_TRIPLES = 10**5

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in _SMALL_PRIMES:
        if p == q:
            return True
        if p % q == 0:
            return False
    i = 37
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


class PresentationError(ValueError):
    """Malformed presentation: index invariants or parameter constraints."""


class EnumerationBoundError(RuntimeError):
    """Group larger than the configured enumeration bound."""


def _check_word(exps, n: int, min_index: int, what: str):
    if len(exps) != n:
        raise PresentationError(f"{what}: word length {len(exps)} != gens {n}")
    for idx, e in enumerate(exps, start=1):
        if e and idx <= min_index:
            raise PresentationError(
                f"{what}: references g{idx} but may only use indices > {min_index}"
            )


class PcPresentation:
    """Immutable power-commutator presentation of a finite p-group."""

    def __init__(self, p: int, n: int, power=None, comm=None):
        if not _is_prime(p) or p < 3:
            raise PresentationError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise PresentationError("need at least one generator")
        self.p = p
        self.n = n
        power = dict(power or {})
        comm = dict(comm or {})
        self.power_rel = {}
        for i, w in power.items():
            if not 1 <= i <= n:
                raise PresentationError(f"power relation index {i} out of range")
            w = tuple(int(e) % p for e in w)
            _check_word(w, n, i, f"pow {i}")
            if any(w):
                self.power_rel[i] = w
        self.comm_rel = {}
        for (j, i), w in comm.items():
            if not (1 <= i < j <= n):
                raise PresentationError(f"comm relation ({j},{i}) needs j > i >= 1")
            w = tuple(int(e) % p for e in w)
            _check_word(w, n, j, f"comm {j} {i}")
            if any(w):
                self.comm_rel[(j, i)] = w
        self.order = p**n
        self.identity = (0,) * n
        self._lock = threading.Lock()
        self._cache = {}

    # -- basic word plumbing ------------------------------------------------

    def generator(self, i: int):
        if not 1 <= i <= self.n:
            raise IndexError(f"generator index {i} out of range 1..{self.n}")
        e = [0] * self.n
        e[i - 1] = 1
        return tuple(e)

    def generators(self):
        return [self.generator(i) for i in range(1, self.n + 1)]

    def word_letters(self, exps):
        """Normal word as ascending positive letters."""
        out = []
        for idx, e in enumerate(exps, start=1):
            out.extend([idx] * e)
        return out

    def _power_word(self, i: int):
        w = self.power_rel.get(i)
        return self.word_letters(w) if w else []

    def _comm_word(self, j: int, i: int):
        w = self.comm_rel.get((j, i))
        return self.word_letters(w) if w else []

    def _inverse_letters(self, i: int):
        """Letters of g_i^-1: g_i^(p-1) followed by (g_i^p)^-1."""
        key = ("invlet", i)
        got = self._cache.get(key)
        if got is not None:
            return got
        letters = [i] * (self.p - 1)
        tail = []
        for l in reversed(self._power_word(i)):
            tail.extend(self._inverse_letters(l))
        letters += tail
        with self._lock:
            self._cache[key] = letters
        return letters

    def expand_word(self, word):
        """Signed letters -> positive letters."""
        out = []
        for l in word:
            if l == 0 or abs(l) > self.n:
                raise IndexError(f"letter {l} out of range for {self.n} generators")
            if l > 0:
                out.append(l)
            else:
                out.extend(self._inverse_letters(-l))
        return out

    # -- collection ----------------------------------------------------------

    def _mult_gen(self, x, k: int):
        """Normal form of x * g_k.  Collection step: exchange past the last letter."""
        # find last nonzero position of x
        m = 0
        for idx in range(self.n, 0, -1):
            if x[idx - 1]:
                m = idx
                break
        if m <= k:
            if m < k or x[k - 1] + 1 < self.p:
                y = list(x)
                y[k - 1] += 1
                return tuple(y)
            y = list(x)
            y[k - 1] = 0
            r = tuple(y)
            for t in self._power_word(k):
                r = self._mult_gen(r, t)
            return r
        # m > k: x = y * g_m, so x*g_k = y * (g_m g_k) = y * g_k * g_m * [g_m, g_k]
        y = list(x)
        y[m - 1] -= 1
        r = self._mult_gen(tuple(y), k)
        r = self._mult_gen(r, m)
        for t in self._comm_word(m, k):
            r = self._mult_gen(r, t)
        return r

    def collect(self, word):
        """Normal form of an arbitrary signed word."""
        r = self.identity
        for l in self.expand_word(word):
            r = self._mult_gen(r, l)
        return r

    def multiply(self, a, b):
        tabs = self._cache.get("gen_right_list")
        if tabs is not None:
            i = self.index_of(a)
            for idx, e in enumerate(b, start=1):
                t = tabs[idx]
                for _ in range(e):
                    i = t[i]
            return self.element_at(i)
        r = tuple(a)
        for idx, e in enumerate(b, start=1):
            for _ in range(e):
                r = self._mult_gen(r, idx)
        return r

    def inverse(self, a):
        letters = []
        for idx in range(self.n, 0, -1):
            letters.extend(self._inverse_letters(idx) * a[idx - 1])
        r = self.identity
        for l in letters:
            r = self._mult_gen(r, l)
        return r

    def power(self, a, k: int):
        if k < 0:
            return self.power(self.inverse(a), -k)
        r = self.identity
        base = tuple(a)
        while k:
            if k & 1:
                r = self.multiply(r, base)
            k >>= 1
            if k:
                base = self.multiply(base, base)
        return r

    def conjugate(self, a, b):
        """a^b = b^-1 a b."""
        return self.multiply(self.inverse(b), self.multiply(a, b))

    def commutator(self, a, b):
        """[a, b] = a^-1 b^-1 a b."""
        ab = self.multiply(a, b)
        ba = self.multiply(b, a)
        return self.multiply(self.inverse(ba), ab)

    def left_normed(self, elems):
        """[[a1, a2], a3], ... for k >= 2 arguments."""
        if len(elems) < 2:
            raise ValueError("left-normed commutator needs at least 2 arguments")
        r = self.commutator(elems[0], elems[1])
        for x in elems[2:]:
            r = self.commutator(r, x)
        return r

    def element_order(self, a) -> int:
        r = tuple(a)
        ordr = 1
        while r != self.identity:
            r = self.power(r, self.p)
            ordr *= self.p
            if ordr > self.order:
                raise RuntimeError("element order exceeds group order; inconsistent presentation")
        return ordr

    # -- enumeration and tables ----------------------------------------------

    def enum_bound(self) -> int:
        import os

        env = os.environ.get("PNONINNER_ENUM_BOUND")
        return int(env) if env else DEFAULT_ENUM_BOUND

    def _strides(self):
        return [self.p ** (self.n - i) for i in range(self.n + 1)]  # strides[i], i 1-based; [0] unused

    def index_of(self, x) -> int:
        i = 0
        for e in x:
            i = i * self.p + e
        return i

    def element_at(self, i: int):
        out = []
        for k in range(self.n):
            out.append(i // self.p ** (self.n - 1 - k) % self.p)
        return tuple(out)

    def elements(self):
        """All p^n elements, lexicographic order."""
        if self.order > self.enum_bound():
            raise EnumerationBoundError(
                f"group order {self.order} exceeds enumeration bound {self.enum_bound()}"
            )
        for i in range(self.order):
            yield self.element_at(i)

    def ensure_tables(self):
        """Right-multiplication-by-generator tables over the full enumeration."""
        if "gen_right" in self._cache:
            return self._cache["gen_right"]
        if self.order > self.enum_bound():
            raise EnumerationBoundError(
                f"group order {self.order} exceeds enumeration bound {self.enum_bound()}"
            )
        p, n, N = self.p, self.n, self.order
        strides = self._strides()
        R = [None] * (n + 1)
        for k in range(n, 0, -1):
            Rk = np.zeros(N, dtype=np.int64)
            # elements supported on positions 1..k
            m = np.arange(p**k, dtype=np.int64)
            base = m * strides[k]
            ek = m % p
            plain = base[ek < p - 1]
            Rk[plain] = plain + strides[k]
            over = base[ek == p - 1]
            cur = over - (p - 1) * strides[k]
            for t in self._power_word(k):
                cur = R[t][cur]
            Rk[over] = cur
            # elements whose last nonzero position is mm > k
            for mm in range(k + 1, n + 1):
                q = np.arange(p ** (mm - 1), dtype=np.int64) * strides[mm - 1]
                commw = self._comm_word(mm, k)
                for e in range(1, p):
                    x = q + e * strides[mm]
                    cur = Rk[x - strides[mm]]
                    cur = R[mm][cur]
                    for t in commw:
                        cur = R[t][cur]
                    Rk[x] = cur
            R[k] = Rk
        with self._lock:
            self._cache["gen_right"] = R
            self._cache["gen_right_list"] = [None] + [r.tolist() for r in R[1:]]
        return R

    def right_mult_array(self, b):
        """Array X with X[i] = index(element_at(i) * b)."""
        R = self.ensure_tables()
        cur = np.arange(self.order, dtype=np.int64)
        for idx, e in enumerate(b, start=1):
            for _ in range(e):
                cur = R[idx][cur]
        return cur

    def left_mult_array(self, a):
        """Array X with X[i] = index(a * element_at(i)), built by stride blocks."""
        R = self.ensure_tables()
        p, n = self.p, self.n
        strides = self._strides()
        L = np.zeros(self.order, dtype=np.int64)
        L[0] = self.index_of(a)
        for k in range(1, n + 1):
            blk = np.arange(p ** (k - 1), dtype=np.int64) * strides[k - 1]
            for e in range(1, p):
                L[blk + e * strides[k]] = R[k][L[blk + (e - 1) * strides[k]]]
        return L

    def inverse_array(self):
        """Array I with I[i] = index of element_at(i)^-1."""
        got = self._cache.get("inv_array")
        if got is not None:
            return got
        R = self.ensure_tables()
        p, n = self.p, self.n
        strides = self._strides()
        linv = []
        for k in range(1, n + 1):
            linv.append(self.left_mult_array(self.inverse(self.generator(k))))
        I = np.zeros(self.order, dtype=np.int64)
        for k in range(1, n + 1):
            blk = np.arange(p ** (k - 1), dtype=np.int64) * strides[k - 1]
            for e in range(1, p):
                I[blk + e * strides[k]] = linv[k - 1][I[blk + (e - 1) * strides[k]]]
        with self._lock:
            self._cache["inv_array"] = I
        return I

    def full_table(self):
        """Cayley table as an (N, N) array, for small N only."""
        got = self._cache.get("full_table")
        if got is not None:
            return got
        N = self.order
        if N > 4200:
            raise EnumerationBoundError(f"full Cayley table disabled for order {N}")
        T = np.zeros((N, N), dtype=np.int64)
        R = self.ensure_tables()
        p, n = self.p, self.n
        strides = self._strides()
        col = np.arange(N, dtype=np.int64)
        T[:, 0] = col
        for k in range(1, n + 1):
            blk = np.arange(p ** (k - 1), dtype=np.int64) * strides[k - 1]
            for e in range(1, p):
                for b in blk:
                    T[:, b + e * strides[k]] = R[k][T[:, b + (e - 1) * strides[k]]]
        with self._lock:
            self._cache["full_table"] = T
        return T

    # -- consistency ----------------------------------------------------------

    def is_consistent(self, exhaustive=None, samples: int = RANDOM_TRIPLES, seed: int = 0) -> bool:
        """Empirical associativity check.

        Exhaustive over all |G|^3 triples when |G| <= 3^6 (or forced); above
        that, a structured sample (all generator pairs against every element)
        plus `samples` seeded random triples.
        """
        N = self.order
        if exhaustive is None:
            exhaustive = N <= EXHAUSTIVE_ASSOC_BOUND
        if exhaustive:
            if N > EXHAUSTIVE_ASSOC_BOUND:
                raise EnumerationBoundError(
                    f"exhaustive associativity limited to order {EXHAUSTIVE_ASSOC_BOUND}"
                )
            T = self.full_table()
            for a in range(N):
                # (a*b)*c vs a*(b*c) for all b, c
                if not np.array_equal(T[T[a, :], :], T[a, T]):
                    return False
            return True
        R = self.ensure_tables()
        idx = np.arange(N, dtype=np.int64)
        # structured: x * g_i * g_j against x * (g_i g_j), all x, all i, j
        for i in range(1, self.n + 1):
            gi = R[i][idx]
            for j in range(1, self.n + 1):
                lhs = R[j][gi]
                rhs_elem = self.multiply(self.generator(i), self.generator(j))
                rhs = self.right_mult_array(rhs_elem)
                if not np.array_equal(lhs, rhs):
                    return False
        rng = np.random.default_rng(seed)
        gl = self._cache["gen_right_list"]
        for _ in range(samples):
            a, b, c = (int(rng.integers(N)) for _ in range(3))
            eb = self.element_at(b)
            ec = self.element_at(c)
            ab = a
            for k, e in enumerate(eb, start=1):
                t = gl[k]
                for _ in range(e):
                    ab = t[ab]
            lhs = ab
            for k, e in enumerate(ec, start=1):
                t = gl[k]
                for _ in range(e):
                    lhs = t[lhs]
            bc = self.multiply(eb, ec)
            rhs = a
            for k, e in enumerate(bc, start=1):
                t = gl[k]
                for _ in range(e):
                    rhs = t[rhs]
            if lhs != rhs:
                return False
        return True

    # -- misc -----------------------------------------------------------------

    def __repr__(self):
        return f"PcPresentation(p={self.p}, n={self.n}, order={self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, PcPresentation)
            and self.p == other.p
            and self.n == other.n
            and self.power_rel == other.power_rel
            and self.comm_rel == other.comm_rel
        )

    def __hash__(self):
        return hash(
            (self.p, self.n, tuple(sorted(self.power_rel.items())), tuple(sorted(self.comm_rel.items())))
        )
