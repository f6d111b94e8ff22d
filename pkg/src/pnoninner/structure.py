"""Subgroups, characteristic series, quotients and structural predicates.

Subgroups are stored as canonical induced generating sequences: pivots with
strictly increasing leading indices, leading exponent 1, and zero entries at
the leading positions of the other pivots.  The canonical form is unique per
subgroup, so igs tuples are safe golden values.  Membership is sifting; the
span of the igs is the subgroup, which the construction guarantees by closing
the pivot set under p-th powers and commutators.
"""

from __future__ import annotations

import numpy as np

from .pc import EXHAUSTIVE_ASSOC_BOUND, EnumerationBoundError, PcPresentation

SUBGROUP_ENUM_LIMIT = 10**6


def leading_index(x) -> int | None:
    for idx, e in enumerate(x, start=1):
        if e:
            return idx
    return None


class Subgroup:
    """Echelonized subgroup of a PcPresentation."""

    def __init__(self, parent: PcPresentation, igs):
        self.parent = parent
        self.igs = tuple(tuple(x) for x in igs)
        leads = [leading_index(x) for x in self.igs]
        if None in leads or sorted(leads) != leads or len(set(leads)) != len(leads):
            raise ValueError("igs must have strictly increasing leading indices")
        self.order = parent.p ** len(self.igs)
        self._cache = {}

    @property
    def leads(self):
        return [leading_index(x) for x in self.igs]

    def __contains__(self, x):
        return self.sift(x) == self.parent.identity

    def sift(self, x):
        """Residue of x after clearing pivot positions from the left."""
        G = self.parent
        x = tuple(x)
        by_lead = {leading_index(y): y for y in self.igs}
        while x != G.identity:
            l = leading_index(x)
            piv = by_lead.get(l)
            if piv is None:
                return x
            e = x[l - 1]
            x = G.multiply(G.power(piv, G.p - e), x)
        return x

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.igs == other.igs
        )

    def __hash__(self):
        return hash((id(self.parent), self.igs))

    def __le__(self, other):
        return all(x in other for x in self.igs)

    def __lt__(self, other):
        return self <= other and self.order < other.order

    def __repr__(self):
        return f"Subgroup(order={self.order}, leads={self.leads})"

    def elements(self):
        """All elements of the span, pivot-exponent odometer order."""
        G = self.parent
        if self.order > SUBGROUP_ENUM_LIMIT:
            raise EnumerationBoundError("subgroup too large to enumerate")
        k = len(self.igs)

        def rec(i, cur):
            if i == k:
                yield cur
                return
            x = cur
            for e in range(G.p):
                yield from rec(i + 1, x)
                if e < G.p - 1:
                    x = G.multiply(x, self.igs[i])

        yield from rec(0, G.identity)

    def element_indices(self):
        got = self._cache.get("indices")
        if got is None:
            G = self.parent
            got = np.array(sorted(G.index_of(x) for x in self.elements()), dtype=np.int64)
            self._cache["indices"] = got
        return got

    def members_mask(self):
        got = self._cache.get("mask")
        if got is None:
            got = np.zeros(self.parent.order, dtype=bool)
            got[self.element_indices()] = True
            self._cache["mask"] = got
        return got

    def is_normal(self) -> bool:
        G = self.parent
        for piv in self.igs:
            for g in G.generators():
                if G.conjugate(piv, g) not in self:
                    return False
        return True

    def is_abelian(self) -> bool:
        G = self.parent
        for i, a in enumerate(self.igs):
            for b in self.igs[i + 1 :]:
                if G.commutator(a, b) != G.identity:
                    return False
        return True


def trivial_subgroup(G: PcPresentation) -> Subgroup:
    return Subgroup(G, [])


def full_subgroup(G: PcPresentation) -> Subgroup:
    return Subgroup(G, G.generators())


def _normalize_lead(G: PcPresentation, x):
    l = leading_index(x)
    e = x[l - 1]
    if e == 1:
        return x
    return G.power(x, pow(e, -1, G.p))


def _reduce_igs(G: PcPresentation, pivots: dict):
    """Canonical form: clear other pivots' leading positions, top-down."""
    leads = sorted(pivots)
    for l in reversed(leads):
        piv = pivots[l]
        for l2 in leads:
            if l2 >= l:
                continue
            y = pivots[l2]
            e = y[l - 1]
            if e:
                pivots[l2] = G.multiply(y, G.power(piv, G.p - e))
    return [pivots[l] for l in leads]


def subgroup_from_gens(G: PcPresentation, gens, normal_closure: bool = False) -> Subgroup:
    """Subgroup generated by gens, via non-commutative Gaussian elimination.

    With normal_closure=True, also closes under conjugation by the pcgs of G.
    """
    pivots: dict[int, tuple] = {}

    def sift(x):
        while x != G.identity:
            l = leading_index(x)
            piv = pivots.get(l)
            if piv is None:
                return x
            e = x[l - 1]
            x = G.multiply(G.power(piv, G.p - e), x)
        return x

    queue = [tuple(x) for x in gens]
    while queue:
        x = sift(queue.pop())
        if x == G.identity:
            continue
        x = _normalize_lead(G, x)
        l = leading_index(x)
        pivots[l] = x
        queue.append(G.power(x, G.p))
        for piv in list(pivots.values()):
            queue.append(G.commutator(x, piv))
            queue.append(G.commutator(piv, x))
        if normal_closure:
            for g in G.generators():
                queue.append(G.conjugate(x, g))
    return Subgroup(G, _reduce_igs(G, pivots))


def subgroup_from_indices(G: PcPresentation, indices) -> Subgroup:
    """Subgroup from the full element set: smallest element per leading index."""
    indices = np.asarray(indices, dtype=np.int64)
    indices = indices[indices != 0]
    if len(indices) == 0:
        return trivial_subgroup(G)
    lead = _leading_index_array(G, indices)
    pivots = {}
    order = np.argsort(indices, kind="stable")
    for pos in order:
        l = int(lead[pos])
        if l not in pivots:
            pivots[l] = _normalize_lead(G, G.element_at(int(indices[pos])))
    H = Subgroup(G, _reduce_igs(G, pivots))
    if H.order != len(indices) + 1:
        raise ValueError("element set is not a subgroup span")
    return H


def _leading_index_array(G: PcPresentation, idx: np.ndarray) -> np.ndarray:
    out = np.zeros(len(idx), dtype=np.int64)
    rem = idx.copy()
    for l in range(1, G.n + 1):
        stride = G.p ** (G.n - l)
        digit = (rem // stride) % G.p
        hit = (out == 0) & (digit > 0)
        out[hit] = l
    return out


def subgroup_from_mask(G: PcPresentation, mask: np.ndarray) -> Subgroup:
    return subgroup_from_indices(G, np.nonzero(mask)[0])


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_from_gens(a.parent, list(a.igs) + list(b.igs))


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    small, big = (a, b) if a.order <= b.order else (b, a)
    got = [x for x in small.elements() if x in big]
    G = a.parent
    return subgroup_from_indices(G, [G.index_of(x) for x in got])


def normal_closure(G: PcPresentation, gens) -> Subgroup:
    return subgroup_from_gens(G, gens, normal_closure=True)


def comm_subgroup(a: Subgroup, b: Subgroup) -> Subgroup:
    """[A, B] for normal A, B: normal closure of pivot commutators."""
    G = a.parent
    gens = [G.commutator(x, y) for x in a.igs for y in b.igs]
    return normal_closure(G, gens)


# -- centralizers and series -------------------------------------------------


def _conj_array(G: PcPresentation, g):
    """Array C with C[i] = index of g^-1 * element_at(i) * g."""
    B = G.right_mult_array(g)
    L = G.left_mult_array(G.inverse(g))
    return L[B]


def centralizer_mask(G: PcPresentation, elems) -> np.ndarray:
    mask = np.ones(G.order, dtype=bool)
    idx = np.arange(G.order, dtype=np.int64)
    for s in elems:
        Bs = G.right_mult_array(s)
        Ls = G.left_mult_array(s)
        mask &= Bs == Ls
    return mask


def centralizer(G: PcPresentation, target) -> Subgroup:
    """C_G(S) for a Subgroup or single element."""
    if isinstance(target, Subgroup):
        elems = target.igs
    else:
        elems = [tuple(target)]
    return subgroup_from_mask(G, centralizer_mask(G, elems))


def center(G: PcPresentation) -> Subgroup:
    got = G._cache.get("center_sub")
    if got is None:
        got = centralizer(G, full_subgroup(G))
        with G._lock:
            G._cache["center_sub"] = got
    return got


def _coset_rep_array(G: PcPresentation, N: Subgroup) -> np.ndarray:
    """R[i] = index of the canonical representative of N * element_at(i)."""
    R = np.arange(G.order, dtype=np.int64)
    for piv in N.igs:
        l = leading_index(piv)
        stride = G.p ** (G.n - l)
        for e in range(1, G.p):
            Lp = G.left_mult_array(G.power(piv, G.p - e))
            digit = (R // stride) % G.p
            hit = digit == e
            R[hit] = Lp[R[hit]]
    return R


def upper_central_series(G: PcPresentation):
    """[1, Z1, Z2, ..., Zc = G]."""
    got = G._cache.get("ucs")
    if got is not None:
        return got
    series = [trivial_subgroup(G)]
    conjs = [_conj_array(G, g) for g in G.generators()]
    cur = series[0]
    while cur.order < G.order:
        reps = _coset_rep_array(G, cur)
        mask = np.ones(G.order, dtype=bool)
        for C in conjs:
            mask &= reps[C] == reps
        nxt = subgroup_from_mask(G, mask)
        if nxt.order == cur.order:
            raise RuntimeError("upper central series stalled; group not nilpotent?")
        series.append(nxt)
        cur = nxt
    with G._lock:
        G._cache["ucs"] = series
    return series


def lower_central_series(G: PcPresentation):
    """[G, gamma2, gamma3, ..., 1]."""
    got = G._cache.get("lcs")
    if got is not None:
        return got
    series = [full_subgroup(G)]
    cur = series[0]
    while cur.order > 1:
        nxt = comm_subgroup(cur, full_subgroup(G))
        series.append(nxt)
        if nxt.order == cur.order:
            raise RuntimeError("lower central series stalled")
        cur = nxt
    with G._lock:
        G._cache["lcs"] = series
    return series


def nilpotency_class(G: PcPresentation) -> int:
    return len(lower_central_series(G)) - 1


def coclass(G: PcPresentation) -> int:
    return G.n - nilpotency_class(G)


def gamma(G: PcPresentation, k: int) -> Subgroup:
    if k < 1:
        raise ValueError("gamma index must be >= 1")
    lcs = lower_central_series(G)
    if k <= len(lcs):
        return lcs[k - 1]
    return lcs[-1]


def zeta(G: PcPresentation, i: int) -> Subgroup:
    """Z_i(G); saturates at G."""
    ucs = upper_central_series(G)
    if i < len(ucs):
        return ucs[i]
    return ucs[-1]


# -- power subgroups ----------------------------------------------------------


def is_regular(G: PcPresentation) -> bool:
    """Exact regularity: shortcuts, then exhaustive witness search."""
    got = G._cache.get("regular")
    if got is not None:
        return got
    res = _is_regular_impl(G)
    with G._lock:
        G._cache["regular"] = res
    return res


def _is_regular_impl(G: PcPresentation) -> bool:
    if nilpotency_class(G) < G.p:
        return True
    if exponent(G) == G.p:
        return True
    # witness search: x, y with (xy)^p != x^p y^p z^p for all z in U1(gamma2(<x,y>))
    if G.order > 3**8:
        raise EnumerationBoundError("regularity test beyond exact bound")
    G.ensure_tables()
    N = G.order
    pw = np.zeros(N, dtype=np.int64)
    for i in range(N):
        pw[i] = G.index_of(G.power(G.element_at(i), G.p))

    def bad_pair(xi, yi):
        x = G.element_at(xi)
        y = G.element_at(yi)
        lhs_idx = int(pw[G.index_of(G.multiply(x, y))])
        base = G.multiply(G.element_at(int(pw[xi])), G.element_at(int(pw[yi])))
        lhs = G.element_at(lhs_idx)
        if lhs == base:
            return False
        H = subgroup_from_gens(G, [x, y])
        g2 = comm_subgroup_within(G, H)
        ag = subgroup_from_gens(G, [G.power(z, G.p) for z in g2.elements()])
        return not any(lhs == G.multiply(base, z) for z in ag.elements())

    # witnesses, when they exist, show up on structured pairs almost always
    gen_idx = [G.index_of(g) for g in G.generators()]
    for xi in gen_idx:
        for yi in gen_idx:
            if bad_pair(xi, yi):
                return False
    for xi in gen_idx:
        for yi in range(N):
            if bad_pair(xi, yi) or bad_pair(yi, xi):
                return False
    if N > EXHAUSTIVE_ASSOC_BOUND:
        raise EnumerationBoundError(
            "no irregularity witness on structured pairs; full certification "
            f"of regularity is limited to order {EXHAUSTIVE_ASSOC_BOUND}"
        )
    for xi in range(N):
        for yi in range(N):
            if bad_pair(xi, yi):
                return False
    return True


def comm_subgroup_within(G: PcPresentation, H: Subgroup) -> Subgroup:
    """gamma_2(H) as a subgroup of G: closure of pivot commutators under H-conjugation."""
    pivots = [G.commutator(a, b) for a in H.igs for b in H.igs]
    sub = subgroup_from_gens(G, pivots)
    while True:
        new = []
        for x in sub.igs:
            for h in H.igs:
                c = G.conjugate(x, h)
                if c not in sub:
                    new.append(c)
        if not new:
            return sub
        sub = subgroup_from_gens(G, list(sub.igs) + new)


def agemo(G: PcPresentation, r: int = 1) -> Subgroup:
    """G^(p^r), the subgroup generated by all p^r-th powers."""
    key = ("agemo", r)
    got = G._cache.get(key)
    if got is not None:
        return got
    res = _agemo_subgroup(G, full_subgroup(G), r)
    with G._lock:
        G._cache[key] = res
    return res


def _agemo_subgroup(G: PcPresentation, H: Subgroup, r: int) -> Subgroup:
    q = G.p**r
    if H.order <= 3**9 or nilpotency_class(G) >= G.p:
        if H.order > SUBGROUP_ENUM_LIMIT:
            raise EnumerationBoundError("agemo enumeration beyond bound")
        gens = [G.power(x, q) for x in H.elements()]
        return subgroup_from_gens(G, gens)
    # regular shortcut: generated by p^r-th powers of the igs of the lower
    # central series terms (valid when class(G) < p)
    gens = []
    if isinstance(H, Subgroup) and H.order == G.order:
        terms = lower_central_series(G)
    else:
        terms = [H]
        cur = H
        while cur.order > 1:
            cur = comm_subgroup_within(G, H if cur is H else cur)
            if cur.order == terms[-1].order:
                break
            terms.append(cur)
    for t in terms:
        gens.extend(G.power(x, q) for x in t.igs)
    return subgroup_from_gens(G, gens)


def subgroup_agemo(H: Subgroup, r: int = 1) -> Subgroup:
    """H^(p^r) inside H.parent, by enumeration of H."""
    G = H.parent
    q = G.p**r
    gens = [G.power(x, q) for x in H.elements()]
    return subgroup_from_gens(G, gens)


def frattini(G: PcPresentation) -> Subgroup:
    return agemo_gamma(G, 2)


def agemo_gamma(G: PcPresentation, k: int) -> Subgroup:
    """G^p * gamma_k(G)."""
    if k < 2:
        raise ValueError("agemo_gamma needs k >= 2")
    key = ("agemo_gamma", k)
    got = G._cache.get(key)
    if got is not None:
        return got
    res = join(agemo(G, 1), gamma(G, k))
    with G._lock:
        G._cache[key] = res
    return res


def exponent(G: PcPresentation) -> int:
    got = G._cache.get("exponent")
    if got is not None:
        return got
    if nilpotency_class(G) < G.p:
        # regular: exponent is attained on any generating set closure chain
        e = 1
        for t in lower_central_series(G):
            for x in t.igs:
                e = max(e, G.element_order(x))
        res = e
    else:
        G.ensure_tables()
        res = max(G.element_order(G.element_at(i)) for i in range(G.order))
    with G._lock:
        G._cache["exponent"] = res
    return res


def rank(G: PcPresentation) -> int:
    """d(G) = minimal number of generators."""
    phi = frattini(G)
    return G.n - len(phi.igs)


def minimal_generators(G: PcPresentation):
    """Pcgs members outside Frattini, lexicographically least normal forms."""
    phi = frattini(G)
    out = []
    have = subgroup_from_gens(G, list(phi.igs))
    for g in G.generators():
        if g not in have:
            out.append(g)
            have = subgroup_from_gens(G, list(have.igs) + [g])
    return out


def is_powerful(G: PcPresentation) -> bool:
    return gamma(G, 2) <= agemo(G, 1)


def is_abelian(G: PcPresentation) -> bool:
    return nilpotency_class(G) <= 1


def is_extra_special(G: PcPresentation) -> bool:
    z = center(G)
    if z.order != G.p:
        return False
    return gamma(G, 2) == z and frattini(G) == z


def omega1(A: Subgroup) -> Subgroup:
    """Elements of order dividing p of an abelian subgroup."""
    if not A.is_abelian():
        raise ValueError("omega1 is restricted to abelian subgroups")
    G = A.parent
    idx = [G.index_of(x) for x in A.elements() if G.power(x, G.p) == G.identity]
    return subgroup_from_indices(G, idx)


def torsion_generated(A: Subgroup) -> Subgroup:
    """Subgroup generated by the order-p elements (any A; used for Omega1(Z2))."""
    G = A.parent
    gens = [x for x in A.elements() if G.power(x, G.p) == G.identity]
    return subgroup_from_gens(G, gens)


def z_star(G: PcPresentation, i: int = 2) -> Subgroup:
    """{a in Z_i(G) : a^p in Z(G)}."""
    zi = zeta(G, i)
    z1 = center(G)
    idx = [G.index_of(x) for x in zi.elements() if G.power(x, G.p) in z1]
    return subgroup_from_indices(G, idx)


def normal_cancellation_holds(G: PcPresentation, N: Subgroup, L: Subgroup) -> bool:
    """If N <= L*[N, G] then N <= L (true in every finite p-group)."""
    if not (N.is_normal() and L.is_normal()):
        raise ValueError("both subgroups must be normal")
    ng = comm_subgroup(N, full_subgroup(G))
    if not N <= join(L, ng):
        return True
    return N <= L


def maximal_subgroups(G: PcPresentation):
    """All index-p subgroups: preimages of hyperplanes of G/Phi(G)."""
    phi = frattini(G)
    gens = minimal_generators(G)
    d = len(gens)
    p = G.p
    out = []
    # hyperplanes of GF(p)^d: normal vectors up to scalar, first nonzero = 1
    for v in _proj_points(d, p):
        keep = []
        pivot_pos = next(i for i, c in enumerate(v) if c)
        for i in range(d):
            if i == pivot_pos:
                continue
            x = gens[i]
            c = v[i]
            if c:
                x = G.multiply(x, G.power(gens[pivot_pos], (p - c) % p))
            keep.append(x)
        out.append(subgroup_from_gens(G, keep + list(phi.igs)))
    return out


def _proj_points(d: int, p: int):
    for lead in range(d):
        base = [0] * d
        base[lead] = 1
        tails = [[]]
        for _ in range(d - lead - 1):
            tails = [t + [c] for t in tails for c in range(p)]
        for t in tails:
            yield base[: lead + 1] + t


# -- quotients -----------------------------------------------------------------


class QuotientMap:
    """G -> G/N with the quotient presented on the kernel-complement positions."""

    def __init__(self, source: PcPresentation, kernel: Subgroup):
        if kernel.parent is not source:
            raise ValueError("kernel belongs to a different group")
        if not kernel.is_normal():
            raise ValueError("kernel is not normal")
        self.source = source
        self.kernel = kernel
        self.kernel_leads = kernel.leads
        self.comp = [i for i in range(1, source.n + 1) if i not in self.kernel_leads]
        m = len(self.comp)
        p = source.p
        power = {}
        comm = {}
        for a, i in enumerate(self.comp, start=1):
            w = self.rep(source.power(source.generator(i), p))
            power[a] = self._to_quotient_word(w)
            for b, j in enumerate(self.comp, start=1):
                if b <= a:
                    continue
                w = self.rep(source.commutator(source.generator(j), source.generator(i)))
                word = self._to_quotient_word(w)
                if any(word):
                    comm[(b, a)] = word
        self.target = PcPresentation(p, m, power=power, comm=comm) if m else PcPresentation(p, 1)
        self._trivial_target = m == 0

    def rep(self, x):
        """Canonical coset representative: kernel pivot positions cleared."""
        G = self.source
        for piv in self.kernel.igs:
            l = leading_index(piv)
            e = x[l - 1]
            if e:
                x = G.multiply(G.power(piv, G.p - e), x)
        return x

    def _to_quotient_word(self, w):
        for l in self.kernel_leads:
            if w[l - 1]:
                raise RuntimeError("representative not cleared at kernel position")
        return tuple(w[i - 1] for i in self.comp)

    def project(self, x):
        if self._trivial_target:
            return self.target.identity
        return self._to_quotient_word(self.rep(tuple(x)))

    def section(self, q):
        out = [0] * self.source.n
        if not self._trivial_target:
            for pos, e in zip(self.comp, q):
                out[pos - 1] = e
        return tuple(out)

    def project_subgroup(self, H: Subgroup) -> Subgroup:
        imgs = [self.project(x) for x in H.igs]
        return subgroup_from_gens(self.target, imgs)

    def preimage_subgroup(self, Hbar: Subgroup) -> Subgroup:
        gens = [self.section(q) for q in Hbar.igs] + list(self.kernel.igs)
        return subgroup_from_gens(self.source, gens)

    def verify(self, exhaustive: bool = True) -> bool:
        """Check the projection is a homomorphism with the stated kernel."""
        G = self.source
        if exhaustive and G.order <= 3**7:
            for a in G.elements():
                pa = self.project(a)
                for g in G.generators():
                    if self.project(G.multiply(a, g)) != self.target.multiply(pa, self.project(g)):
                        return False
        else:
            rng = np.random.default_rng(0)
            for _ in range(2000):
                a = G.element_at(int(rng.integers(G.order)))
                b = G.element_at(int(rng.integers(G.order)))
                if self.project(G.multiply(a, b)) != self.target.multiply(
                    self.project(a), self.project(b)
                ):
                    return False
        ker = [x for x in self.kernel.igs if self.project(x) != self.target.identity]
        if ker:
            return False
        return self.target.order * self.kernel.order == G.order


def quotient(G: PcPresentation, N: Subgroup) -> QuotientMap:
    return QuotientMap(G, N)


# -- the U x V splitting --------------------------------------------------------


class NotApplicable(Exception):
    """Structural precondition of a construction does not hold."""


def split_extraspecial_product(G: PcPresentation):
    """G with |gamma2| = exp(G) = p as U x V, U central elementary, V extra-special.

    Returns (U, V) as subgroups; U is trivial when G itself is extra-special.
    """
    g2 = gamma(G, 2)
    if g2.order != G.p or exponent(G) != G.p:
        raise NotApplicable("requires |gamma_2(G)| = exp(G) = p")
    z = center(G)
    c = g2.igs[0]
    pairs = symplectic_pairs(G)
    vgens = [x for pair in pairs for x in pair]
    V = subgroup_from_gens(G, vgens)
    if z.order == G.p:
        return trivial_subgroup(G), V
    # complement of <c> inside Z(G), via coordinates of the elementary abelian Z
    zb = list(z.igs)
    coords_c = _el_ab_coords(G, zb, c)
    j0 = next(i for i, v in enumerate(coords_c) if v)
    inv = pow(int(coords_c[j0]), -1, G.p)
    ugens = []
    for a in range(len(zb)):
        if a == j0:
            continue
        e = coords_c[a]
        x = zb[a]
        if e:
            x = G.multiply(x, G.power(c, (G.p - e * inv) % G.p))
        ugens.append(x)
    U = subgroup_from_gens(G, ugens)
    if U.order * V.order != G.order or intersection(U, V).order != 1:
        raise RuntimeError("U x V decomposition failed verification")
    return U, V


def _el_ab_coords(G: PcPresentation, basis, x):
    """Coordinates of x in an elementary abelian subgroup with echelon basis."""
    coords = []
    for b in basis:
        l = leading_index(b)
        e = x[l - 1]
        coords.append(e)
        if e:
            x = G.multiply(G.power(b, G.p - e), x)
    if x != G.identity:
        raise ValueError("element not in the span of the basis")
    return coords


def symplectic_pairs(G: PcPresentation):
    """Hyperbolic pairs (x_i, y_i) for a group with |gamma2| = exp = p.

    Gram-Schmidt on the commutator form of G/Z(G); all choices lexicographic,
    so the output is deterministic.
    """
    z = center(G)
    c = gamma(G, 2).igs[0]
    gens = [g for g in minimal_generators(G) if g not in z]
    pairs = []
    pool = list(gens)

    def comm_exp(a, b):
        w = G.commutator(a, b)
        return _dlog(G, c, w)

    while pool:
        x = pool.pop(0)
        partner = None
        for y in pool:
            e = comm_exp(x, y)
            if e:
                partner = y
                epair = e
                break
        if partner is None:
            continue  # x became central modulo found pairs
        pool.remove(partner)
        y = G.power(partner, pow(epair, -1, G.p))
        pairs.append((x, y))
        # project the rest into the orthogonal complement of <x, y>
        newpool = []
        for w in pool:
            a = comm_exp(w, y)
            b = comm_exp(w, x)
            # w' = w * x^(-a) * y^(b); then [w', x] = [w', y] = 1 mod Z
            w2 = G.multiply(w, G.power(x, (G.p - a) % G.p))
            w2 = G.multiply(w2, G.power(y, b % G.p))
            if w2 not in z:
                newpool.append(w2)
        pool = newpool
    return pairs


def _dlog(G: PcPresentation, base, x) -> int:
    """k with base^k = x, both of order dividing p."""
    cur = G.identity
    for k in range(G.p):
        if cur == x:
            return k
        cur = G.multiply(cur, base)
    raise ValueError("element not a power of the base")
