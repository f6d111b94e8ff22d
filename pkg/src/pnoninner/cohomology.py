"""Modules over a quotient, the derivation solver, lifts, and inner tests.

A GModule is an elementary abelian group written multiplicatively inside G (a
carrier subgroup A <= Z(N) normal in G) or synthetically as GF(p)^k, together
with one action matrix per generator of the acting presentation Q.  Vectors
are rows; a right action composes as coords(a^(g h)) = coords(a) @ M_g @ M_h,
matching conjugation from the right.

Derivations d: Q -> M are stored by their generator images and evaluated by
scanning normal words with d(u t) = d(u) M_t + d(t).  The solver turns every
defining relator of Q into linear constraints on the generator images and
returns the echelonized nullspace, so bases are deterministic.
"""

from __future__ import annotations

import numpy as np

from . import gfp
from .pc import PcPresentation
from .structure import (
    QuotientMap,
    Subgroup,
    centralizer,
    center,
    intersection,
    leading_index,
    omega1,
    quotient,
    subgroup_from_gens,
    subgroup_from_indices,
    zeta,
)


class Carrier:
    """Elementary abelian subgroup with linear coordinates on its igs."""

    def __init__(self, sub: Subgroup):
        G = sub.parent
        if not sub.is_abelian():
            raise ValueError("carrier must be abelian")
        for x in sub.igs:
            if G.power(x, G.p) != G.identity:
                raise ValueError("carrier must be elementary abelian")
        self.sub = sub
        self.group = G
        self.dim = len(sub.igs)

    def coords(self, x):
        G = self.group
        out = []
        for b in self.sub.igs:
            l = leading_index(b)
            e = x[l - 1]
            out.append(e)
            if e:
                x = G.multiply(G.power(b, G.p - e), x)
        if x != G.identity:
            raise ValueError("element outside the carrier")
        return np.array(out, dtype=np.int64)

    def element(self, coords):
        G = self.group
        x = G.identity
        for b, e in zip(self.sub.igs, coords):
            e = int(e) % G.p
            if e:
                x = G.multiply(x, G.power(b, e))
        return x

    def contains(self, x) -> bool:
        try:
            self.coords(x)
            return True
        except ValueError:
            return False


class GModule:
    """Module over the generators of an acting presentation Q."""

    def __init__(self, q_group: PcPresentation, mats, *, ambient=None, kernel=None,
                 carrier: Carrier | None = None, qmap: QuotientMap | None = None,
                 check: bool = True):
        self.q_group = q_group
        self.p = q_group.p
        self.mats = [None] + [np.array(m, dtype=np.int64) % self.p for m in mats]
        if len(self.mats) != q_group.n + 1:
            raise ValueError("need one action matrix per generator")
        self.dim = self.mats[1].shape[0] if q_group.n else 0
        self.ambient = ambient
        self.kernel = kernel
        self.carrier = carrier
        self.qmap = qmap
        self._inv = {}
        self._elem_mats = {}
        if check:
            self.check_relators()

    @classmethod
    def from_matrices(cls, q_group: PcPresentation, mats) -> "GModule":
        return cls(q_group, mats)

    def mat_inv(self, i: int):
        got = self._inv.get(i)
        if got is None:
            got = gfp.mat_inv(self.mats[i], self.p)
            self._inv[i] = got
        return got

    def word_matrix(self, letters):
        m = np.eye(self.dim, dtype=np.int64)
        for l in letters:
            m = m @ (self.mats[l] if l > 0 else self.mat_inv(-l)) % self.p
        return m % self.p

    def element_matrix(self, q):
        q = tuple(q)
        got = self._elem_mats.get(q)
        if got is None:
            got = self.word_matrix(self.q_group.word_letters(q))
            self._elem_mats[q] = got
        return got

    def relator_words(self):
        """Signed defining relator words of Q, each collecting to the identity."""
        Q = self.q_group
        out = []
        for i in range(1, Q.n + 1):
            w = [i] * Q.p
            tail = Q.word_letters(Q.power_rel.get(i, Q.identity))
            w += [-l for l in reversed(tail)]
            out.append(w)
        for j in range(2, Q.n + 1):
            for i in range(1, j):
                w = [-j, -i, j, i]
                tail = Q.word_letters(Q.comm_rel.get((j, i), Q.identity))
                w += [-l for l in reversed(tail)]
                out.append(w)
        return out

    def check_relators(self):
        for w in self.relator_words():
            if (self.word_matrix(w) != np.eye(self.dim, dtype=np.int64)).any():
                raise ValueError("action does not respect the defining relators")

    def trivial_action(self) -> bool:
        eye = np.eye(self.dim, dtype=np.int64)
        return all((self.mats[i] == eye).all() for i in range(1, self.q_group.n + 1))


def build_module(G: PcPresentation, N: Subgroup, A: Subgroup) -> GModule:
    """Conjugation module on A <= Z(N), A normal in G, A elementary abelian."""
    if not N.is_normal():
        raise ValueError("N must be normal in G")
    if not A.is_normal():
        raise ValueError("A must be normal in G")
    for a in A.igs:
        for x in N.igs:
            if G.commutator(a, x) != G.identity:
                raise ValueError("A must centralize N (A <= Z(N))")
        if a not in N:
            raise ValueError("A must lie inside N")
    car = Carrier(subgroup_from_gens(G, list(A.igs)))
    qm = quotient(G, N)
    Q = qm.target
    mats = []
    for k in range(1, Q.n + 1):
        t = qm.section(Q.generator(k))
        rows = [car.coords(G.conjugate(b, t)) for b in car.sub.igs]
        mats.append(np.array(rows, dtype=np.int64).reshape(car.dim, car.dim))
    return GModule(Q, mats, ambient=G, kernel=N, carrier=car, qmap=qm)


def fixed_points(M: GModule) -> np.ndarray:
    """rref basis of M^Q = common kernel of (M_g - I)."""
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(M.dim, dtype=np.int64)
    stacked = np.concatenate([(M.mats[i] - eye) % M.p for i in range(1, M.q_group.n + 1)], axis=1)
    return gfp.nullspace(stacked, M.p)


def commutator_submodule(M: GModule) -> np.ndarray:
    """rref basis of [M, Q] = row space of all (M_g - I)."""
    if M.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    eye = np.eye(M.dim, dtype=np.int64)
    stacked = np.concatenate([(M.mats[i] - eye) % M.p for i in range(1, M.q_group.n + 1)], axis=0)
    return gfp.row_space(stacked, M.p)


class Derivation:
    """Cocycle Q -> M given by generator images (rows of an (n, dim) array)."""

    def __init__(self, module: GModule, images):
        self.module = module
        self.images = np.array(images, dtype=np.int64).reshape(module.q_group.n, module.dim) % module.p

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.module is other.module and (
            self.images == other.images
        ).all()

    def __add__(self, other):
        return Derivation(self.module, (self.images + other.images) % self.module.p)

    def __neg__(self):
        return Derivation(self.module, (-self.images) % self.module.p)

    def scale(self, k: int):
        return Derivation(self.module, (self.images * (k % self.module.p)) % self.module.p)

    def is_zero(self) -> bool:
        return not self.images.any()

    def additive_order(self) -> int:
        return 1 if self.is_zero() else self.module.p

    def evaluate(self, q):
        """Value at the group element with normal form q."""
        return self.evaluate_word(self.module.q_group.word_letters(q))

    def evaluate_word(self, letters):
        """Scan a signed word: d(u t) = d(u) M_t + d(t); d(t^-1) = -d(t) M_t^-1."""
        M = self.module
        d = np.zeros(M.dim, dtype=np.int64)
        for l in letters:
            if l > 0:
                d = (d @ M.mats[l] + self.images[l - 1]) % M.p
            else:
                inv = M.mat_inv(-l)
                d = ((d - self.images[-l - 1]) @ inv) % M.p
        return d

    def evaluate_element(self, q):
        """Value as an Element of the ambient group (embedded modules only)."""
        return self.module.carrier.element(self.evaluate(q))

    def check_cocycle(self, exhaustive_bound: int = 250) -> bool:
        """delta(ab) = delta(a)^b + delta(b); exhaustive for small Q, sampled above."""
        Q = self.module.q_group
        if Q.order <= exhaustive_bound:
            elems = list(Q.elements())
        else:
            rng = np.random.default_rng(0)
            elems = [Q.element_at(int(rng.integers(Q.order))) for _ in range(60)]
        vals = {q: self.evaluate(q) for q in elems}
        for a in elems:
            for b in elems:
                ab = Q.multiply(a, b)
                lhs = self.evaluate(ab)
                rhs = (vals[a] @ self.module.element_matrix(b) + vals[b]) % self.module.p
                if (lhs != rhs).any():
                    return False
        return True


def derivation_space(M: GModule):
    """Echelonized basis of Z^1(Q, M) as a list of Derivations."""
    Q = M.q_group
    n, k, p = Q.n, M.dim, M.p
    if k == 0:
        return []
    relators = M.relator_words()
    cols = []
    for w in relators:
        coeff = {i: np.zeros((k, k), dtype=np.int64) for i in range(1, n + 1)}
        for l in w:
            if l > 0:
                for i in coeff:
                    coeff[i] = coeff[i] @ M.mats[l] % p
                coeff[l] = (coeff[l] + np.eye(k, dtype=np.int64)) % p
            else:
                inv = M.mat_inv(-l)
                for i in coeff:
                    coeff[i] = coeff[i] @ inv % p
                coeff[-l] = (coeff[-l] - inv) % p
        cols.append(np.concatenate([coeff[i] for i in range(1, n + 1)], axis=0))
    big = np.concatenate(cols, axis=1) if cols else np.zeros((n * k, 0), dtype=np.int64)
    basis = gfp.nullspace(big, p)
    return [Derivation(M, row) for row in basis]


def principal_space(M: GModule):
    """Echelonized basis of B^1(Q, M): images of m -> (m^g - m per generator)."""
    Q = M.q_group
    n, k, p = Q.n, M.dim, M.p
    if k == 0:
        return []
    eye = np.eye(k, dtype=np.int64)
    rows = np.concatenate([(M.mats[i] - eye) % p for i in range(1, n + 1)], axis=1)
    basis = gfp.row_space(rows, p)
    return [Derivation(M, row) for row in basis]


def principal_derivation(M: GModule, mcoords) -> Derivation:
    mcoords = np.array(mcoords, dtype=np.int64) % M.p
    eye = np.eye(M.dim, dtype=np.int64)
    imgs = [mcoords @ ((M.mats[i] - eye) % M.p) % M.p for i in range(1, M.q_group.n + 1)]
    return Derivation(M, np.array(imgs))


def derivation_from_generators(M: GModule, assignment) -> Derivation:
    """Derivation from images on an arbitrary generating set of Q.

    assignment: list of (q_element, coords).  Walks the graph of the map in
    the semidirect product Q x M; a conflict means no such derivation exists
    (raises), and full coverage certifies well-definedness.
    """
    Q = M.q_group
    p = M.p
    pairs = [(tuple(q), np.array(v, dtype=np.int64) % p) for q, v in assignment]
    seen = {Q.identity: np.zeros(M.dim, dtype=np.int64)}
    frontier = [Q.identity]
    while frontier:
        nxt = []
        for q in frontier:
            vq = seen[q]
            for s, vs in pairs:
                qs = Q.multiply(q, s)
                val = (vq @ M.element_matrix(s) + vs) % p
                old = seen.get(qs)
                if old is None:
                    seen[qs] = val
                    nxt.append(qs)
                elif (old != val).any():
                    raise ValueError("assignment does not extend to a derivation")
        frontier = nxt
    if len(seen) != Q.order:
        raise ValueError("assignment does not generate the acting group")
    imgs = [seen[Q.generator(i)] for i in range(1, Q.n + 1)]
    return Derivation(M, np.array(imgs))


# -- automorphisms --------------------------------------------------------------


class Automorphism:
    """Automorphism of a PcPresentation given by generator images."""

    def __init__(self, group: PcPresentation, images, *, fixed: Subgroup | None = None,
                 module: GModule | None = None, check: bool = True):
        self.group = group
        self.images = tuple(tuple(x) for x in images)
        self.fixed = fixed
        self.module = module
        if check:
            ok, why = self.verify()
            if not ok:
                raise ValueError(f"not an automorphism: {why}")

    def apply(self, x):
        G = self.group
        r = G.identity
        for img, e in zip(self.images, x):
            if e:
                r = G.multiply(r, G.power(img, e))
        return r

    def verify(self):
        G = self.group
        for i in range(1, G.n + 1):
            lhs = G.power(self.images[i - 1], G.p)
            rhs = self.apply(G.power_rel.get(i, G.identity))
            if lhs != rhs:
                return False, f"power relation {i} broken"
        for (j, i), w in list(G.comm_rel.items()) + [
            ((j, i), G.identity)
            for j in range(2, G.n + 1)
            for i in range(1, j)
            if (j, i) not in G.comm_rel
        ]:
            lhs = G.commutator(self.images[j - 1], self.images[i - 1])
            rhs = self.apply(G.comm_rel.get((j, i), G.identity))
            if lhs != rhs:
                return False, f"commutator relation ({j},{i}) broken"
        img = subgroup_from_gens(G, list(self.images))
        if img.order != G.order:
            return False, "images do not generate"
        return True, "ok"

    def is_identity(self) -> bool:
        return all(self.images[i - 1] == self.group.generator(i) for i in range(1, self.group.n + 1))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self then other: x -> other(self(x))."""
        imgs = [other.apply(im) for im in self.images]
        return Automorphism(self.group, imgs, check=False)

    def order(self) -> int:
        cur = self
        k = 1
        while not cur.is_identity():
            cur = cur.compose(self)
            k += 1
            if k > self.group.order ** 2:
                raise RuntimeError("runaway automorphism order")
        return k

    def inverse(self) -> "Automorphism":
        k = self.order()
        cur = Automorphism(self.group, self.group.generators(), check=False)
        for _ in range(k - 1):
            cur = cur.compose(self)
        return cur

    def fixes_pointwise(self, H: Subgroup) -> bool:
        return all(self.apply(x) == x for x in H.igs)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.group is other.group and self.images == other.images

    def __hash__(self):
        return hash((id(self.group), self.images))


def conjugation_by(G: PcPresentation, u) -> Automorphism:
    return Automorphism(G, [G.conjugate(g, u) for g in G.generators()], check=False)


def lift_to_automorphism(delta: Derivation) -> Automorphism:
    """g -> g * delta(gN); fixes N pointwise, images differ by carrier elements."""
    M = delta.module
    if M.carrier is None or M.qmap is None:
        raise ValueError("lifting needs an embedded module (build_module)")
    G = M.ambient
    imgs = []
    for i in range(1, G.n + 1):
        g = G.generator(i)
        a = M.carrier.element(delta.evaluate(M.qmap.project(g)))
        imgs.append(G.multiply(g, a))
    alpha = Automorphism(G, imgs, fixed=M.kernel, module=M, check=True)
    if not alpha.fixes_pointwise(M.kernel):
        raise ValueError("lift does not fix the kernel pointwise")
    for i in range(1, G.n + 1):
        g = G.generator(i)
        diff = G.multiply(G.inverse(g), alpha.apply(g))
        if not M.carrier.contains(diff):
            raise ValueError("lift displacement left the carrier")
    return alpha


class InnerResult:
    def __init__(self, witness, examined: int, space: str):
        self.witness = witness
        self.examined = examined
        self.space = space

    @property
    def is_inner(self) -> bool:
        return self.witness is not None

    def __repr__(self):
        if self.is_inner:
            return f"Inner(witness={self.witness})"
        return f"NotInner(examined={self.examined}, space={self.space!r})"


def is_inner(alpha: Automorphism, N: Subgroup | None = None) -> InnerResult:
    """Search for u with alpha = conjugation-by-u; Z(N), then C_G(N), then G.

    NotInner carries the exhaustive transcript (all of G examined).
    """
    G = alpha.group
    if N is None:
        N = alpha.fixed
    phases = []
    if N is not None:
        cg = centralizer(G, N)
        zn = intersection(cg, N)
        phases = [("Z(N)", zn.element_indices()), ("C_G(N)", cg.element_indices())]
    gens = G.generators()
    targets = [alpha.images[i] for i in range(G.n)]
    examined = 0
    seen_spaces = []
    covered = np.zeros(G.order, dtype=bool)

    def check(uidx: int):
        u = G.element_at(int(uidx))
        return all(G.conjugate(g, u) == t for g, t in zip(gens, targets))

    for name, idxs in phases:
        fresh = [i for i in idxs if not covered[i]]
        for i in fresh:
            examined += 1
            if check(i):
                return InnerResult(G.element_at(int(i)), examined, name)
        covered[np.asarray(idxs, dtype=np.int64)] = True
        seen_spaces.append(name)
    # full group, vectorized for large orders
    if G.order > 20000:
        mask = np.ones(G.order, dtype=bool)
        for g, t in zip(gens, targets):
            mask &= G.right_mult_array(t) == G.left_mult_array(g)
        mask &= ~covered
        hits = np.nonzero(mask)[0]
        examined = G.order
        if len(hits):
            return InnerResult(G.element_at(int(hits[0])), examined, "G")
        return InnerResult(None, examined, "G")
    for i in range(G.order):
        if covered[i]:
            continue
        examined += 1
        if check(i):
            return InnerResult(G.element_at(i), examined, "G")
    return InnerResult(None, G.order, "G")


# -- the cocycle-count identity ---------------------------------------------------


def subgroup_center(N: Subgroup) -> Subgroup:
    G = N.parent
    return intersection(centralizer(G, N), N)


def star_subgroup(ZN: Subgroup, Z: Subgroup) -> Subgroup:
    """{a in Z(N) : a^p in Z(G)} as a subgroup."""
    G = ZN.parent
    idx = [G.index_of(x) for x in ZN.elements() if G.power(x, G.p) in Z]
    return subgroup_from_indices(G, idx)


def inner_derivation_span(M: GModule):
    """rref rows of {f_u : u in C_G(N), all [g_i, u] in the carrier}.

    Rows are flattened generator-image vectors in the coordinates of M.
    """
    G = M.ambient
    qm = M.qmap
    cg = centralizer(G, M.kernel)
    rows = []
    lifts = [qm.section(M.q_group.generator(k)) for k in range(1, M.q_group.n + 1)]
    for u in cg.elements():
        vec = []
        ok = True
        for g in lifts:
            w = G.commutator(g, u)
            if not M.carrier.contains(w):
                ok = False
                break
            vec.append(M.carrier.coords(w))
        if ok:
            rows.append(np.concatenate(vec))
    if not rows:
        return np.zeros((0, M.q_group.n * M.dim), dtype=np.int64)
    return gfp.row_space(np.array(rows), M.p)


def cocycle_count_identity(G: PcPresentation, N: Subgroup) -> dict:
    """Per-layer census: |Z^1(G/N, A n Z_i)| vs |A* n Z_(i+1)| / |Z(G)|.

    A = Omega1(Z(N)), A* = {a in Z(N) : a^p in Z(G)}.  The identity is only
    asserted under two hypotheses, both computed here: C_G(N) = Z(N), and
    every solver derivation into A lifts to an inner automorphism.
    """
    Z = center(G)
    ZN = subgroup_center(N)
    CGN = centralizer(G, N)
    A = omega1(ZN)
    Astar = star_subgroup(ZN, Z)
    hyp_centralizer = CGN == ZN
    hyp_all_inner = None
    rows = []
    base_module = None
    if A.order > 1:
        base_module = build_module(G, N, A)
        basis = derivation_space(base_module)
        hyp_all_inner = True
        for d in basis:
            alpha = lift_to_automorphism(d)
            if not is_inner(alpha, N).is_inner:
                hyp_all_inner = False
                break
    ucs_len = len(G._cache.get("ucs") or []) or None
    from .structure import nilpotency_class

    cls = nilpotency_class(G)
    for i in range(1, cls + 1):
        Ai = intersection(A, zeta(G, i))
        if Ai.order == 1:
            z1_size = 1
        else:
            Mi = build_module(G, N, Ai)
            z1_size = G.p ** len(derivation_space(Mi))
        rhs_top = intersection(Astar, zeta(G, i + 1)).order
        rhs = rhs_top // Z.order
        rows.append(
            {
                "i": i,
                "z1_order": z1_size,
                "quotient_order": rhs,
                "equal": z1_size == rhs,
            }
        )
    applicable = hyp_centralizer and bool(hyp_all_inner)
    return {
        "hypothesis_centralizer": hyp_centralizer,
        "hypothesis_all_inner": hyp_all_inner,
        "applicable": applicable,
        "rows": rows,
        "holds": all(r["equal"] for r in rows) if applicable else None,
    }
