"""Built-in group families.

Generator layouts are fixed so golden test values stay stable:

extraspecial(p, n):  g_(2i-1) = x_i, g_(2i) = y_i, g_(2n+1) = c with
    [x_i, y_i] = c (stored as [y_i, x_i] = c^(p-1)), all generators of order p.
maximal_class_p4(p): g1 = x, g2 = y, g3 = [y, x], g4 = [y, x, x]; the
    remaining weight-3+ brackets and all p-th powers are trivial.
free_class4_exp_p(p), p >= 5: the 2-generated relatively free group of class 4
    and exponent p on the eight basic commutators
    x, y, [y,x], [y,x,x], [y,x,y], [y,x,x,x], [y,x,x,y], [y,x,y,y].
free_class4_exp_p(3): the exponent-p object cannot exist at p = 3 (a
    2-generator group of exponent 3 has class <= 3), so this returns the
    largest consistent class-4 quotient of the free class-4 group in which
    every pc factor is C3: the pcgs is x, y, [y,x], [y,x,x], [y,x,y], x^3,
    y^3, [y,x,x,x], of order 3^8.
cyclic_center_class4(p), p >= 5: order p^6, class 4, coclass 2, cyclic
    center; the quotient of free_class4_exp_p(p) identifying the two
    independent weight-4 tails and killing the third.
"""

from __future__ import annotations

from .pc import PcPresentation, PresentationError


def _w(n, **kw):
    out = [0] * n
    for idx, e in kw.items():
        out[int(idx) - 1] = e
    return tuple(out)


def _word(n, pairs):
    out = [0] * n
    for idx, e in pairs:
        out[idx - 1] = e
    return tuple(out)


def cyclic(p: int, k: int) -> PcPresentation:
    """C_{p^k} with g_i^p = g_(i+1)."""
    if k < 1:
        raise PresentationError("cyclic: k >= 1 required")
    power = {}
    for i in range(1, k):
        power[i] = _word(k, [(i + 1, 1)])
    return PcPresentation(p, k, power=power)


def elementary_abelian(p: int, k: int) -> PcPresentation:
    if k < 1:
        raise PresentationError("elementary_abelian: k >= 1 required")
    return PcPresentation(p, k)


def extraspecial(p: int, n: int) -> PcPresentation:
    """Extra-special group of order p^(2n+1) and exponent p."""
    if n < 1:
        raise PresentationError("extraspecial: n >= 1 required")
    ngen = 2 * n + 1
    comm = {}
    for i in range(1, n + 1):
        comm[(2 * i, 2 * i - 1)] = _word(ngen, [(ngen, p - 1)])
    return PcPresentation(p, ngen, comm=comm)


def maximal_class_p4(p: int) -> PcPresentation:
    """The maximal-class group of order p^4 with trivial generator powers."""
    comm = {
        (2, 1): _word(4, [(3, 1)]),
        (3, 1): _word(4, [(4, 1)]),
    }
    return PcPresentation(p, 4, comm=comm)


def direct_product(a: PcPresentation, b: PcPresentation) -> PcPresentation:
    if a.p != b.p:
        raise PresentationError("direct_product: primes differ")
    n = a.n + b.n
    power = {}
    comm = {}
    for i, w in a.power_rel.items():
        power[i] = tuple(w) + (0,) * b.n
    for (j, i), w in a.comm_rel.items():
        comm[(j, i)] = tuple(w) + (0,) * b.n
    for i, w in b.power_rel.items():
        power[a.n + i] = (0,) * a.n + tuple(w)
    for (j, i), w in b.comm_rel.items():
        comm[(a.n + j, a.n + i)] = (0,) * a.n + tuple(w)
    return PcPresentation(a.p, n, power=power, comm=comm)


def free_class4_exp_p(p: int) -> PcPresentation:
    """2-generated class-4 group of order p^8 on the basic-commutator pcgs."""
    n = 8
    if p >= 5:
        comm = {
            (2, 1): _word(n, [(3, 1)]),
            (3, 1): _word(n, [(4, 1)]),
            (3, 2): _word(n, [(5, 1)]),
            (4, 1): _word(n, [(6, 1)]),
            (4, 2): _word(n, [(7, 1)]),
            (5, 1): _word(n, [(7, 1)]),  # [y,x,y,x] = [y,x,x,y] by Jacobi
            (5, 2): _word(n, [(8, 1)]),
        }
        return PcPresentation(p, n, comm=comm)
    if p == 3:
        # pcgs: x, y, [y,x], [y,x,x], [y,x,y], x^3, y^3, [y,x,x,x]
        power = {
            1: _word(n, [(6, 1)]),
            2: _word(n, [(7, 1)]),
        }
        comm = {
            (2, 1): _word(n, [(3, 1)]),
            (3, 1): _word(n, [(4, 1)]),
            (3, 2): _word(n, [(5, 1)]),
            (4, 1): _word(n, [(8, 1)]),
            (6, 2): _word(n, [(8, 2)]),  # [x^3, y] = [y,x]^3 [y,x,x]^3 [y,x,x,x]^-1
        }
        return PcPresentation(p, n, power=power, comm=comm)
    raise PresentationError("free_class4_exp_p: p >= 3 required")


def cyclic_center_class4(p: int) -> PcPresentation:
    """Order p^6, class 4, cyclic center; quotient of free_class4_exp_p(p)."""
    if p < 5:
        raise PresentationError("cyclic_center_class4: p >= 5 required")
    # Quotient of the p^8 group by <g6 g7^-1, g8>; computed once by the
    # quotient machinery, inlined here as a fixed presentation: generators
    # x, y, [y,x], [y,x,x], [y,x,y], z where z is the common image of
    # [y,x,x,x] and [y,x,x,y].
    n = 6
    comm = {
        (2, 1): _word(n, [(3, 1)]),
        (3, 1): _word(n, [(4, 1)]),
        (3, 2): _word(n, [(5, 1)]),
        (4, 1): _word(n, [(6, 1)]),
        (4, 2): _word(n, [(6, 1)]),
        (5, 1): _word(n, [(6, 1)]),
    }
    return PcPresentation(p, n, comm=comm)


FAMILIES = {
    "cyclic": (cyclic, ("p", "n")),
    "elementary_abelian": (elementary_abelian, ("p", "n")),
    "extraspecial": (extraspecial, ("p", "n")),
    "maximal_class_p4": (maximal_class_p4, ("p",)),
    "free_class4_exp_p": (free_class4_exp_p, ("p",)),
    "cyclic_center_class4": (cyclic_center_class4, ("p",)),
}


CATALOG = {
    "e3.pres": lambda: extraspecial(3, 1),
    "e5.pres": lambda: extraspecial(5, 1),
    "es32.pres": lambda: extraspecial(3, 2),
    "es52.pres": lambda: extraspecial(5, 2),
    "w3.pres": lambda: maximal_class_p4(3),
    "w5.pres": lambda: maximal_class_p4(5),
    "e5xc5.pres": lambda: direct_product(extraspecial(5, 1), cyclic(5, 1)),
    "fc4_3.pres": lambda: free_class4_exp_p(3),
}


def catalog_dir() -> str:
    """Path of the bundled catalog directory."""
    import os

    return os.path.join(os.path.dirname(__file__), "catalog")


def write_catalog(path: str):
    """Materialize the bundled catalog as .pres files."""
    import os

    from .presentation_io import print_presentation

    os.makedirs(path, exist_ok=True)
    for name, builder in sorted(CATALOG.items()):
        with open(os.path.join(path, name), "w") as fh:
            fh.write(print_presentation(builder()))


def gen_family(name: str, p: int, n: int | None = None) -> PcPresentation:
    """Build a named family member; n is the family-specific size parameter."""
    if name not in FAMILIES:
        raise PresentationError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    fn, params = FAMILIES[name]
    if "n" in params:
        if n is None:
            raise PresentationError(f"family {name!r} needs --n")
        return fn(p, n)
    if n is not None:
        raise PresentationError(f"family {name!r} takes no --n")
    return fn(p)
