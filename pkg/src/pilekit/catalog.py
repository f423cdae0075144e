"""Small p-group catalogs used as hom-count targets and battery sources.

``p3`` holds every group of order dividing p^3 (nine groups for any prime).
``p4`` adds the groups of order p^4; only p = 2 is tabulated (fourteen
groups of order 16).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import PileKitError
from .groups import FiniteGroup, direct_product, from_elements, generate_elements


class UnknownCatalog(PileKitError):
    pass


class UnknownGroup(PileKitError):
    pass


def cyclic(n: int, name: str | None = None) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=name or f"C{n}", check=False)


def metacyclic(n: int, m: int, r: int, s: int = 0, name: str | None = None) -> FiniteGroup:
    """``<a, b | a^n, b^m = a^s, b a b^-1 = a^r>`` with elements ``a^i b^j``.

    Requires ``r^m = 1`` and ``r s = s`` modulo ``n``.
    """
    if pow(r, m, n) != 1 % n or (r * s - s) % n:
        raise PileKitError(f"inconsistent metacyclic data n={n} m={m} r={r} s={s}")
    rpow = [pow(r, j, n) for j in range(m)]

    def mul(x, y):
        i, j = x
        k, l = y
        i2 = (i + k * rpow[j]) % n
        j2 = j + l
        if j2 >= m:
            j2 -= m
            i2 = (i2 + s) % n
        return (i2, j2)

    elements = [(i, j) for j in range(m) for i in range(n)]
    return from_elements(elements, mul, name=name)


def semidirect(normal: FiniteGroup, acting: FiniteGroup, action, name: str | None = None) -> FiniteGroup:
    """``normal ⋊ acting`` where ``action(h)`` is an automorphism of ``normal``
    given as an element table, with ``h n h^-1 = action(h)[n]``."""
    autos = [tuple(action(h)) for h in acting.elements]

    def mul(x, y):
        n1, h1 = x
        n2, h2 = y
        return (normal.mul[n1][autos[h1][n2]], acting.mul[h1][h2])

    elements = [(n, h) for h in acting.elements for n in normal.elements]
    return from_elements(elements, mul, name=name)


def heisenberg(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p."""

    def mul(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)

    elements = generate_elements((0, 0, 0), [(1, 0, 0), (0, 1, 0)], mul)
    return from_elements(elements, mul, name=f"Heis{p}")


def _named(g: FiniteGroup, name: str) -> FiniteGroup:
    g.name = name
    return g


def _order16() -> list[FiniteGroup]:
    c2, c4 = cyclic(2), cyclic(4)
    c4c2 = direct_product(c4, c2)  # element 2*a + b for a in C4, b in C2

    def elt(a, b):
        return 2 * a + b

    # c acts on C4 x C2 = <x> x <y>
    def act_16_3(h):  # x -> x y, y -> y
        if h == 0:
            return list(range(8))
        return [elt(a, (b + a) % 2) for a in range(4) for b in range(2)]

    def act_16_13(h):  # x -> x, y -> x^2 y
        if h == 0:
            return list(range(8))
        return [elt((a + 2 * b) % 4, b) for a in range(4) for b in range(2)]

    return [
        cyclic(16),
        _named(direct_product(c4, c4), "C4^2"),
        semidirect(c4c2, c2, act_16_3, name="C2^2:C4"),
        metacyclic(4, 4, 3, name="C4:C4"),
        _named(direct_product(cyclic(8), c2), "C8xC2"),
        metacyclic(8, 2, 5, name="M16"),
        metacyclic(8, 2, 7, name="D16"),
        metacyclic(8, 2, 3, name="SD16"),
        metacyclic(8, 2, 7, 4, name="Q16"),
        _named(direct_product(c4, direct_product(c2, c2)), "C4xC2^2"),
        _named(direct_product(c2, metacyclic(4, 2, 3, name="D8")), "C2xD8"),
        _named(direct_product(c2, metacyclic(4, 2, 3, 2)), "C2xQ8"),
        semidirect(c4c2, c2, act_16_13, name="C4oD8"),
        _named(direct_product(c2, direct_product(c2, direct_product(c2, c2))), "C2^4"),
    ]


def _up_to_p3(p: int) -> list[FiniteGroup]:
    cp = cyclic(p)
    groups = [
        cyclic(1, name="C1"),
        cp,
        cyclic(p * p),
        _named(direct_product(cp, cp), f"C{p}^2"),
        cyclic(p ** 3),
        _named(direct_product(cyclic(p * p), cp), f"C{p * p}xC{p}"),
        _named(direct_product(cp, direct_product(cp, cp)), f"C{p}^3"),
    ]
    if p == 2:
        groups += [metacyclic(4, 2, 3, name="D8"), metacyclic(4, 2, 3, 2, name="Q8")]
    else:
        groups += [heisenberg(p), metacyclic(p * p, p, 1 + p, name=f"M{p ** 3}")]
    return groups


@lru_cache(maxsize=None)
def catalog(name: str = "p3", prime: int = 2) -> tuple[FiniteGroup, ...]:
    if not _is_prime(prime):
        raise UnknownCatalog(f"{prime} is not prime")
    if name == "p3":
        return tuple(_up_to_p3(prime))
    if name == "p4":
        if prime != 2:
            raise UnknownCatalog("catalog p4 is only tabulated for p = 2")
        return tuple(_up_to_p3(2) + _order16())
    raise UnknownCatalog(f"unknown catalog {name!r} (expected p3 or p4)")


@lru_cache(maxsize=None)
def order32_probe() -> tuple[FiniteGroup, ...]:
    """Some order 32 two-groups outside every catalog, used only for
    diagnostics: ``C4 wr C2`` and each order 16 group times ``C2``."""
    c2, c4 = cyclic(2), cyclic(4)
    c4c4 = direct_product(c4, c4)  # element 4*a + b

    def swap(h):
        if h == 0:
            return list(range(16))
        return [4 * b + a for a in range(4) for b in range(4)]

    out = [semidirect(c4c4, c2, swap, name="C4wrC2")]
    for g in _order16():
        out.append(_named(direct_product(g, c2), f"{g.name}xC2"))
    return tuple(out)


def by_name(name: str, prime: int = 2) -> FiniteGroup:
    """Look a group up by catalog name, or build ``C<n>`` on demand."""
    for cat in ("p3", "p4"):
        try:
            groups = catalog(cat, prime)
        except UnknownCatalog:
            continue
        for g in groups:
            if g.name == name:
                return g
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise UnknownGroup(f"no catalog group named {name!r}")


def describe(name: str, prime: int) -> list[dict]:
    return [{"name": g.name, "order": g.order} for g in catalog(name, prime)]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@lru_cache(maxsize=None)
def small_groups(max_order: int = 8) -> tuple[FiniteGroup, ...]:
    """Every group of order at most 8 up to isomorphism (14 groups in all)."""
    if max_order > 8:
        raise UnknownCatalog("small groups are only tabulated up to order 8")
    c2 = cyclic(2)
    groups = [cyclic(1, name="C1")] + [cyclic(n) for n in range(2, 9)]
    groups += [
        _named(direct_product(c2, c2), "C2^2"),
        metacyclic(3, 2, 2, name="S3"),
        _named(direct_product(cyclic(4), c2), "C4xC2"),
        _named(direct_product(c2, direct_product(c2, c2)), "C2^3"),
        metacyclic(4, 2, 3, name="D8"),
        metacyclic(4, 2, 3, 2, name="Q8"),
    ]
    return tuple(sorted((g for g in groups if g.order <= max_order), key=lambda g: g.order))
