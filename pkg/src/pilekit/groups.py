"""Finite groups as multiplication tables.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
Everything else in the package (actions, piles, presentations) bottoms out
in :class:`FiniteGroup`, :class:`Subgroup` and :class:`GroupHom`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import PileKitError


class GroupError(PileKitError):
    pass


class NotLatinSquare(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class IndexOutOfRange(GroupError):
    pass


class NotNormal(GroupError):
    pass


class GensDoNotGenerate(GroupError):
    pass


class NotAHomomorphism(GroupError):
    pass


class FiniteGroup:
    """A finite group stored as a full multiplication table.

    Construct through :func:`validate_group` when the table comes from
    outside; the constructor with ``check=False`` is for tables produced by
    trusted internal constructions.
    """

    __slots__ = ("order", "mul", "labels", "name", "_inv", "_hash", "__dict__")

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        table = tuple(tuple(int(v) for v in row) for row in mul)
        if check:
            _validate_table(table)
        self.order = len(table)
        self.mul = table
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self.order:
            raise GroupError("labels must have one entry per element")
        self.name = name
        inv = [0] * self.order
        for a, row in enumerate(table):
            inv[a] = row.index(0)
        self._inv = tuple(inv)
        self._hash = hash(table)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.name:
            return f"FiniteGroup({self.name})"
        return f"FiniteGroup(order={self.order})"

    def __len__(self):
        return self.order

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, g: int) -> int:
        """``g^-1 a g``"""
        return self.mul[self.mul[self._inv[g]][a]][g]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        r = 0
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def product(self, elems: Iterable[int]) -> int:
        r = 0
        for e in elems:
            r = self.mul[r][e]
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    @cached_property
    def table(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool((t == t.T).all())

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily and deterministically."""
        return small_generating_set(self)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(self.elements))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset({0}))

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1


def _validate_table(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupError(f"table is not square: row {i} has length {len(row)}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise IndexOutOfRange(f"entry ({i},{j}) = {v} out of range")
    for x in range(n):
        if table[0][x] != x:
            raise NoIdentity(f"0 is not a left identity: 0*{x} = {table[0][x]}")
        if table[x][0] != x:
            raise NoIdentity(f"0 is not a right identity: {x}*0 = {table[x][0]}")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            j = _first_repeat(row)
            raise NotLatinSquare(f"row {i} repeats value {row[j]} at column {j}")
    for j in range(n):
        col = [table[i][j] for i in range(n)]
        if set(col) != full:
            i = _first_repeat(col)
            raise NotLatinSquare(f"column {j} repeats value {col[i]} at row {i}")
    m = np.asarray(table, dtype=np.int64)
    bad = np.argwhere(m[m] != m[:, m])
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    for a in range(n):
        r = table[a].index(0)
        if table[r][a] != 0:
            raise NoInverse(f"element {a} has right inverse {r} that is not a left inverse")


def _first_repeat(values: Sequence[int]) -> int:
    seen = set()
    for i, v in enumerate(values):
        if v in seen:
            return i
        seen.add(v)
    return 0


def validate_group(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   name: str | None = None) -> FiniteGroup:
    return FiniteGroup(table, labels=labels, name=name, check=True)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(G.conj(x, g) for x in self.members))

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(x, g) in self.members for g in G.generators for x in self.members)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def join(self, other: "Subgroup") -> "Subgroup":
        return subgroup_generated(self.parent, self.members | other.members)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        return small_generating_set(self.parent, self.members)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Relabel the subgroup as a standalone group.

        Returns the group and the embedding ``local index -> parent element``
        (sorted, so local 0 is the identity).
        """
        return _subgroup_as_group(self)

    def normalizer(self) -> "Subgroup":
        G = self.parent
        return Subgroup(G, frozenset(g for g in G.elements
                                     if all(G.conj(x, g) in self.members for x in self.members)))


_AS_GROUP_CACHE: dict[Subgroup, tuple[FiniteGroup, tuple[int, ...]]] = {}


def _subgroup_as_group(s: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    hit = _AS_GROUP_CACHE.get(s)
    if hit is not None:
        return hit
    emb = s.elements
    index = {g: i for i, g in enumerate(emb)}
    mul = s.parent.mul
    table = [[index[mul[a][b]] for b in emb] for a in emb]
    labels = [s.parent.label(g) for g in emb] if s.parent.labels else None
    out = (FiniteGroup(table, labels=labels, check=False), emb)
    _AS_GROUP_CACHE[s] = out
    return out


def _check_indices(g: FiniteGroup, elems: Iterable[int]) -> list[int]:
    out = []
    for e in elems:
        if not isinstance(e, (int, np.integer)) or not 0 <= e < g.order:
            raise IndexOutOfRange(f"element {e!r} not in group of order {g.order}")
        out.append(int(e))
    return out


def _closure(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [x for x in dict.fromkeys(gens) if x != 0]
    seen = {0}
    queue = deque([0])
    mul = g.mul
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul[x][s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, _closure(g, _check_indices(g, gens)))


def normal_closure(g: FiniteGroup, s: Iterable[int]) -> Subgroup:
    s = _check_indices(g, s)
    conjugates = {g.conj(x, h) for x in s for h in g.elements}
    return Subgroup(g, _closure(g, conjugates))


def small_generating_set(g: FiniteGroup, within: Iterable[int] | None = None) -> tuple[int, ...]:
    """Greedy generating set of ``within`` (default: all of ``g``).

    At each step take the element whose addition enlarges the generated
    subgroup the most, smallest index on ties.
    """
    target = frozenset(within) if within is not None else frozenset(g.elements)
    gens: list[int] = []
    current = frozenset({0})
    while current != target:
        best, best_size = None, -1
        for x in sorted(target - current):
            size = len(_closure(g, gens + [x]))
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        current = _closure(g, gens)
    return tuple(gens)


class GroupHom:
    """A homomorphism given by its full element table."""

    __slots__ = ("source", "target", "map", "__dict__")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int],
                 check: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in images)
        if check:
            self._check()

    def _check(self):
        S, T, m = self.source, self.target, self.map
        if len(m) != S.order:
            raise NotAHomomorphism(f"map has {len(m)} entries, source has order {S.order}")
        for v in m:
            if not 0 <= v < T.order:
                raise IndexOutOfRange(f"image {v} not in target of order {T.order}")
        if m[0] != 0:
            raise NotAHomomorphism("identity not mapped to identity")
        src = S.table
        img = np.asarray(m, dtype=np.int64)
        lhs = img[src]
        rhs = T.table[img[:, None], img[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = (int(v) for v in bad[0])
            raise NotAHomomorphism(f"map({a}*{b}) != map({a})*map({b})")

    def __call__(self, g: int) -> int:
        return self.map[g]

    def __eq__(self, other):
        return (isinstance(other, GroupHom) and self.map == other.map
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"GroupHom({list(self.map)})"

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.source, frozenset(g for g, v in enumerate(self.map) if v == 0))

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup(self.target, frozenset(self.map))

    def image_of(self, s: Subgroup | Iterable[int]) -> Subgroup:
        members = s.members if isinstance(s, Subgroup) else s
        return Subgroup(self.target, frozenset(self.map[g] for g in members))

    def preimage(self, s: Subgroup) -> Subgroup:
        return Subgroup(self.source, frozenset(g for g, v in enumerate(self.map) if v in s.members))

    def is_injective(self) -> bool:
        return len(self.kernel) == 1

    def is_surjective(self) -> bool:
        return len(self.image) == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``"""
        return GroupHom(first.source, self.target, [self.map[v] for v in first.map], check=False)

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, range(g.order), check=False)

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> "GroupHom":
        return cls(source, target, [0] * source.order, check=False)


def is_injective_on(h: GroupHom, s: Subgroup) -> bool:
    return all(h.map[g] != 0 for g in s.members if g != 0)


def quotient_group(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup; cosets are numbered by smallest member."""
    if not n.is_normal():
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * g.order
    reps = []
    for x in g.elements:
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for k in n.members:
            coset_of[g.mul[k][x]] = idx
    table = [[coset_of[g.mul[a][b]] for b in reps] for a in reps]
    q = FiniteGroup(table, check=False)
    return q, GroupHom(g, q, coset_of, check=False)


def element_words(g: FiniteGroup, gens: Sequence[int]) -> tuple[list[int], list[tuple[int, int]]]:
    """Breadth-first spanning tree of the Cayley graph on ``gens``.

    Returns the visiting order and, per element, ``(parent, generator index)``
    with ``element = parent * gens[index]``. Ties go to the earlier parent and
    then to the lower generator index.
    """
    parent: list[tuple[int, int] | None] = [None] * g.order
    parent[0] = (-1, -1)
    order = [0]
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for i, s in enumerate(gens):
            y = g.mul[x][s]
            if parent[y] is None:
                parent[y] = (x, i)
                order.append(y)
                queue.append(y)
    if len(order) != g.order:
        raise GensDoNotGenerate(f"generators {list(gens)} span {len(order)} of {g.order} elements")
    return order, parent  # type: ignore[return-value]


_HOM_CACHE: dict[tuple[FiniteGroup, tuple[int, ...], FiniteGroup], list[GroupHom]] = {}

_CHUNK = 1 << 16


def enumerate_homs(source: FiniteGroup, gens: Sequence[int] | None, target: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms ``source -> target``.

    Generator images run over ``target`` in lexicographic order; each
    assignment is extended along fixed words and kept if it respects every
    product ``x * s`` with ``s`` a generator, which forces the full
    homomorphism law.
    """
    gens = tuple(source.generators if gens is None else _check_indices(source, gens))
    key = (source, gens, target)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    order, parent = element_words(source, gens)
    n, k, m = source.order, len(gens), target.order
    T = target.table
    S = source.table
    out: list[GroupHom] = []
    if k == 0:
        out.append(GroupHom.trivial(source, target))
    else:
        total = m ** k
        gcols = np.asarray(gens, dtype=np.int64)
        for start in range(0, total, _CHUNK):
            idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
            cand = np.empty((len(idx), k), dtype=np.int64)
            rest = idx.copy()
            for j in range(k - 1, -1, -1):
                cand[:, j] = rest % m
                rest //= m
            maps = np.zeros((len(idx), n), dtype=np.int64)
            for x in order[1:]:
                p, i = parent[x]
                maps[:, x] = T[maps[:, p], cand[:, i]]
            ok = np.ones(len(idx), dtype=bool)
            for i in range(k):
                lhs = maps[:, S[:, gcols[i]]]
                rhs = T[maps, cand[:, i:i + 1]]
                ok &= (lhs == rhs).all(axis=1)
            for row in maps[ok]:
                out.append(GroupHom(source, target, row.tolist(), check=False))
    _HOM_CACHE[key] = out
    return out


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by (order, members)."""
    found = {frozenset({0})}
    cyclic = {_closure(g, [x]) for x in g.elements}
    found |= cyclic
    frontier = set(found)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = _closure(g, h | c)
                if j not in found:
                    new.add(j)
        found |= new
        frontier = new
    subs = [Subgroup(g, s) for s in found]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def normal_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(g) if s.is_normal()]


def subgroup_classes(g: FiniteGroup) -> list[list[Subgroup]]:
    """Conjugacy classes of subgroups; each class sorted, classes by first member."""
    seen: set[frozenset[int]] = set()
    classes = []
    for s in all_subgroups(g):
        if s.members in seen:
            continue
        cls = {s.conjugate(x).members for x in g.elements}
        seen |= cls
        classes.append(sorted((Subgroup(g, c) for c in cls), key=lambda h: h.elements))
    return classes


def center(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, frozenset(z for z in g.elements
                                 if all(g.mul[z][x] == g.mul[x][z] for x in g.generators)))


def commutator_subgroup(g: FiniteGroup) -> Subgroup:
    comms = {g.mul[g.mul[g.inv(a)][g.inv(b)]][g.mul[a][b]] for a in g.elements for b in g.elements}
    return subgroup_generated(g, comms)


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Elements ``(x, y)`` are numbered ``x * |b| + y``."""
    nb = b.order
    table = [[a.mul[x1][x2] * nb + b.mul[y1][y2]
              for x2 in a.elements for y2 in b.elements]
             for x1 in a.elements for y1 in b.elements]
    return FiniteGroup(table, name=name, check=False)


def from_elements(elements: Sequence, mul, name: str | None = None, check: bool = False) -> FiniteGroup:
    """Build a table from explicit hashable elements; ``elements[0]`` must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise GroupError("duplicate elements")
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, name=name, check=check)


def generate_elements(identity, gens: Sequence, mul) -> list:
    """Closure of ``gens`` under ``mul`` in breadth-first order, identity first."""
    out = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def isomorphism_invariants(g: FiniteGroup) -> tuple:
    """Cheap invariant tuple: order, element-order statistics, center, derived subgroup, subgroup count."""
    stats = sorted(g.element_order(x) for x in g.elements)
    z = sorted(g.element_order(x) for x in center(g).members)
    return (g.order, tuple(stats), tuple(z), len(commutator_subgroup(g)),
            len(all_subgroups(g)))
