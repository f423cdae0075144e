"""Finite right actions of finite groups, partitions and G-partitions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import PileKitError
from .groups import FiniteGroup, IndexOutOfRange, Subgroup


class GSetError(PileKitError):
    pass


class NotAnAction(GSetError):
    pass


class EmptySet(GSetError):
    pass


class InvalidPartition(GSetError):
    pass


class GSet:
    """``action[t][g]`` is the image ``t^g`` of point ``t`` under element ``g``."""

    __slots__ = ("group", "size", "action", "_hash", "__dict__")

    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        self.action = tuple(tuple(int(v) for v in row) for row in action)
        self.size = len(self.action)
        if check:
            self._check()
        self._hash = hash((group, self.action))

    def _check(self):
        G, act, n = self.group, self.action, self.size
        for t, row in enumerate(act):
            if len(row) != G.order:
                raise NotAnAction(f"row {t} has {len(row)} entries, group has order {G.order}")
            for v in row:
                if not 0 <= v < n:
                    raise IndexOutOfRange(f"point {v} out of range in row {t}")
            if row[0] != t:
                raise NotAnAction(f"identity moves point {t} to {row[0]}")
        for t in range(n):
            for g in G.generators:
                u = act[t][g]
                for h in G.elements:
                    if act[u][h] != act[t][G.mul[g][h]]:
                        raise NotAnAction(f"(t^g)^h != t^(gh) at t={t}, g={g}, h={h}")

    def __eq__(self, other):
        return isinstance(other, GSet) and self.group == other.group and self.action == other.action

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GSet(order={self.group.order}, size={self.size})"

    @property
    def points(self) -> range:
        return range(self.size)

    def image(self, t: int, g: int) -> int:
        return self.action[t][g]

    def image_set(self, z: Iterable[int], g: int) -> frozenset[int]:
        return frozenset(self.action[t][g] for t in z)

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits sorted by smallest point, each sorted."""
        seen: set[int] = set()
        out = []
        for t in self.points:
            if t in seen:
                continue
            orb = sorted(set(self.action[t]))
            seen.update(orb)
            out.append(tuple(orb))
        return tuple(out)

    @cached_property
    def orbit_index(self) -> tuple[int, ...]:
        idx = [0] * self.size
        for i, orb in enumerate(self.orbits):
            for t in orb:
                idx[t] = i
        return tuple(idx)

    @cached_property
    def _stabilizers(self) -> tuple[Subgroup, ...]:
        G = self.group
        return tuple(Subgroup(G, frozenset(g for g in G.elements if self.action[t][g] == t))
                     for t in self.points)

    def stabilizer(self, t: int) -> Subgroup:
        return stabilizer(self, t)

    @classmethod
    def trivial_action(cls, group: FiniteGroup, size: int) -> "GSet":
        return cls(group, [[t] * group.order for t in range(size)], check=False)

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GSet":
        return cls(group, group.mul, check=False)


def _check_point(s: GSet, t: int) -> None:
    if not 0 <= t < s.size:
        raise IndexOutOfRange(f"point {t} not in space of size {s.size}")


def stabilizer(s: GSet, t: int) -> Subgroup:
    _check_point(s, t)
    return s._stabilizers[t]


def setwise_stabilizer(s: GSet, z: Iterable[int]) -> Subgroup:
    z = frozenset(z)
    if not z:
        raise EmptySet("setwise stabilizer of the empty set")
    for t in z:
        _check_point(s, t)
    G = s.group
    return Subgroup(G, frozenset(g for g in G.elements if s.image_set(z, g) == z))


@dataclass(frozen=True)
class Partition:
    """Blocks are stored sorted, and ordered by their smallest point."""

    gset: GSet = field(repr=False, compare=False)
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1)
        object.__setattr__(self, "blocks", tuple(blocks))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InvalidPartition("empty block")
            for t in b:
                if not 0 <= t < self.gset.size:
                    raise InvalidPartition(f"point {t} out of range")
                if t in seen:
                    raise InvalidPartition(f"point {t} in two blocks")
                seen.add(t)
        if len(seen) != self.gset.size:
            missing = sorted(set(range(self.gset.size)) - seen)
            raise InvalidPartition(f"points {missing} not covered")

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        idx = [0] * self.gset.size
        for i, b in enumerate(self.blocks):
            for t in b:
                idx[t] = i
        return tuple(idx)

    def __len__(self):
        return len(self.blocks)

    def refines(self, other: "Partition") -> bool:
        """True iff every block of ``self`` lies inside a block of ``other``."""
        ob = other.block_of
        return all(len({ob[t] for t in b}) == 1 for b in self.blocks)

    @classmethod
    def single_block(cls, s: GSet) -> "Partition":
        return cls(s, (tuple(s.points),) if s.size else ())

    @classmethod
    def singletons(cls, s: GSet) -> "Partition":
        return cls(s, tuple((t,) for t in s.points))

    @classmethod
    def from_labels(cls, s: GSet, labels: Sequence) -> "Partition":
        groups: dict = {}
        for t, lab in enumerate(labels):
            groups.setdefault(lab, []).append(t)
        return cls(s, tuple(groups.values()))


def is_g_partition(p: Partition) -> bool:
    """Every element maps every block onto a block.

    This implies the block-or-disjoint condition and is the form under which
    the group acts on the set of blocks.
    """
    s = p.gset
    bo = p.block_of
    sizes = [len(b) for b in p.blocks]
    for b in p.blocks:
        for g in s.group.generators:
            targets = {bo[s.action[t][g]] for t in b}
            if len(targets) != 1 or sizes[targets.pop()] != len(b):
                return False
    return True


def is_block_or_disjoint(p: Partition) -> bool:
    """The weaker literal condition ``B^g = B`` or ``B^g ∩ B = ∅``."""
    s = p.gset
    for b in p.blocks:
        bs = frozenset(b)
        for g in s.group.elements:
            img = s.image_set(b, g)
            if img != bs and img & bs:
                return False
    return True


def refine_to_g_partition(p: Partition) -> Partition:
    """Common refinement of all translates ``p^g``.

    Two points stay together iff their images under every element land in a
    common block of ``p``.
    """
    s = p.gset
    bo = p.block_of
    keys = [tuple(bo[s.action[t][g]] for g in s.group.elements) for t in s.points]
    return Partition.from_labels(s, keys)


@dataclass(frozen=True)
class AlignedPartition:
    partition: Partition
    witnesses: tuple[int, ...]


def stabilizer_aligned_g_partition(p: Partition) -> AlignedPartition:
    """A G-partition finer than ``p`` whose blocks ``T_i`` carry points
    ``t_i`` with ``Stab(T_i) = Stab(t_i)``.

    Works stabilizer class by stabilizer class, starting from a maximal
    point stabilizer ``Γ``. The points with stabilizer exactly ``Γ`` are cut
    by the (already G-invariant) partition, and a cut piece whose setwise
    stabilizer is bigger than ``Γ`` is split along a fundamental domain of
    its stabilizer's free action. G-translates of the pieces cover the
    points whose stabilizer is conjugate to ``Γ``; the rest is handled by
    the same procedure with that class removed.
    """
    s = p.gset
    G = s.group
    q = refine_to_g_partition(p)
    qb = q.block_of
    stabs = [stabilizer(s, t) for t in s.points]
    remaining = set(s.points)
    blocks: list[frozenset[int]] = []
    while remaining:
        family = {}
        for t in sorted(remaining):
            family.setdefault(stabs[t].members, t)
        # maximal stabilizer realized by the smallest point
        gamma_pt = min(t for m, t in family.items()
                       if not any(m < other for other in family))
        gamma = stabs[gamma_pt]
        norm = gamma.normalizer()
        c_gamma = sorted(t for t in remaining if stabs[t] == gamma)
        pieces: list[frozenset[int]] = []
        covered: set[int] = set()
        for t in c_gamma:
            if t in covered:
                continue
            z = frozenset(u for u in c_gamma if qb[u] == qb[t])
            h = Subgroup(G, frozenset(x for x in norm.members if s.image_set(z, x) == z))
            if h != gamma:
                z = _fundamental_domain(s, z, h)
            for x in norm.elements:
                piece = s.image_set(z, x)
                if piece not in pieces:
                    pieces.append(piece)
                    covered |= piece
        for piece in pieces:
            for g in G.elements:
                b = s.image_set(piece, g)
                if b not in blocks:
                    blocks.append(b)
                remaining -= b
    part = Partition(s, tuple(tuple(b) for b in blocks))
    witnesses = tuple(b[0] for b in part.blocks)
    return AlignedPartition(part, witnesses)


def _fundamental_domain(s: GSet, z: frozenset[int], h: Subgroup) -> frozenset[int]:
    """Smallest point of every ``h``-orbit inside ``z``."""
    reps = set()
    for t in z:
        reps.add(min(s.action[t][x] for x in h.members))
    return frozenset(reps)


def check_aligned(p: Partition, result: AlignedPartition) -> list[str]:
    """Independent validation; returns a list of violated conditions."""
    problems = []
    part = result.partition
    if not is_g_partition(part):
        problems.append("not a G-partition")
    if not part.refines(p):
        problems.append("does not refine the input")
    if len(result.witnesses) != len(part.blocks):
        problems.append("witness count mismatch")
    else:
        for b, t in zip(part.blocks, result.witnesses):
            if t not in b:
                problems.append(f"witness {t} outside block {b}")
            elif setwise_stabilizer(part.gset, b) != stabilizer(part.gset, t):
                problems.append(f"Stab({b}) != Stab({t})")
    return problems
