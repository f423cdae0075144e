"""Finite piles and their morphisms.

A pile is a finite group together with a finite right action. A morphism is
a group homomorphism plus an equivariant map of points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PileKitError
from .groups import (FiniteGroup, GroupHom, NotNormal, Subgroup, from_elements,
                     normal_closure, normal_subgroups, quotient_group)
from .gset import GSet, Partition, stabilizer_aligned_g_partition


class PileError(PileKitError):
    pass


class NotEquivariant(PileError):
    def __init__(self, point: int, element: int):
        super().__init__(f"space map is not equivariant at point {point}, element {element}")
        self.point, self.element = point, element


class NotSurjectiveOnGroups(PileError):
    pass


class NotSurjectiveOnPoints(PileError):
    pass


class NoStabilizerWitness(PileError):
    def __init__(self, x: int):
        super().__init__(f"no preimage y of point {x} with alpha(B_y) = A_x")
        self.point = x


class StabilizerNotInjective(PileError):
    def __init__(self, y: int):
        super().__init__(f"group map is not injective on the stabilizer of point {y}")
        self.point = y


class StabilizerNotOnto(PileError):
    def __init__(self, y: int):
        super().__init__(f"stabilizer of point {y} does not map onto the stabilizer of its image")
        self.point = y


class OrbitMapNotInjective(PileError):
    def __init__(self, o1: int, o2: int):
        super().__init__(f"orbits {o1} and {o2} map to the same orbit")
        self.orbits = (o1, o2)


class MismatchedTarget(PileError):
    pass


class KernelNotContained(PileError):
    def __init__(self, element: int):
        super().__init__(f"element {element} is in Ker(psi) but not in Ker(phi)")
        self.element = element


class FibersNotFiner(PileError):
    def __init__(self, t1: int, t2: int):
        super().__init__(f"points {t1} and {t2} share a psi-fiber but not a phi-fiber")
        self.points = (t1, t2)


class StabilizersNotDisjoint(PileError):
    def __init__(self, t1: int, t2: int):
        super().__init__(f"stabilizers of distinct points {t1} and {t2} intersect nontrivially")
        self.points = (t1, t2)


@dataclass(frozen=True, eq=True)
class Pile:
    group: FiniteGroup
    space: GSet

    def __post_init__(self):
        if self.space.group != self.group:
            raise PileError("space is acted on by a different group")

    @property
    def size(self) -> int:
        return self.space.size

    def stabilizer(self, t: int) -> Subgroup:
        return self.space.stabilizer(t)

    @property
    def orbits(self):
        return self.space.orbits

    @classmethod
    def of(cls, space: GSet) -> "Pile":
        return cls(space.group, space)


@dataclass(frozen=True)
class PileMorphism:
    source: Pile = field(repr=False)
    target: Pile = field(repr=False)
    group_map: GroupHom
    space_map: tuple[int, ...]

    def __call__(self, t: int) -> int:
        return self.space_map[t]

    def compose(self, first: "PileMorphism") -> "PileMorphism":
        """``self o first``"""
        return PileMorphism(first.source, self.target, self.group_map.compose(first.group_map),
                            tuple(self.space_map[v] for v in first.space_map))

    @classmethod
    def identity(cls, p: Pile) -> "PileMorphism":
        return cls(p, p, GroupHom.identity(p.group), tuple(p.space.points))

    def fibers(self) -> Partition:
        return Partition.from_labels(self.source.space, self.space_map)


def check_morphism(source: Pile, target: Pile, group_map: GroupHom | Sequence[int],
                   space_map: Sequence[int]) -> PileMorphism:
    if not isinstance(group_map, GroupHom):
        group_map = GroupHom(source.group, target.group, group_map)
    elif group_map.source != source.group or group_map.target != target.group:
        raise PileError("group map has the wrong source or target")
    space_map = tuple(int(v) for v in space_map)
    if len(space_map) != source.size:
        raise PileError(f"space map has {len(space_map)} entries, source has {source.size} points")
    for v in space_map:
        if not 0 <= v < target.size:
            raise PileError(f"space map value {v} out of range")
    sa, ta, gm = source.space.action, target.space.action, group_map.map
    for t in source.space.points:
        for b in source.group.elements:
            if space_map[sa[t][b]] != ta[space_map[t]][gm[b]]:
                raise NotEquivariant(t, b)
    return PileMorphism(source, target, group_map, space_map)


@dataclass(frozen=True)
class EpiCertificate:
    morphism: PileMorphism
    witnesses: tuple[int, ...]  # target point -> source point


@dataclass(frozen=True)
class RigidCertificate:
    epi: EpiCertificate
    orbit_bijection: tuple[int, ...]  # source orbit index -> target orbit index


def check_epi(m: PileMorphism) -> EpiCertificate:
    if not m.group_map.is_surjective():
        raise NotSurjectiveOnGroups("group map is not surjective")
    hit = set(m.space_map)
    if len(hit) != m.target.size:
        missing = min(set(m.target.space.points) - hit)
        raise NotSurjectiveOnPoints(f"point {missing} of the target is not hit")
    witnesses = []
    src, tgt = m.source, m.target
    for x in tgt.space.points:
        ax = tgt.stabilizer(x)
        for y in src.space.points:
            if m.space_map[y] == x and m.group_map.image_of(src.stabilizer(y)) == ax:
                witnesses.append(y)
                break
        else:
            raise NoStabilizerWitness(x)
    return EpiCertificate(m, tuple(witnesses))


def check_rigid(e: EpiCertificate) -> RigidCertificate:
    m = e.morphism
    src, tgt = m.source, m.target
    for y in src.space.points:
        by = src.stabilizer(y)
        img = m.group_map.image_of(by)
        if len(img) != len(by):
            raise StabilizerNotInjective(y)
        if img != tgt.stabilizer(m.space_map[y]):
            raise StabilizerNotOnto(y)
    torb = tgt.space.orbit_index
    bij: list[int] = []
    owner: dict[int, int] = {}
    for i, orb in enumerate(src.orbits):
        j = torb[m.space_map[orb[0]]]
        if j in owner:
            raise OrbitMapNotInjective(owner[j], i)
        owner[j] = i
        bij.append(j)
    return RigidCertificate(e, tuple(bij))


def is_rigid_epi(m: PileMorphism) -> bool:
    try:
        check_rigid(check_epi(m))
    except PileError:
        return False
    return True


def standard_extension(g: FiniteGroup, reps: Sequence[tuple[object, Subgroup]]
                       ) -> tuple[Pile, tuple[int, ...]]:
    """Points are ``(label, right coset of G_t)``; the group acts by right
    multiplication. Returns the pile and the base point of every label.

    Cosets of one label are numbered by their smallest element, so the base
    point (the subgroup itself) comes first.
    """
    cosets: list[frozenset[int]] = []
    base: list[int] = []
    for _, h in reps:
        if h.parent != g:
            raise PileError("subgroup of a different group")
        base.append(len(cosets))
        seen: set[int] = set()
        for x in g.elements:
            if x in seen:
                continue
            c = frozenset(g.mul[k][x] for k in h.members)
            seen |= c
            cosets.append(c)
    index: dict[tuple[int, frozenset[int]], int] = {}
    owner = []
    for i, (_, h) in enumerate(reps):
        stop = base[i + 1] if i + 1 < len(reps) else len(cosets)
        for p in range(base[i], stop):
            index[(i, cosets[p])] = p
            owner.append(i)
    action = []
    for p, c in enumerate(cosets):
        i = owner[p]
        action.append([index[(i, frozenset(g.mul[x][s] for x in c))] for s in g.elements])
    space = GSet(g, action, check=False)
    return Pile(g, space), tuple(base)


def standard_extension_map(phi: GroupHom, source: Pile, source_base: Sequence[int],
                           target: Pile, target_base: Sequence[int],
                           label_map: Sequence[int]) -> PileMorphism:
    """The morphism induced on standard extensions by ``phi`` and a label map.

    ``(t, G_t g) -> (t', H_t' phi(g))``; requires ``phi(G_t) <= H_t'``.
    """
    sa, ta = source.space.action, target.space.action
    image = [-1] * source.size
    for i, b in enumerate(source_base):
        tb = target_base[label_map[i]]
        for g in source.group.elements:
            p = sa[b][g]
            if image[p] < 0:
                image[p] = ta[tb][phi.map[g]]
    return check_morphism(source, target, phi, image)


def quotient_pile(p: Pile, n: Subgroup) -> tuple[Pile, PileMorphism]:
    """``(G/N, T/N)`` with the quotient morphism; N-orbits numbered by smallest point."""
    if not n.is_normal():
        raise NotNormal("subgroup is not normal")
    q, qmap = quotient_group(p.group, n)
    act = p.space.action
    orbit_of = [-1] * p.size
    reps = []
    for t in p.space.points:
        if orbit_of[t] >= 0:
            continue
        for k in n.members:
            orbit_of[act[t][k]] = len(reps)
        reps.append(t)
    coset_rep = [0] * q.order
    for g in reversed(p.group.elements):
        coset_rep[qmap.map[g]] = g
    action = [[orbit_of[act[t][coset_rep[c]]] for c in q.elements] for t in reps]
    qp = Pile(q, GSet(q, action, check=False))
    return qp, PileMorphism(p, qp, qmap, tuple(orbit_of))


def tilde_closure(p: Pile, n: Subgroup) -> Subgroup:
    """Normal closure of all ``N ∩ G_t``."""
    if not n.is_normal():
        raise NotNormal("subgroup is not normal")
    gens: set[int] = set()
    for t in p.space.points:
        gens |= n.members & p.stabilizer(t).members
    return normal_closure(p.group, gens)


@dataclass(frozen=True)
class FiberProduct:
    pile: Pile
    to_first: PileMorphism   # onto the source of alpha
    to_second: PileMorphism  # onto the source of phi0
    pairs: tuple[tuple[int, int], ...] = field(repr=False)
    point_pairs: tuple[tuple[int, int], ...] = field(repr=False)


def fiber_product(alpha: PileMorphism, phi0: PileMorphism) -> FiberProduct:
    """``B x_A Â`` with componentwise action; elements and points are pairs
    in lexicographic order, so the identity pair comes first."""
    if alpha.target != phi0.target:
        raise MismatchedTarget("the two morphisms have different targets")
    B, Ah = alpha.source, phi0.source
    am, pm = alpha.group_map.map, phi0.group_map.map
    elements = [(b, a) for b in B.group.elements for a in Ah.group.elements if am[b] == pm[a]]

    def mul(x, y):
        return (B.group.mul[x[0]][y[0]], Ah.group.mul[x[1]][y[1]])

    grp = from_elements(elements, mul)
    points = [(y, x) for y in B.space.points for x in Ah.space.points
              if alpha.space_map[y] == phi0.space_map[x]]
    pindex = {pt: i for i, pt in enumerate(points)}
    ba, aa = B.space.action, Ah.space.action
    action = [[pindex[(ba[y][b], aa[x][a])] for (b, a) in elements] for (y, x) in points]
    pile = Pile(grp, GSet(grp, action, check=False))
    p1 = PileMorphism(pile, B, GroupHom(grp, B.group, [e[0] for e in elements], check=False),
                      tuple(pt[0] for pt in points))
    p2 = PileMorphism(pile, Ah, GroupHom(grp, Ah.group, [e[1] for e in elements], check=False),
                      tuple(pt[1] for pt in points))
    return FiberProduct(pile, p1, p2, tuple(elements), tuple(points))


def connect(phi: PileMorphism, psi: PileMorphism) -> PileMorphism:
    """The morphism ``alpha`` with ``alpha o psi = phi``."""
    if phi.source != psi.source:
        raise PileError("phi and psi have different sources")
    G = phi.source
    for g in G.group.elements:
        if psi.group_map.map[g] == 0 and phi.group_map.map[g] != 0:
            raise KernelNotContained(g)
    if not psi.group_map.is_surjective() or len(set(psi.space_map)) != psi.target.size:
        raise NotSurjectiveOnPoints("psi is not surjective")
    group_img = [-1] * psi.target.group.order
    for g in G.group.elements:
        b = psi.group_map.map[g]
        if group_img[b] < 0:
            group_img[b] = phi.group_map.map[g]
    point_img = [-1] * psi.target.size
    first = [-1] * psi.target.size
    for t in G.space.points:
        y = psi.space_map[t]
        if point_img[y] < 0:
            point_img[y], first[y] = phi.space_map[t], t
        elif point_img[y] != phi.space_map[t]:
            raise FibersNotFiner(first[y], t)
    return check_morphism(psi.target, phi.target, group_img, point_img)


@dataclass(frozen=True)
class Decomposition:
    pile: Pile
    psi: PileMorphism
    alpha: PileMorphism
    kernel: Subgroup


def _largest_valid_normal(p: Pile, allowed: Subgroup, x: Partition) -> Subgroup:
    """Largest normal subgroup inside ``allowed`` whose orbits stay inside blocks of ``x``."""
    G, act, bo = p.group, p.space.action, x.block_of
    gens: set[int] = set()
    for g in sorted(allowed.members):
        if g in gens:
            continue
        c = normal_closure(G, [g])
        if c.members <= allowed.members and all(
                bo[act[t][k]] == bo[t] for t in p.space.points for k in c.members):
            gens |= c.members
    return normal_closure(G, gens)


def decompose(phi: PileMorphism, n0: Subgroup, x: Partition) -> Decomposition:
    """Factor ``phi`` through an epimorphism ``psi`` onto a smaller pile.

    ``Ker(psi)`` lies in ``n0``, the psi-fibers refine both ``x`` and the
    phi-fibers, and the new space is a stabilizer-aligned G-partition of the
    quotient space.
    """
    p = phi.source
    if not n0.is_normal():
        raise NotNormal("n0 is not normal")
    phi_labels = phi.space_map
    xb = x.block_of
    joint = Partition.from_labels(p.space, [(xb[t], phi_labels[t]) for t in p.space.points])
    n = _largest_valid_normal(p, n0.intersection(phi.group_map.kernel), joint)
    qp, qm = quotient_pile(p, n)
    labels = [None] * qp.size
    for t in p.space.points:
        labels[qm.space_map[t]] = joint.block_of[t]
    aligned = stabilizer_aligned_g_partition(Partition.from_labels(qp.space, labels))
    blocks = aligned.partition.blocks
    bo = aligned.partition.block_of
    qa = qp.space.action
    action = [[bo[qa[b[0]][g]] for g in qp.group.elements] for b in blocks]
    bpile = Pile(qp.group, GSet(qp.group, action, check=False))
    psi = check_morphism(p, bpile, qm.group_map, [bo[qm.space_map[t]] for t in p.space.points])
    alpha = connect(phi, psi)
    return Decomposition(bpile, psi, alpha, n)


def check_decomposition(phi: PileMorphism, n0: Subgroup, x: Partition, d: Decomposition) -> list[str]:
    problems = []
    if not d.psi.group_map.kernel.members <= n0.members:
        problems.append("Ker(psi) not inside n0")
    fib = d.psi.fibers()
    if not fib.refines(x):
        problems.append("psi-fibers do not refine x")
    if not fib.refines(phi.fibers()):
        problems.append("psi-fibers do not refine phi-fibers")
    try:
        check_epi(d.psi)
    except PileError as exc:
        problems.append(f"psi not an epimorphism: {exc}")
    comp = d.alpha.compose(d.psi)
    if comp.group_map.map != phi.group_map.map or comp.space_map != phi.space_map:
        problems.append("alpha o psi != phi")
    return problems


def _check_disjoint_stabilizers(p: Pile) -> None:
    stabs = [p.stabilizer(t).members for t in p.space.points]
    for i in range(p.size):
        for j in range(i + 1, p.size):
            if len(stabs[i] & stabs[j]) > 1:
                raise StabilizersNotDisjoint(i, j)


def separate_fibers(phi: PileMorphism) -> Decomposition:
    """Factor ``phi = phi0 o phî`` so that stabilizers of points with distinct
    ``phi0``-images meet inside ``Ker phi0``."""
    p = phi.source
    _check_disjoint_stabilizers(p)
    G = p.group
    ker = phi.group_map.kernel.members
    pm = phi.space_map
    stabs = [p.stabilizer(t).members for t in p.space.points]
    pairs = [(a, b) for a in p.space.points for b in p.space.points if pm[a] != pm[b]]
    chosen = G.trivial
    for n in sorted(normal_subgroups(G), key=lambda s: (-s.order, s.elements)):
        prod = {}
        for t in set(t for pr in pairs for t in pr):
            prod[t] = frozenset(G.mul[h][k] for h in stabs[t] for k in n.members)
        if all(prod[a] & prod[b] <= ker for a, b in pairs):
            chosen = n
            break
    return decompose(phi, chosen, Partition.single_block(p.space))


def check_separation(phi: PileMorphism, d: Decomposition) -> list[str]:
    problems = []
    comp = d.alpha.compose(d.psi)
    if comp.group_map.map != phi.group_map.map or comp.space_map != phi.space_map:
        problems.append("phi0 o phî != phi")
    try:
        check_epi(d.psi)
    except PileError as exc:
        problems.append(f"phî not an epimorphism: {exc}")
    ah = d.pile
    ker = d.alpha.group_map.kernel.members
    am = d.alpha.space_map
    for a in ah.space.points:
        for b in ah.space.points:
            if am[a] != am[b]:
                if not (ah.stabilizer(a).members & ah.stabilizer(b).members) <= ker:
                    problems.append(f"stabilizers of {a} and {b} meet outside Ker phi0")
    return problems
