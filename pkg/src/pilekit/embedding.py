"""Embedding problems for pairs and piles, and their solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PileKitError
from .groups import FiniteGroup, GroupHom, NotNormal, Subgroup, enumerate_homs
from .gset import Partition, stabilizer_aligned_g_partition
from .pile import (PileError, PileMorphism, RigidCertificate, check_epi, check_morphism,
                   check_rigid, connect, quotient_pile, tilde_closure)


class EmbeddingError(PileKitError):
    pass


class InvalidProblem(EmbeddingError):
    pass


class NoWitness(EmbeddingError):
    def __init__(self, t: int):
        super().__init__(f"no y with alpha(y) = phi({t}) and psi(G_{t}) <= B_y")
        self.point = t


@dataclass(frozen=True)
class Unsolvable:
    """Exhaustion verdict; ``candidates`` counts the group homs examined."""
    candidates: int
    reason: str = "no candidate passed"


def _sub_within(h: GroupHom, s: Subgroup, family: Sequence[Subgroup]) -> bool:
    img = h.image_of(s).members
    return any(img <= d.members for d in family)


def _restrict(h: GroupHom, s: Subgroup) -> GroupHom:
    grp, emb = s.as_group()
    return GroupHom(grp, h.target, [h.map[e] for e in emb], check=False)


def _local_lift_exists(gamma: Subgroup, phi: GroupHom, alpha: GroupHom, family_b) -> bool:
    grp, emb = gamma.as_group()
    want = [phi.map[e] for e in emb]
    for delta in family_b:
        dgrp, demb = delta.as_group()
        for h in enumerate_homs(grp, None, dgrp):
            if all(alpha.map[demb[h.map[i]]] == want[i] for i in grp.elements):
                return True
    return False


@dataclass(frozen=True)
class PairEmbeddingProblem:
    """``(phi: (G, family) -> (A, familyA), alpha: (B, familyB) -> (A, familyA))``."""

    group: FiniteGroup
    family: tuple[Subgroup, ...]
    phi: GroupHom
    alpha: GroupHom
    family_b: tuple[Subgroup, ...]
    family_a: tuple[Subgroup, ...]

    def __post_init__(self):
        for name in ("family", "family_b", "family_a"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.phi.source != self.group or self.phi.target != self.alpha.target:
            raise InvalidProblem("phi and alpha do not share a target")
        if not self.alpha.is_surjective():
            raise InvalidProblem("alpha is not surjective")
        for i, gamma in enumerate(self.family):
            if not _sub_within(self.phi, gamma, self.family_a):
                raise InvalidProblem(f"phi maps family member {i} outside every member of familyA")
            if not _local_lift_exists(gamma, self.phi, self.alpha, self.family_b):
                raise InvalidProblem(f"family member {i} has no local lift into familyB")


@dataclass(frozen=True)
class PairSolution:
    gamma: GroupHom
    candidates: int


def check_pair_solution(ep: PairEmbeddingProblem, gamma: GroupHom) -> list[str]:
    problems = []
    if gamma.source != ep.group or gamma.target != ep.alpha.source:
        return ["wrong source or target"]
    if any(ep.alpha.map[gamma.map[g]] != ep.phi.map[g] for g in ep.group.elements):
        problems.append("alpha o gamma != phi")
    for i, s in enumerate(ep.family):
        if not _sub_within(gamma, s, ep.family_b):
            problems.append(f"family member {i} not mapped into familyB")
    return problems


def solve_pair_ep(ep: PairEmbeddingProblem) -> PairSolution | Unsolvable:
    count = 0
    for gamma in enumerate_homs(ep.group, None, ep.alpha.source):
        count += 1
        if all(ep.alpha.map[v] == ep.phi.map[g] for g, v in enumerate(gamma.map)) and all(
                _sub_within(gamma, s, ep.family_b) for s in ep.family):
            return PairSolution(gamma, count)
    return Unsolvable(count)


@dataclass(frozen=True)
class PileEmbeddingProblem:
    phi: PileMorphism
    alpha: PileMorphism
    certificate: RigidCertificate = field(init=False, repr=False)

    def __post_init__(self):
        if self.phi.target != self.alpha.target:
            raise InvalidProblem("phi and alpha have different targets")
        try:
            cert = check_rigid(check_epi(self.alpha))
        except PileError as exc:
            raise InvalidProblem(f"alpha is not a rigid epimorphism: {exc}") from exc
        object.__setattr__(self, "certificate", cert)

    def as_pair_problem(self) -> PairEmbeddingProblem:
        """The group-level problem with stabilizer families."""
        g, b, a = self.phi.source, self.alpha.source, self.alpha.target
        uniq = lambda subs: tuple(dict.fromkeys(subs))
        return PairEmbeddingProblem(
            g.group, uniq(g.stabilizer(t) for t in g.space.points), self.phi.group_map,
            self.alpha.group_map, uniq(b.stabilizer(y) for y in b.space.points),
            uniq(a.stabilizer(x) for x in a.space.points))


def check_pile_solution(ep: PileEmbeddingProblem, gamma: PileMorphism) -> list[str]:
    """Independent check: equivariance plus ``alpha o gamma = phi`` on both legs."""
    problems = []
    src, tgt = ep.phi.source, ep.alpha.source
    try:
        check_morphism(src, tgt, GroupHom(src.group, tgt.group, gamma.group_map.map),
                       gamma.space_map)
    except PileKitError as exc:
        problems.append(f"not a pile morphism: {exc}")
    am, pm = ep.alpha.group_map.map, ep.phi.group_map.map
    if any(am[gamma.group_map.map[g]] != pm[g] for g in src.group.elements):
        problems.append("alpha o gamma != phi on groups")
    if any(ep.alpha.space_map[gamma.space_map[t]] != ep.phi.space_map[t] for t in src.space.points):
        problems.append("alpha o gamma != phi on points")
    return problems


@dataclass
class CompletionConfig:
    """Optional partition the completed fibers should refine.

    ``multiplicity_floor`` is the number of blocks of the stabilizer-aligned
    G-partition refining ``target_partition``.
    """
    target_partition: Partition | None = None
    multiplicity_floor: int = 0

    @classmethod
    def for_partition(cls, p: Partition) -> "CompletionConfig":
        n = len(stabilizer_aligned_g_partition(p).partition.blocks)
        return cls(p, n)

    def floor_holds(self, target_space) -> bool:
        counts: dict[frozenset, int] = {}
        for y in target_space.points:
            key = target_space.stabilizer(y).members
            counts[key] = counts.get(key, 0) + 1
        return all(c >= self.multiplicity_floor for c in counts.values())


@dataclass(frozen=True)
class Completion:
    morphism: PileMorphism
    refines: bool | None = None        # None when no partition was configured
    floor_satisfied: bool | None = None
    method: str = "orbit"


def witness_candidates(psi: GroupHom, phi: PileMorphism, alpha: PileMorphism, t: int) -> list[int]:
    """All ``y`` with ``alpha(y) = phi(t)`` and ``psi(G_t) <= B_y``, in order."""
    img = psi.image_of(phi.source.stabilizer(t)).members
    B = alpha.source
    return [y for y in B.space.points
            if alpha.space_map[y] == phi.space_map[t] and img <= B.stabilizer(y).members]


def _propagate(psi: GroupHom, phi: PileMorphism, alpha: PileMorphism,
               assignments: Sequence[tuple[Sequence[int], int]]) -> list[int]:
    """Map ``block^g`` to ``y^psi(g)`` for each ``(block, y)`` assignment."""
    sa = phi.source.space.action
    ba = alpha.source.space.action
    out = [-1] * phi.source.size
    for block, y in assignments:
        for g in phi.source.group.elements:
            yg = ba[y][psi.map[g]]
            for t in block:
                out[sa[t][g]] = yg
    return out


def _refines(space_map: Sequence[int], p: Partition) -> bool:
    owner: dict[int, int] = {}
    bo = p.block_of
    for t, y in enumerate(space_map):
        if owner.setdefault(y, bo[t]) != bo[t]:
            return False
    return True


def _partial_refines(space_map: Sequence[int], p: Partition) -> bool:
    owner: dict[int, int] = {}
    bo = p.block_of
    for t, y in enumerate(space_map):
        if y >= 0 and owner.setdefault(y, bo[t]) != bo[t]:
            return False
    return True


def _search(psi, phi, alpha, reps, cands, p: Partition, prefer_fresh: bool) -> list[int] | None:
    """Backtracking over representative assignments keeping fibers inside ``p``."""
    borb = alpha.source.space.orbit_index
    chosen: list[int] = []

    def rec(i: int, used: frozenset[int]) -> list[int] | None:
        if i == len(reps):
            return _propagate(psi, phi, alpha, list(zip(reps, chosen)))
        order = cands[i]
        if prefer_fresh:
            order = [y for y in order if borb[y] not in used] + [y for y in order if borb[y] in used]
        for y in order:
            chosen.append(y)
            partial = _propagate(psi, phi, alpha, list(zip(reps[:i + 1], chosen)))
            if _partial_refines(partial, p):
                out = rec(i + 1, used | {borb[y]})
                if out is not None:
                    return out
            chosen.pop()
        return None

    return rec(0, frozenset())


def complete_to_pile_morphism(psi: GroupHom, phi: PileMorphism, alpha: PileMorphism,
                              cfg: CompletionConfig | None = None) -> Completion:
    """Extend a group hom ``psi: G -> B`` with ``alpha o psi = phi`` to a pile morphism.

    Succeeds iff every point ``t`` has some ``y`` with ``alpha(y) = phi(t)``
    and ``psi(G_t) <= B_y``. Without a partition, each G-orbit representative
    takes its first such ``y`` and the rest follows by equivariance.

    With a partition, the source is cut into a stabilizer-aligned G-partition
    finer than it (and finer than the phi-fibers); representatives of block
    orbits take witnesses from distinct B-orbits where possible. If that does
    not make the fibers refine the partition, a complete search over orbit
    representatives is run; ``refines`` records the outcome.
    """
    G, B = phi.source, alpha.source
    if phi.target != alpha.target:
        raise InvalidProblem("phi and alpha have different targets")
    if psi.source != G.group or psi.target != B.group:
        raise InvalidProblem("psi has the wrong source or target")
    am, pm = alpha.group_map.map, phi.group_map.map
    for g in G.group.elements:
        if am[psi.map[g]] != pm[g]:
            raise InvalidProblem(f"alpha(psi({g})) != phi({g})")
    point_cands = []
    for t in G.space.points:
        c = witness_candidates(psi, phi, alpha, t)
        if not c:
            raise NoWitness(t)
        point_cands.append(c)

    orbit_reps = [orb[0] for orb in G.orbits]

    def plain() -> list[int]:
        return _propagate(psi, phi, alpha, [((t,), point_cands[t][0]) for t in orbit_reps])

    if cfg is None or cfg.target_partition is None:
        return Completion(_as_morphism(psi, phi, alpha, plain()))

    target = cfg.target_partition
    floor_ok = cfg.floor_holds(B.space)
    xb = target.block_of
    joint = Partition.from_labels(G.space, [(xb[t], phi.space_map[t]) for t in G.space.points])
    aligned = stabilizer_aligned_g_partition(joint)
    blocks = aligned.partition.blocks
    seen: set[frozenset[int]] = set()
    reps, cands = [], []
    for block, w in zip(blocks, aligned.witnesses):
        key = frozenset(block)
        if key in seen:
            continue
        for g in G.group.elements:
            seen.add(G.space.image_set(block, g))
        reps.append(block)
        cands.append(point_cands[w])
    found = _search(psi, phi, alpha, reps, cands, target, prefer_fresh=True)
    method = "blocks"
    if found is None:
        method = "orbits"
        found = _search(psi, phi, alpha, [(t,) for t in orbit_reps],
                        [point_cands[t] for t in orbit_reps], target, prefer_fresh=True)
    if found is None:
        return Completion(_as_morphism(psi, phi, alpha, plain()), False, floor_ok, "unrefined")
    return Completion(_as_morphism(psi, phi, alpha, found), True, floor_ok, method)


def _as_morphism(psi, phi, alpha, space_map) -> PileMorphism:
    return check_morphism(phi.source, alpha.source, psi, space_map)


@dataclass(frozen=True)
class PileSolution:
    gamma: PileMorphism
    candidates: int


def solve_pile_ep_bruteforce(ep: PileEmbeddingProblem) -> PileSolution | Unsolvable:
    G, B = ep.phi.source, ep.alpha.source
    am, pm = ep.alpha.group_map.map, ep.phi.group_map.map
    count = 0
    for psi in enumerate_homs(G.group, None, B.group):
        count += 1
        if any(am[v] != pm[g] for g, v in enumerate(psi.map)):
            continue
        try:
            c = complete_to_pile_morphism(psi, ep.phi, ep.alpha)
        except NoWitness:
            continue
        return PileSolution(c.morphism, count)
    return Unsolvable(count)


@dataclass(frozen=True)
class BasicPile:
    """Free product of finite factor groups and ``free_rank`` free generators,
    acting on the standard extension of the factor labels."""
    factors: tuple[tuple[str, FiniteGroup], ...]
    free_rank: int = 0
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((str(l), g) for l, g in self.factors))
        if self.free_rank < 0:
            raise InvalidProblem("free rank must be nonnegative")
        if self.prime is not None:
            for label, g in self.factors:
                if not g.is_p_group(self.prime):
                    raise InvalidProblem(f"factor {label} is not a {self.prime}-group")


@dataclass(frozen=True)
class BasicMorphismData:
    """A morphism out of a basic pile: one hom per factor, one image per free
    generator, and the point each label goes to."""
    factor_homs: tuple[GroupHom, ...]
    free_images: tuple[int, ...]
    label_points: tuple[int, ...]


def check_basic_morphism(g: BasicPile, data: BasicMorphismData, target) -> list[str]:
    """``target`` is a Pile; the standard extension of the labels maps in iff
    each factor lands in the stabilizer of its label's point."""
    problems = []
    if len(data.factor_homs) != len(g.factors) or len(data.label_points) != len(g.factors):
        return ["factor count mismatch"]
    if len(data.free_images) != g.free_rank:
        return ["free rank mismatch"]
    for (label, grp), h, x in zip(g.factors, data.factor_homs, data.label_points):
        if h.source != grp or h.target != target.group:
            problems.append(f"factor {label}: wrong source or target")
            continue
        if not 0 <= x < target.size:
            problems.append(f"factor {label}: point {x} out of range")
        elif not h.image.members <= target.stabilizer(x).members:
            problems.append(f"factor {label}: image not inside the stabilizer of point {x}")
    for v in data.free_images:
        if not 0 <= v < target.group.order:
            problems.append(f"free image {v} out of range")
    return problems


def solve_basic_pile_ep(g: BasicPile, phi: BasicMorphismData, alpha: PileMorphism) -> BasicMorphismData:
    """Lift through a rigid epimorphism: ``gamma_x = (alpha|B_y)^-1 o phi_x``."""
    A, B = alpha.target, alpha.source
    bad = check_basic_morphism(g, phi, A)
    if bad:
        raise InvalidProblem("; ".join(bad))
    try:
        check_rigid(check_epi(alpha))
    except PileError as exc:
        raise InvalidProblem(f"alpha is not a rigid epimorphism: {exc}") from exc
    am = alpha.group_map.map
    homs, points = [], []
    for (label, grp), h, x in zip(g.factors, phi.factor_homs, phi.label_points):
        y = next(y for y in B.space.points if alpha.space_map[y] == x)
        inverse = {am[b]: b for b in B.stabilizer(y).members}
        homs.append(GroupHom(grp, B.group, [inverse[h.map[e]] for e in grp.elements]))
        points.append(y)
    free = []
    for a in phi.free_images:
        free.append(next(b for b in B.group.elements if am[b] == a))
    return BasicMorphismData(tuple(homs), tuple(free), tuple(points))


def check_basic_solution(g: BasicPile, phi: BasicMorphismData, alpha: PileMorphism,
                         gamma: BasicMorphismData) -> list[str]:
    problems = check_basic_morphism(g, gamma, alpha.source)
    am = alpha.group_map.map
    for (label, grp), h, f in zip(g.factors, gamma.factor_homs, phi.factor_homs):
        try:
            GroupHom(grp, alpha.source.group, h.map)
        except PileKitError as exc:
            problems.append(f"factor {label}: {exc}")
        if any(am[h.map[e]] != f.map[e] for e in grp.elements):
            problems.append(f"factor {label}: alpha o gamma != phi")
    for i, (b, a) in enumerate(zip(gamma.free_images, phi.free_images)):
        if am[b] != a:
            problems.append(f"free generator {i}: alpha o gamma != phi")
    for i, (y, x) in enumerate(zip(gamma.label_points, phi.label_points)):
        if alpha.space_map[y] != x:
            problems.append(f"label {i}: alpha(y) != phi(label)")
    return problems


@dataclass(frozen=True)
class QuotientTransfer:
    """The problem moved to ``G/Ñ`` together with the quotient map."""
    tilde: Subgroup
    quotient: PileMorphism           # G -> G/Ñ
    problem: PileEmbeddingProblem    # over G/Ñ


def quotient_ep_transfer(ep: PileEmbeddingProblem, n: Subgroup) -> QuotientTransfer:
    """Move ``ep`` to the quotient by ``Ñ = <N ∩ G_t>``; ``phi`` must factor."""
    if not n.is_normal():
        raise NotNormal("subgroup is not normal")
    G = ep.phi.source
    tilde = tilde_closure(G, n)
    _, pi = quotient_pile(G, tilde)
    try:
        phi_q = connect(ep.phi, pi)
    except PileError as exc:
        raise InvalidProblem(f"phi does not factor through G/Ñ: {exc}") from exc
    return QuotientTransfer(tilde, pi, PileEmbeddingProblem(phi_q, ep.alpha))


def descend_solution(transfer: QuotientTransfer, gamma: PileMorphism) -> PileMorphism:
    """A solution over ``G`` kills ``Ñ`` and so factors through the quotient."""
    for k in transfer.tilde.members:
        if gamma.group_map.map[k] != 0:
            raise InvalidProblem(f"solution does not kill element {k} of Ñ")
    return connect(gamma, transfer.quotient)
