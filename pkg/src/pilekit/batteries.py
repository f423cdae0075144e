"""Seeded random instances and the named verification suites.

Each suite returns a report: one record per instance with status ``pass``,
``fail`` or ``skip`` and, for failures, the instance data needed to rerun
it. Random piles are standard extensions of randomly chosen subgroups with
their points shuffled, which reaches every finite action up to isomorphism.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import oracles
from . import serialize as sz
from .catalog import catalog, describe, order32_probe, small_groups
from .embedding import (
    BasicMorphismData, BasicPile, CompletionConfig, InvalidProblem, NoWitness, PairSolution,
    PileEmbeddingProblem, PileSolution, check_basic_solution, check_pile_solution,
    complete_to_pile_morphism, solve_basic_pile_ep, solve_pair_ep, solve_pile_ep_bruteforce,
    witness_candidates,
)
from .errors import PileKitError
from .groups import (
    FiniteGroup, GroupHom, Subgroup, all_subgroups, enumerate_homs, is_injective_on,
    normal_closure, normal_subgroups, quotient_group, subgroup_classes,
)
from .gset import GSet, Partition, check_aligned, stabilizer_aligned_g_partition
from .pile import (
    Pile, PileError, PileMorphism, check_epi, check_morphism, check_rigid, fiber_product,
    quotient_pile, standard_extension,
)
from .presentations import (
    FactorRho, Presentation, build_hnn_prime, build_hnn_prime_on_points, build_phnn,
    find_hom, free_product, hnn_to_phnn_kernel, hom_profile, kill_factors, mod_l_quotient,
    quotient_by_closure,
)


class UnknownSuite(PileKitError):
    pass


@dataclass
class Scale:
    seed: int = 0
    count: int | None = None
    catalog: str = "p3"
    prime: int = 2
    max_group: int = 8
    max_space: int | None = None


@dataclass
class Record:
    name: str
    status: str
    witness: dict | None = None
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.data:
            out["data"] = self.data
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# random instances


def shuffle_points(p: Pile, perm: list[int]) -> Pile:
    """The same action with point ``t`` renamed ``perm[t]``."""
    action = [None] * p.size
    for t in p.space.points:
        action[perm[t]] = [perm[u] for u in p.space.action[t]]
    return Pile(p.group, GSet(p.group, action, check=False))


def random_pile(rng: random.Random, groups, max_space: int = 6, max_orbits: int = 3,
                group: FiniteGroup | None = None) -> Pile:
    g = group if group is not None else rng.choice(groups)
    subs = all_subgroups(g)
    reps = []
    room = max_space
    for i in range(rng.randint(1, max_orbits)):
        fits = [h for h in subs if g.order // h.order <= room]
        if not fits:
            break
        h = rng.choice(fits)
        reps.append((f"o{i}", h))
        room -= g.order // h.order
    if not reps:
        reps = [("o0", g.whole)]
    pile, _ = standard_extension(g, reps)
    perm = list(range(pile.size))
    rng.shuffle(perm)
    return shuffle_points(pile, perm)


def _orbit_safe_normals(p: Pile) -> list[Subgroup]:
    stabs = [p.stabilizer(t).members for t in p.space.points]
    return [n for n in normal_subgroups(p.group) if all(len(n.members & s) == 1 for s in stabs)]


def random_rigid_epi(rng: random.Random, cover: Pile, max_target: int | None = None) -> PileMorphism:
    """Quotient by a normal subgroup meeting every stabilizer trivially, with
    the quotient points shuffled."""
    ks = _orbit_safe_normals(cover)
    if max_target is not None:
        ks = [k for k in ks if cover.group.order // k.order <= max_target]
    proper = [k for k in ks if k.order > 1]
    # an isomorphism makes every problem trivially solvable; prefer real kernels
    k = rng.choice(proper if proper and rng.random() < 0.8 else ks)
    q, m = quotient_pile(cover, k)
    perm = list(range(q.size))
    rng.shuffle(perm)
    q2 = shuffle_points(q, perm)
    return PileMorphism(cover, q2, m.group_map, tuple(perm[v] for v in m.space_map))


def random_rigid_cover(rng: random.Random, groups, max_space: int = 6,
                       max_target: int | None = None) -> PileMorphism:
    """Pick a kernel first, then orbits whose stabilizers avoid it, so the
    quotient map is a rigid epimorphism with a nontrivial kernel when possible."""
    while True:
        alpha = _try_rigid_cover(rng, rng.choice(groups), max_space, max_target)
        if alpha is not None:
            return alpha


def _try_rigid_cover(rng, g, max_space, max_target):
    ks = [k for k in normal_subgroups(g) if k.order * max_space >= g.order]
    if max_target is not None:
        ks = [k for k in ks if g.order // k.order <= max_target]
    if not ks:
        return None
    proper = [k for k in ks if k.order > 1]
    if proper and rng.random() < 0.8:
        # small kernels give non-split extensions, where lifting can fail
        k = rng.choices(proper, weights=[1 / k.order ** 2 for k in proper])[0]
    else:
        k = rng.choice(ks)
    subs = [h for h in all_subgroups(g) if len(h.members & k.members) == 1]
    reps = []
    room = max_space
    for i in range(rng.randint(1, 3)):
        fits = [h for h in subs if g.order // h.order <= room]
        if not fits:
            break
        h = rng.choice(fits)
        reps.append((f"o{i}", h))
        room -= g.order // h.order
    if not reps:
        return None
    pile, _ = standard_extension(g, reps)
    perm = list(range(pile.size))
    rng.shuffle(perm)
    cover = shuffle_points(pile, perm)
    q, m = quotient_pile(cover, k)
    qperm = list(range(q.size))
    rng.shuffle(qperm)
    return PileMorphism(cover, shuffle_points(q, qperm), m.group_map,
                        tuple(qperm[v] for v in m.space_map))


def random_morphism(rng: random.Random, src: Pile, dst: Pile,
                    group_map: GroupHom | None = None) -> PileMorphism | None:
    """Random group hom (unless given) and a random equivariant point map
    choosing one admissible image per orbit representative."""
    if group_map is None:
        group_map = rng.choice(enumerate_homs(src.group, None, dst.group))
    sa, da = src.space.action, dst.space.action
    image = [-1] * src.size
    for orb in src.orbits:
        t = orb[0]
        need = group_map.image_of(src.stabilizer(t)).members
        cands = [x for x in dst.space.points if need <= dst.stabilizer(x).members]
        if not cands:
            return None
        x = rng.choice(cands)
        for g in src.group.elements:
            image[sa[t][g]] = da[x][group_map.map[g]]
    return check_morphism(src, dst, group_map, image)


def random_pile_ep(rng: random.Random, groups, cover_groups, max_space: int = 6
                   ) -> PileEmbeddingProblem:
    while True:
        alpha = random_rigid_cover(rng, cover_groups, max_space)
        if rng.random() < 0.4:
            # does alpha split? unsolvable exactly when it has no section
            return PileEmbeddingProblem(PileMorphism.identity(alpha.target), alpha)
        g = random_pile(rng, groups, max_space)
        homs = enumerate_homs(g.group, None, alpha.target.group)
        onto = [h for h in homs if h.is_surjective()]
        gm = rng.choice(onto if onto and rng.random() < 0.7 else homs)
        phi = random_morphism(rng, g, alpha.target, gm)
        if phi is not None:
            return PileEmbeddingProblem(phi, alpha)


def random_rho(rng: random.Random, pile: Pile, groups) -> GroupHom:
    """A hom into a catalog group, injective on every point stabilizer."""
    stabs = {pile.stabilizer(t) for t in pile.space.points}
    order = list(groups)
    rng.shuffle(order)
    for L in order:
        homs = [h for h in enumerate_homs(pile.group, None, L)
                if all(is_injective_on(h, s) for s in stabs)]
        if homs:
            return rng.choice(homs)
    return GroupHom.identity(pile.group)


def random_partition(rng: random.Random, s: GSet) -> Partition:
    k = rng.randint(1, max(1, s.size))
    return Partition.from_labels(s, [rng.randrange(k) for _ in s.points])


# systematic sweep


def all_actions(max_group: int = 8, max_space: int = 5):
    """Every action of every group of order at most ``max_group`` on at most
    ``max_space`` points, up to isomorphism: multisets of conjugacy classes of
    subgroups whose indices sum to the size."""
    for g in small_groups(max_group):
        classes = [c[0] for c in subgroup_classes(g) if g.order // c[0].order <= max_space]
        classes.sort(key=lambda h: (-h.order, h.elements))

        def multisets(start: int, room: int):
            yield []
            for i in range(start, len(classes)):
                idx = g.order // classes[i].order
                if idx <= room:
                    for rest in multisets(i, room - idx):
                        yield [classes[i]] + rest

        for combo in multisets(0, max_space):
            if combo:
                pile, _ = standard_extension(g, [(f"o{i}", h) for i, h in enumerate(combo)])
                yield pile, [list(h.elements) for h in combo]


# suites


def _instance_name(i: int) -> str:
    return f"instance-{i:03d}"


def suite_stab(scale: Scale) -> list[Record]:
    records = []
    for i, (pile, subs) in enumerate(all_actions(scale.max_group, scale.max_space or 5)):
        problems = oracles.stab_properties(pile.space)
        name = f"{pile.group.name}:{subs}"
        if problems:
            records.append(Record(name, "fail", {"pile": sz.pile_to_json(pile), "problems": problems[:5]}))
        else:
            records.append(Record(name, "pass"))
    return records


def suite_g_partition(scale: Scale) -> list[Record]:
    records = []
    for pile, subs in all_actions(scale.max_group, scale.max_space or 5):
        s = pile.space
        gparts = oracles.all_g_partitions(s)
        bad = None
        seeds = 0
        for blocks in oracles.set_partitions(range(s.size)):
            seeds += 1
            p = Partition(s, tuple(tuple(b) for b in blocks))
            result = stabilizer_aligned_g_partition(p)
            problems = check_aligned(p, result)
            if not oracles.aligned_refinement_exists(p, gparts):
                problems.append("brute force found no valid answer")
            if problems:
                bad = {"pile": sz.pile_to_json(pile), "partition": sz.partition_to_json(p),
                       "result": sz.partition_to_json(result.partition), "problems": problems}
                break
        name = f"{pile.group.name}:{subs}"
        records.append(Record(name, "fail" if bad else "pass", bad, {"seed_partitions": seeds}))
    return records


def suite_cartesian_rigid(scale: Scale) -> list[Record]:
    rng = random.Random(scale.seed)
    groups = catalog(scale.catalog, scale.prime)
    groups = [g for g in groups if g.order <= scale.max_group]
    space = scale.max_space or 6
    records = []
    for i in range(scale.count or 100):
        while True:
            alpha = random_rigid_cover(rng, groups, space)
            b = alpha.source
            ah = random_pile(rng, groups, space)
            phi0 = random_morphism(rng, ah, alpha.target)
            if phi0 is not None:
                break
        fp = fiber_product(alpha, phi0)
        pulled = fp.to_second
        status, reason = "pass", None
        try:
            check_rigid(check_epi(alpha))
            check_rigid(check_epi(pulled))
        except PileError as exc:
            status, reason = "fail", f"{type(exc).__name__}: {exc}"
        if status == "pass" and not oracles.rigid_naive(pulled):
            status, reason = "fail", "naive rigidity check disagrees"
        witness = None
        if status == "fail":
            witness = {"alpha": sz.morphism_to_json(alpha, True), "phi0": sz.morphism_to_json(phi0, True),
                       "reason": reason}
        records.append(Record(_instance_name(i), status, witness,
                              {"B": b.group.order, "A": alpha.target.group.order,
                               "pullback_points": fp.pile.size}))
    return records


def _completion_instance(rng: random.Random, groups, i: int):
    g = random_pile(rng, groups, 5)
    if i % 2 == 0:
        # many points per stabilizer, so the multiplicity floor can hold
        bg = rng.choice(groups)
        h = rng.choice(normal_subgroups(bg))
        idx = bg.order // h.order
        copies = max(1, min(16 // idx, rng.randint(3, 8)))
        b, _ = standard_extension(bg, [(f"c{j}", h) for j in range(copies)])
    else:
        b = random_pile(rng, groups, 8, max_orbits=4)
    mode = rng.choice(["trivial", "quotient"])
    if mode == "trivial":
        one = FiniteGroup([[0]], name="C1", check=False)
        a = Pile(one, GSet(one, [[0]], check=False))
        alpha = check_morphism(b, a, [0] * b.group.order, [0] * b.size)
    else:
        k = rng.choice(normal_subgroups(b.group))
        _, alpha = quotient_pile(b, k)
    psi = rng.choice(enumerate_homs(g.group, None, b.group))
    gm = alpha.group_map.compose(psi)
    phi = random_morphism(rng, g, alpha.target, gm)
    return g, b, alpha, psi, phi


def suite_completion(scale: Scale) -> list[Record]:
    rng = random.Random(scale.seed)
    groups = [g for g in catalog(scale.catalog, scale.prime) if g.order <= scale.max_group]
    records = []
    for i in range(scale.count or 100):
        while True:
            g, b, alpha, psi, phi = _completion_instance(rng, groups, i)
            if phi is not None:
                break
        part = random_partition(rng, g.space)
        cfg = CompletionConfig.for_partition(part)
        basic = all(witness_candidates(psi, phi, alpha, t) for t in g.space.points)
        data = {"basic": basic, "floor": cfg.multiplicity_floor}
        instance = {"phi": sz.morphism_to_json(phi, True), "alpha": sz.morphism_to_json(alpha, True),
                    "psi": list(psi.map), "partition": sz.partition_to_json(part)}
        try:
            comp = complete_to_pile_morphism(psi, phi, alpha, cfg)
        except NoWitness as exc:
            status = "fail" if basic else "pass"
            data["completed"] = False
            records.append(Record(_instance_name(i), status,
                                  {**instance, "reason": str(exc)} if status == "fail" else None, data))
            continue
        data.update(completed=True, floor_satisfied=comp.floor_satisfied, refines=comp.refines,
                    method=comp.method)
        problems = []
        if not basic:
            problems.append("completed although some point has no witness")
        m = comp.morphism
        if alpha.compose(m).space_map != phi.space_map or \
                alpha.group_map.compose(m.group_map).map != phi.group_map.map:
            problems.append("alpha o psi != phi")
        exists = oracles.refining_completion_exists(psi.map, phi, alpha, part)
        data["refinement_possible"] = exists
        if comp.refines is False and exists:
            problems.append("a refining completion exists but was not found")
        if comp.floor_satisfied and not comp.refines:
            problems.append("multiplicity floor holds but fibers do not refine the partition")
        status = "fail" if problems else "pass"
        records.append(Record(_instance_name(i), status,
                              {**instance, "problems": problems} if problems else None, data))
    return records


def random_basic_problem(rng: random.Random, factor_groups, cover_groups):
    alpha = random_rigid_cover(rng, cover_groups, 6, max_target=8)
    a = alpha.target
    factors, homs, points = [], [], []
    for j in range(rng.randint(0, 3)):
        f = rng.choice(factor_groups)
        x = rng.randrange(a.size)
        sgrp, emb = a.stabilizer(x).as_group()
        h = rng.choice(enumerate_homs(f, None, sgrp))
        factors.append((f"x{j}", f))
        homs.append(GroupHom(f, a.group, [emb[v] for v in h.map]))
        points.append(x)
    rank = rng.randint(0, 2)
    g = BasicPile(tuple(factors), rank)
    data = BasicMorphismData(tuple(homs), tuple(rng.randrange(a.group.order) for _ in range(rank)),
                             tuple(points))
    return g, data, alpha


def suite_basic_ep(scale: Scale) -> list[Record]:
    rng = random.Random(scale.seed)
    small = [g for g in catalog("p3", scale.prime) if g.order > 1]
    covers = [g for g in catalog("p4" if scale.prime == 2 else "p3", scale.prime)]
    records = []
    for i in range(scale.count or 100):
        g, data, alpha = random_basic_problem(rng, small, covers)
        problems = []
        try:
            sol = solve_basic_pile_ep(g, data, alpha)
            problems += check_basic_solution(g, data, alpha, sol)
            problems += oracles.basic_solution_audit(g, data, alpha, sol)
        except PileKitError as exc:
            problems.append(f"{type(exc).__name__}: {exc}")
        witness = {**sz.basic_ep_to_json(g, data, alpha), "problems": problems} if problems else None
        records.append(Record(_instance_name(i), "fail" if problems else "pass", witness,
                              {"factors": len(g.factors), "free_rank": g.free_rank,
                               "B": alpha.source.group.order, "A": alpha.target.group.order}))
    return records


# presentation batteries


def phnn_battery(scale: Scale, default_count: int = 25):
    rng = random.Random(scale.seed)
    groups = [g for g in catalog(scale.catalog, scale.prime) if g.order <= scale.max_group]
    targets = [g for g in catalog("p3", scale.prime) if g.order > 1]
    for i in range(scale.count or default_count):
        pile = random_pile(rng, groups, scale.max_space or 4)
        rho = random_rho(rng, pile, targets)
        yield i, pile, rho, rng


def _profile_record(name, left, right, cat, instance) -> Record:
    pl, pr = hom_profile(left, cat), hom_profile(right, cat)
    diff = pl.first_difference(pr)
    data = {"profile": list(pl.counts())}
    if diff is None:
        return Record(name, "pass", None, data)
    data["other"] = list(pr.counts())
    return Record(name, "fail", {**instance, "first_difference": list(diff)}, data)


def _pile_instance(pile: Pile, rho: GroupHom) -> dict:
    return {"pile": sz.pile_to_json(pile), "rho": list(rho.map), "L": sz.group_to_json(rho.target)}


def _transversal(rng: random.Random, pile: Pile) -> list[int]:
    return [rng.choice(orb) for orb in pile.orbits]


def check_with_section(pile: Pile, rho: GroupHom, points: list[int], cat, name: str) -> Record:
    left = build_hnn_prime_on_points(pile, points, rho)
    return _profile_record(name, left, build_phnn(pile, rho), cat,
                           {**_pile_instance(pile, rho), "transversal": points})


def check_hnn_kernel(pile: Pile, rho: GroupHom, points: list[int], cat, name: str) -> Record:
    hnn = build_hnn_prime_on_points(pile, points, rho)
    words = hnn_to_phnn_kernel(pile, points, rho)
    return _profile_record(name, quotient_by_closure(hnn, words), build_phnn(pile, rho), cat,
                           {**_pile_instance(pile, rho), "points": points})


def check_mod_l(pile: Pile, rho: GroupHom, cat, name: str) -> Record:
    left = mod_l_quotient(build_phnn(pile, rho), 1)
    right = free_product([Presentation.of_group(stabilizer_quotient(pile)),
                          Presentation.free_group(len(pile.orbits))])
    return _profile_record(name, left, right, cat, _pile_instance(pile, rho))


def check_finite_structure(pile: Pile, rho: GroupHom, cat, name: str) -> Record:
    """``pHNN = L ⨿ G/<G_t> ⨿ F(orbits)``; holds for finite basic piles."""
    right = free_product([Presentation.of_group(rho.target),
                          Presentation.of_group(stabilizer_quotient(pile)),
                          Presentation.free_group(len(pile.orbits))])
    return _profile_record(name, build_phnn(pile, rho), right, cat, _pile_instance(pile, rho))


def check_zeta_injective(pile: Pile, rho: GroupHom, prime: int, name: str) -> Record:
    big = catalog("p4", 2) if prime == 2 else catalog("p3", prime)
    phnn = build_phnn(pile, rho)
    for q in big:
        if q.order < pile.group.order:
            continue
        a = find_hom(phnn, q, injective_on=(0,))
        if a is not None:
            return Record(name, "pass", None, {"group": q.name, "G_factor": list(a.factor_maps[0])})
    # still a failure for the catalog; note whether a larger group works
    data: dict = {"catalog_max_order": max(q.order for q in big), "beyond_catalog": None}
    if prime == 2:
        for q in order32_probe():
            a = find_hom(phnn, q, injective_on=(0,))
            if a is not None:
                data["beyond_catalog"] = {"group": q.name, "G_factor": list(a.factor_maps[0])}
                break
    return Record(name, "fail", _pile_instance(pile, rho), data)


def suite_with_section(scale: Scale) -> list[Record]:
    cat = catalog(scale.catalog, scale.prime)
    return [check_with_section(pile, rho, _transversal(rng, pile), cat, _instance_name(i))
            for i, pile, rho, rng in phnn_battery(scale)]


def suite_hnn_kernel(scale: Scale) -> list[Record]:
    cat = catalog(scale.catalog, scale.prime)
    records = []
    for i, pile, rho, rng in phnn_battery(scale):
        for label, pts in (("transversal", _transversal(rng, pile)), ("all", list(pile.space.points))):
            records.append(check_hnn_kernel(pile, rho, pts, cat, f"{_instance_name(i)}-{label}"))
    return records


def stabilizer_quotient(pile: Pile) -> FiniteGroup:
    gens = set().union(*(pile.stabilizer(t).members for t in pile.space.points))
    q, _ = quotient_group(pile.group, normal_closure(pile.group, gens))
    return q


def fixed_point_pile(g: FiniteGroup) -> Pile:
    return Pile(g, GSet.trivial_action(g, 1))


def suite_mod_l(scale: Scale) -> list[Record]:
    cat = catalog(scale.catalog, scale.prime)
    cp = catalog("p3", scale.prime)[1]
    records = [check_mod_l(fixed_point_pile(cp), GroupHom.identity(cp), cat, "fixed-point")]
    for i, pile, rho, _ in phnn_battery(scale):
        records.append(check_mod_l(pile, rho, cat, _instance_name(i)))
    return records


def random_basic_phnn(rng: random.Random, prime: int):
    """An infinite basic pile realized by its presentation, with a map into
    ``L`` that embeds every factor; returns the pile HNN-extension (written on
    the labels, which form a transversal) and the predicted decomposition."""
    targets = [g for g in catalog("p3", prime) if g.order > 1]
    L = rng.choice(targets)
    subs = [s for s in all_subgroups(L) if s.order > 1]
    factors, homs, stable = [], [], []
    for j in range(rng.randint(1, 3)):
        s = s0 = rng.choice(subs)
        c = rng.choice(list(L.elements))
        s = s0.conjugate(c)
        grp, emb = s.as_group()
        factors.append(grp)
        homs.append(GroupHom(grp, L, emb))
        stable.append((f"t{j}", j, grp.whole))
    rank = rng.randint(0, 2)
    gpres = Presentation(tuple(factors), rank, (), tuple(f"f{j}" for j in range(rank)))
    rho = FactorRho(tuple(homs), tuple(rng.randrange(L.order) for _ in range(rank)))
    phnn = build_hnn_prime(gpres, stable, rho, L)
    e = kill_factors(gpres, range(len(factors)))
    predicted = free_product([Presentation.of_group(L), e, Presentation.free_group(len(factors))])
    info = {"factors": [sz.group_to_json(f) for f in factors], "free_rank": rank,
            "L": sz.group_to_json(L), "rho": [list(h.map) for h in homs],
            "free_images": list(rho.free_images)}
    return phnn, predicted, info


def random_finite_basic(rng: random.Random, prime: int):
    """A finite basic pile: one fixed point whose stabilizer is the whole
    group, plus free orbits."""
    targets = [g for g in catalog("p3", prime) if g.order > 1]
    g = rng.choice([x for x in targets if x.order <= 4])
    reps = [("t0", g.whole)] + [(f"t{j}", g.trivial) for j in range(1, rng.randint(1, 2))]
    pile, _ = standard_extension(g, reps)
    rho = random_rho(rng, pile, targets)
    return pile, rho, len(reps)


def suite_section(scale: Scale) -> list[Record]:
    cat = catalog(scale.catalog, scale.prime)
    rng = random.Random(scale.seed)
    records = []
    for i in range(scale.count or 25):
        if i % 2 == 0:
            phnn, predicted, info = random_basic_phnn(rng, scale.prime)
            records.append(_profile_record(_instance_name(i), phnn, predicted, cat, info))
        else:
            pile, rho, _ = random_finite_basic(rng, scale.prime)
            records.append(check_finite_structure(pile, rho, cat, _instance_name(i)))
    return records


def suite_pile_hnn_structure(scale: Scale) -> list[Record]:
    cat = catalog(scale.catalog, scale.prime)
    rng = random.Random(scale.seed)
    cp = catalog("p3", scale.prime)[1]
    records = []
    worked = fixed_point_pile(cp)
    rho = GroupHom.identity(cp)
    right = free_product([Presentation.of_group(cp), Presentation.free_group(1)])
    records.append(_profile_record("worked-Cp", build_phnn(worked, rho), right, cat,
                                   _pile_instance(worked, rho)))
    for i in range(scale.count or 25):
        if i % 3 == 2:
            pile, rho, _ = random_finite_basic(rng, scale.prime)
            records.append(check_finite_structure(pile, rho, cat, _instance_name(i)))
        else:
            phnn, predicted, info = random_basic_phnn(rng, scale.prime)
            records.append(_profile_record(_instance_name(i), phnn, predicted, cat, info))
    return records


def suite_zeta_injective(scale: Scale) -> list[Record]:
    return [check_zeta_injective(pile, rho, scale.prime, _instance_name(i))
            for i, pile, rho, _ in phnn_battery(scale)]


def suite_ep_audit(scale: Scale) -> list[Record]:
    rng = random.Random(scale.seed)
    groups = [g for g in catalog(scale.catalog, scale.prime) if g.order <= scale.max_group]
    records = []
    for i in range(scale.count or 50):
        ep = random_pile_ep(rng, groups, groups, scale.max_space or 5)
        res = solve_pile_ep_bruteforce(ep)
        problems = []
        data: dict = {}
        if isinstance(res, PileSolution):
            data["verdict"] = "solved"
            problems += check_pile_solution(ep, res.gamma)
            if not oracles.pile_ep_solutions(ep.phi, ep.alpha, limit=1):
                problems.append("independent enumeration found no solution")
        else:
            data["verdict"] = "unsolvable"
            data["candidates"] = res.candidates
            if oracles.pile_ep_solutions(ep.phi, ep.alpha, limit=1):
                problems.append("independent enumeration found a solution")
        # group-level shadow: pile solvable implies pair solvable
        src = ep.phi.source
        disjoint = all(len(src.stabilizer(a).members & src.stabilizer(b).members) == 1
                       for a in src.space.points for b in src.space.points if a < b)
        if disjoint and isinstance(res, PileSolution):
            try:
                pair = solve_pair_ep(ep.as_pair_problem())
                data["pair"] = "solved" if isinstance(pair, PairSolution) else "unsolvable"
                if not isinstance(pair, PairSolution):
                    problems.append("pile problem solvable but pair problem not")
            except InvalidProblem as exc:
                problems.append(f"pair projection invalid: {exc}")
        witness = {**sz.pile_ep_to_json(ep), "problems": problems} if problems else None
        records.append(Record(_instance_name(i), "fail" if problems else "pass", witness, data))
    return records


SUITES: dict[str, Callable[[Scale], list[Record]]] = {
    "stab": suite_stab,
    "g-partition": suite_g_partition,
    "cartesian-rigid": suite_cartesian_rigid,
    "completion": suite_completion,
    "basic-ep": suite_basic_ep,
    "with-section": suite_with_section,
    "hnn-kernel": suite_hnn_kernel,
    "mod-l": suite_mod_l,
    "section": suite_section,
    "pile-hnn-structure": suite_pile_hnn_structure,
    "zeta-injective": suite_zeta_injective,
    "ep-audit": suite_ep_audit,
}


PILE_SUITES = ("with-section", "hnn-kernel", "mod-l", "pile-hnn-structure", "zeta-injective")


def run_instance(name: str, pile: Pile, rho: GroupHom, scale: Scale | None = None,
                 points: list[int] | None = None) -> list[Record]:
    """Re-run one pile suite on a single ``(pile, rho)``; ``points`` defaults
    to the first point of every orbit."""
    scale = scale or Scale()
    if name not in PILE_SUITES:
        if name in SUITES:
            raise UnknownSuite(f"suite {name!r} does not take a single pile; use one of {list(PILE_SUITES)}")
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    cat = catalog(scale.catalog, scale.prime)
    pts = list(points) if points is not None else [orb[0] for orb in pile.orbits]
    if name == "with-section":
        return [check_with_section(pile, rho, pts, cat, "instance")]
    if name == "hnn-kernel":
        return [check_hnn_kernel(pile, rho, pts, cat, "instance")]
    if name == "mod-l":
        return [check_mod_l(pile, rho, cat, "instance")]
    if name == "pile-hnn-structure":
        return [check_finite_structure(pile, rho, cat, "instance")]
    return [check_zeta_injective(pile, rho, scale.prime, "instance")]


def _report(name: str, scale: Scale, records: list[Record], start: float, timestamp: bool) -> dict:
    summary = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "skip")}
    report = {
        "suite": name,
        "seed": scale.seed,
        "prime": scale.prime,
        "catalog": {"name": scale.catalog, "groups": describe(scale.catalog, scale.prime)},
        "summary": summary,
        "status": "fail" if summary["fail"] else "pass",
        "records": [r.to_json() for r in records],
    }
    if timestamp:
        report["wall_time"] = round(time.perf_counter() - start, 3)
    return report


def run_instance_report(name: str, pile: Pile, rho: GroupHom, scale: Scale | None = None,
                        points: list[int] | None = None, timestamp: bool = True) -> dict:
    scale = scale or Scale()
    start = time.perf_counter()
    return _report(name, scale, run_instance(name, pile, rho, scale, points), start, timestamp)


def run_suite(name: str, scale: Scale | None = None, timestamp: bool = True) -> dict:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    scale = scale or Scale()
    start = time.perf_counter()
    return _report(name, scale, SUITES[name](scale), start, timestamp)
