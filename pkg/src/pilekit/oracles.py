"""Brute-force reference computations used to audit the main algorithms.

Nothing here calls the solvers it is meant to check: homomorphisms are
enumerated by closure over a Cayley graph instead of ``enumerate_homs``,
point maps are enumerated outright instead of through witness candidates,
and hom counts evaluate every relator for every assignment.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .groups import FiniteGroup
from .gset import GSet, Partition
from .pile import Pile, PileMorphism
from .presentations import Presentation


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions of ``items`` (restricted growth strings)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _maps_blocks_onto_blocks(s: GSet, blocks: list[frozenset[int]]) -> bool:
    bset = set(blocks)
    for b in blocks:
        for g in s.group.elements:
            if frozenset(s.action[t][g] for t in b) not in bset:
                return False
    return True


def all_g_partitions(s: GSet) -> list[list[frozenset[int]]]:
    out = []
    for part in set_partitions(range(s.size)):
        blocks = [frozenset(b) for b in part]
        if _maps_blocks_onto_blocks(s, blocks):
            out.append(blocks)
    return out


def _setwise(s: GSet, z: frozenset[int]) -> frozenset[int]:
    return frozenset(g for g in s.group.elements if frozenset(s.action[t][g] for t in z) == z)


def _pointwise(s: GSet, t: int) -> frozenset[int]:
    return frozenset(g for g in s.group.elements if s.action[t][g] == t)


def is_aligned(s: GSet, blocks: list[frozenset[int]]) -> bool:
    """Every block contains a point whose stabilizer equals the block's."""
    return all(any(_pointwise(s, t) == _setwise(s, b) for t in b) for b in blocks)


def aligned_refinement_exists(p: Partition, g_partitions=None) -> bool:
    s = p.gset
    bo = p.block_of
    if g_partitions is None:
        g_partitions = all_g_partitions(s)
    for blocks in g_partitions:
        if all(len({bo[t] for t in b}) == 1 for b in blocks) and is_aligned(s, blocks):
            return True
    return False


def stab_properties(s: GSet, g_partitions=None) -> list[str]:
    """Check block-stabilizer monotonicity and that point stabilizers are the
    intersections of the stabilizers of the G-blocks around them."""
    if g_partitions is None:
        g_partitions = all_g_partitions(s)
    blocks = {b for part in g_partitions for b in part}
    problems = []
    for u in sorted(blocks, key=sorted):
        su = _setwise(s, u)
        members = sorted(u)
        for r in range(1, len(members) + 1):
            for z in itertools.combinations(members, r):
                if not _setwise(s, frozenset(z)) <= su:
                    problems.append(f"Stab({list(z)}) not inside Stab({members})")
    for t in range(s.size):
        inter = frozenset(s.group.elements)
        for u in blocks:
            if t in u:
                inter &= _setwise(s, u)
        if inter != _pointwise(s, t):
            problems.append(f"intersection of block stabilizers around {t} is not its stabilizer")
    return problems


# homomorphisms by Cayley-graph closure


def _greedy_generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    for x in g.elements:
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    c = g.mul[a][s]
                    if c not in span:
                        span.add(c)
                        nxt.append(c)
            frontier = nxt
    return gens


def _extend(source: FiniteGroup, target: FiniteGroup, gens: list[int], images: tuple[int, ...]):
    f = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s, v in zip(gens, images):
                c = source.mul[a][s]
                w = target.mul[f[a]][v]
                if c in f:
                    if f[c] != w:
                        return None
                else:
                    f[c] = w
                    nxt.append(c)
        frontier = nxt
    table = tuple(f[x] for x in source.elements)
    for a in source.elements:
        for b in source.elements:
            if table[source.mul[a][b]] != target.mul[table[a]][table[b]]:
                return None
    return table


def homs_by_closure(source: FiniteGroup, target: FiniteGroup) -> list[tuple[int, ...]]:
    gens = _greedy_generators(source)
    out = []
    for images in itertools.product(target.elements, repeat=len(gens)):
        t = _extend(source, target, gens, images)
        if t is not None:
            out.append(t)
    return sorted(set(out))


# embedding problems


def equivariant_point_maps(src: Pile, dst: Pile, group_table: Sequence[int],
                           allowed: Sequence[Sequence[int]] | None = None) -> Iterator[tuple[int, ...]]:
    """Every equivariant point map over a fixed group map, built orbit by orbit.

    ``allowed[t]`` optionally restricts the image of each orbit representative.
    """
    reps = [orb[0] for orb in src.orbits]
    sa, da = src.space.action, dst.space.action

    def spread(t, y):
        m = {}
        for g in src.group.elements:
            u, v = sa[t][g], da[y][group_table[g]]
            if m.setdefault(u, v) != v:
                return None
        return m

    options = []
    for t in reps:
        choices = allowed[t] if allowed is not None else dst.space.points
        opts = [m for y in choices if (m := spread(t, y)) is not None]
        options.append(opts)
    for combo in itertools.product(*options):
        out = [0] * src.size
        for m in combo:
            for u, v in m.items():
                out[u] = v
        yield tuple(out)


def pile_ep_solutions(phi: PileMorphism, alpha: PileMorphism, limit: int | None = None):
    """All pairs (group table, point map) solving the problem, up to ``limit``."""
    G, B = phi.source, alpha.source
    found = []
    for table in homs_by_closure(G.group, B.group):
        if any(alpha.group_map.map[table[g]] != phi.group_map.map[g] for g in G.group.elements):
            continue
        allowed = [[y for y in B.space.points if alpha.space_map[y] == phi.space_map[t]]
                   for t in G.space.points]
        for pm in equivariant_point_maps(G, B, table, allowed):
            found.append((table, pm))
            if limit is not None and len(found) >= limit:
                return found
    return found


def refining_completion_exists(psi_table: Sequence[int], phi: PileMorphism, alpha: PileMorphism,
                               partition: Partition) -> bool | None:
    """Whether some completion of ``psi`` has fibers refining ``partition``;
    None when no completion exists at all."""
    G, B = phi.source, alpha.source
    allowed = [[y for y in B.space.points if alpha.space_map[y] == phi.space_map[t]]
               for t in G.space.points]
    bo = partition.block_of
    any_map = False
    for pm in equivariant_point_maps(G, B, psi_table, allowed):
        any_map = True
        owner: dict[int, int] = {}
        if all(owner.setdefault(y, bo[t]) == bo[t] for t, y in enumerate(pm)):
            return True
    return False if any_map else None


def rigid_naive(m: PileMorphism) -> bool:
    """Epimorphism, stabilizers mapped bijectively, orbits matched one to one."""
    src, tgt = m.source, m.target
    gm = m.group_map.map
    if set(gm) != set(tgt.group.elements) or set(m.space_map) != set(tgt.space.points):
        return False
    for y in src.space.points:
        by = _pointwise(src.space, y)
        ax = _pointwise(tgt.space, m.space_map[y])
        if len({gm[b] for b in by}) != len(by) or {gm[b] for b in by} != set(ax):
            return False
    for y1 in src.space.points:
        for y2 in src.space.points:
            x1, x2 = m.space_map[y1], m.space_map[y2]
            same_target = any(tgt.space.action[x1][a] == x2 for a in tgt.group.elements)
            same_source = any(src.space.action[y1][b] == y2 for b in src.group.elements)
            if same_target != same_source:
                return False
    return True


# presentations


def naive_hom_count(p: Presentation, q: FiniteGroup) -> int:
    """Evaluate every relator under every assignment; tiny inputs only."""
    factor_choices = [homs_by_closure(f, q) for f in p.factors]
    count = 0
    for maps in itertools.product(*factor_choices):
        for frees in itertools.product(q.elements, repeat=p.free_letters):
            ok = True
            for w in p.relators:
                v = 0
                for l in w:
                    if l.kind == "factor":
                        x = maps[l.index][l.value]
                    else:
                        x = frees[l.index] if l.value == 1 else q.inv(frees[l.index])
                    v = q.mul[v][x]
                if v != 0:
                    ok = False
                    break
            count += ok
    return count


def basic_solution_audit(g, phi, alpha: PileMorphism, gamma) -> list[str]:
    """Each factor with its label point, viewed as a one-point pile, must map
    equivariantly into the cover and compose with ``alpha`` to ``phi``."""
    problems = []
    B = alpha.source
    for (label, f), hg, hp, y, x in zip(g.factors, gamma.factor_homs, phi.factor_homs,
                                        gamma.label_points, phi.label_points):
        if tuple(hg.map) not in set(homs_by_closure(f, B.group)):
            problems.append(f"factor {label}: not a homomorphism")
            continue
        if any(B.space.action[y][hg.map[e]] != y for e in f.elements):
            problems.append(f"factor {label}: point {y} not fixed by the image")
        if alpha.space_map[y] != x:
            problems.append(f"factor {label}: alpha({y}) != {x}")
        if any(alpha.group_map.map[hg.map[e]] != hp.map[e] for e in f.elements):
            problems.append(f"factor {label}: alpha o gamma != phi")
    for j, (b, a) in enumerate(zip(gamma.free_images, phi.free_images)):
        if alpha.group_map.map[b] != a:
            problems.append(f"free generator {j}: alpha(gamma) != phi")
    return problems
