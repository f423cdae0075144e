"""Presentations over free products of finite groups and free letters.

A presentation is ``(factor_1 ⨿ ... ⨿ factor_k ⨿ F(n)) / <<relators>>``.
Words are stored as written; nothing is freely reduced. Homomorphisms into
a finite group ``Q`` are counted by fixing the factor homs shared between
relator components, then summing each component over its own factors and
free letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import PileKitError
from .groups import FiniteGroup, GroupHom, Subgroup, enumerate_homs, is_injective_on


class PresentationError(PileKitError):
    pass


class InvalidWord(PresentationError):
    pass


class PhiNotInjective(PresentationError):
    def __init__(self, label):
        super().__init__(f"associated map of stable letter {label!r} is not injective")
        self.label = label


class RhoNotInjectiveOn(PresentationError):
    def __init__(self, where):
        super().__init__(f"rho is not injective on the stabilizer of {where!r}")
        self.where = where


class NotTransversal(PresentationError):
    pass


class BadFactorIndex(PresentationError):
    pass


class SquareDoesNotCommute(PresentationError):
    def __init__(self, g: int):
        super().__init__(f"lambda(rho({g})) != rho'(psi({g}))")
        self.element = g


class RelatorNotPreserved(PresentationError):
    def __init__(self, index: int):
        super().__init__(f"image of relator {index} is not a relator instance of the target")
        self.index = index


class Letter(NamedTuple):
    """``kind`` is ``"factor"`` (index = factor, value = element) or
    ``"free"`` (index = letter, value = exponent ±1)."""
    kind: str
    index: int
    value: int


Word = tuple[Letter, ...]


def fac(i: int, e: int) -> Letter:
    return Letter("factor", i, e)


def free(j: int, exp: int = 1) -> Letter:
    return Letter("free", j, exp)


@dataclass(frozen=True)
class Presentation:
    factors: tuple[FiniteGroup, ...] = ()
    free_letters: int = 0
    relators: tuple[Word, ...] = ()
    free_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "relators", tuple(tuple(Letter(*l) for l in w) for w in self.relators))
        if self.free_labels is None:
            object.__setattr__(self, "free_labels", tuple(f"x{j}" for j in range(self.free_letters)))
        else:
            object.__setattr__(self, "free_labels", tuple(str(s) for s in self.free_labels))
        if len(self.free_labels) != self.free_letters:
            raise PresentationError("one label per free letter is required")
        for w in self.relators:
            self.check_word(w)

    def check_word(self, w: Iterable[Letter]) -> None:
        for l in w:
            if l.kind == "factor":
                if not 0 <= l.index < len(self.factors):
                    raise InvalidWord(f"factor index {l.index} out of range")
                if not 0 <= l.value < self.factors[l.index].order:
                    raise InvalidWord(f"element {l.value} not in factor {l.index}")
            elif l.kind == "free":
                if not 0 <= l.index < self.free_letters:
                    raise InvalidWord(f"free letter {l.index} out of range")
                if l.value not in (1, -1):
                    raise InvalidWord(f"exponent {l.value} is not ±1")
            else:
                raise InvalidWord(f"unknown letter kind {l.kind!r}")

    def __repr__(self):
        names = ",".join(g.name or str(g.order) for g in self.factors)
        return f"Presentation(factors=[{names}], free={self.free_letters}, relators={len(self.relators)})"

    @classmethod
    def of_group(cls, g: FiniteGroup) -> "Presentation":
        return cls((g,), 0, ())

    @classmethod
    def free_group(cls, n: int) -> "Presentation":
        return cls((), n, ())


def _shift(w: Word, df: int, dx: int) -> Word:
    return tuple(Letter(l.kind, l.index + (df if l.kind == "factor" else dx), l.value) for l in w)


def free_product(parts: Sequence[Presentation]) -> Presentation:
    factors, relators, labels = [], [], []
    nfree = 0
    for p in parts:
        relators += [_shift(w, len(factors), nfree) for w in p.relators]
        factors += p.factors
        labels += p.free_labels
        nfree += p.free_letters
    return Presentation(tuple(factors), nfree, tuple(relators), tuple(labels))


def _inverse_word(g: FiniteGroup, factor: int, e: int) -> Letter:
    return fac(factor, g.inv(e))


def build_hnn(base: FiniteGroup, stable: Sequence[tuple[str, Subgroup, GroupHom]]) -> Presentation:
    """Base ``G`` with one stable letter ``t`` per entry and relators
    ``t^-1 g t phi_t(g)^-1`` for generators ``g`` of ``G_t``.

    ``phi_t`` may be given on all of ``G`` or on ``G_t`` as a standalone group.
    """
    relators = []
    for j, (label, sub, phi) in enumerate(stable):
        if phi.source == base:
            images = {g: phi.map[g] for g in sub.members}
        else:
            grp, emb = sub.as_group()
            if phi.source != grp:
                raise PresentationError(f"phi for {label!r} has the wrong source")
            images = {emb[i]: phi.map[i] for i in grp.elements}
        if phi.target != base:
            raise PresentationError(f"phi for {label!r} does not land in the base group")
        if len(set(images.values())) != len(images):
            raise PhiNotInjective(label)
        for g in sub.generators:
            relators.append((free(j, -1), fac(0, g), free(j, 1), fac(0, base.inv(images[g]))))
    return Presentation((base,), len(stable), tuple(relators), tuple(str(s[0]) for s in stable))


@dataclass(frozen=True)
class FactorRho:
    """A hom from a presented group into ``L``: one hom per factor plus the
    images of the free letters."""
    factor_homs: tuple[GroupHom, ...]
    free_images: tuple[int, ...] = ()

    @classmethod
    def of(cls, rho: GroupHom) -> "FactorRho":
        return cls((rho,), ())


def build_hnn_prime(g_pres: Presentation | FiniteGroup,
                    stable: Sequence[tuple],
                    rho: FactorRho | GroupHom, L: FiniteGroup) -> Presentation:
    """``G ⨿ L ⨿ F(T0)`` modulo ``t^-1 g t rho(g)^-1`` for generators of each ``G_t``.

    ``stable`` holds ``(label, Subgroup)`` when ``g_pres`` is a finite group,
    and ``(label, factor_index, Subgroup of that factor)`` otherwise.
    """
    if isinstance(g_pres, FiniteGroup):
        g_pres = Presentation.of_group(g_pres)
        stable = [(s[0], 0, s[1]) for s in stable]
    if isinstance(rho, GroupHom):
        rho = FactorRho.of(rho)
    if len(rho.factor_homs) != len(g_pres.factors) or len(rho.free_images) != g_pres.free_letters:
        raise PresentationError("rho does not match the presentation of G")
    for h in rho.factor_homs:
        if h.target != L:
            raise PresentationError("rho does not land in L")
    li = len(g_pres.factors)
    base = free_product([g_pres, Presentation.of_group(L)])
    n0 = g_pres.free_letters
    relators = list(base.relators)
    labels = list(base.free_labels)
    for j, (label, fi, sub) in enumerate(stable):
        if not 0 <= fi < li:
            raise BadFactorIndex(f"factor {fi} out of range")
        h = rho.factor_homs[fi]
        if sub.parent != g_pres.factors[fi]:
            raise PresentationError(f"subgroup for {label!r} is not in factor {fi}")
        if not is_injective_on(h, sub):
            raise RhoNotInjectiveOn(label)
        t = n0 + j
        for g in sub.generators:
            relators.append((free(t, -1), fac(fi, g), free(t, 1), fac(li, L.inv(h.map[g]))))
        labels.append(str(label))
    return Presentation(base.factors, n0 + len(stable), tuple(relators), tuple(labels))


def _check_rho(p, rho: GroupHom) -> None:
    if rho.source != p.group:
        raise PresentationError("rho is not defined on the pile's group")
    for t in p.space.points:
        if not is_injective_on(rho, p.stabilizer(t)):
            raise RhoNotInjectiveOn(t)


def phnn_relator(p, rho: GroupHom, t: int, g: int) -> Word:
    """``(t•g)^-1 g^-1 t rho(g)`` in ``G ⨿ L ⨿ F(T)``."""
    return (free(p.space.action[t][g], -1), fac(0, p.group.inv(g)), free(t, 1), fac(1, rho.map[g]))


def build_phnn(p, rho: GroupHom) -> Presentation:
    """Pile HNN-extension: factors ``G, L``, one free letter per point, and
    one relator per (point, generator of G)."""
    _check_rho(p, rho)
    relators = [phnn_relator(p, rho, t, g) for t in p.space.points for g in p.group.generators]
    return Presentation((p.group, rho.target), p.size, tuple(relators),
                        tuple(f"t{t}" for t in p.space.points))


def build_hnn_prime_on_points(p, points: Sequence[int], rho: GroupHom) -> Presentation:
    """HNN'-extension of a finite pile with stable letters ``points``."""
    _check_rho(p, rho)
    return build_hnn_prime(p.group, [(f"t{t}", p.stabilizer(t)) for t in points], rho, rho.target)


def hnn_to_phnn_kernel(p, points: Sequence[int], rho: GroupHom) -> list[Word]:
    """Normal generators of the kernel of the comparison map from the
    HNN'-extension on ``points`` onto the pile HNN-extension.

    Words ``(t•g)^-1 g^-1 t rho(g)`` for ``t`` and ``t•g`` both in ``points``,
    written in the letters of :func:`build_hnn_prime_on_points`.
    """
    points = list(points)
    orbit_hit = {p.space.orbit_index[t] for t in points}
    if len(orbit_hit) != len(p.orbits) or len(set(points)) != len(points):
        raise NotTransversal("points must be distinct and meet every orbit")
    pos = {t: j for j, t in enumerate(points)}
    words = []
    for t in points:
        for g in p.group.elements:
            u = p.space.action[t][g]
            if u in pos:
                words.append((free(pos[u], -1), fac(0, p.group.inv(g)), free(pos[t], 1),
                              fac(1, rho.map[g])))
    return words


def quotient_by_closure(p: Presentation, words: Sequence[Sequence]) -> Presentation:
    words = [tuple(Letter(*l) for l in w) for w in words]
    for w in words:
        p.check_word(w)
    return Presentation(p.factors, p.free_letters, p.relators + tuple(words), p.free_labels)


def mod_l_quotient(phnn: Presentation, l_factor: int) -> Presentation:
    if not 0 <= l_factor < len(phnn.factors):
        raise BadFactorIndex(f"factor {l_factor} out of range")
    L = phnn.factors[l_factor]
    return quotient_by_closure(phnn, [(fac(l_factor, e),) for e in L.elements if e])


def kill_factors(p: Presentation, indices: Iterable[int]) -> Presentation:
    words = []
    for i in indices:
        if not 0 <= i < len(p.factors):
            raise BadFactorIndex(f"factor {i} out of range")
        words += [(fac(i, e),) for e in p.factors[i].elements if e]
    return quotient_by_closure(p, words)


@dataclass(frozen=True)
class PresentationHom:
    """Images of generators: a word per factor element and per free letter."""
    source: Presentation
    target: Presentation
    factor_images: tuple[tuple[Word, ...], ...]
    free_images: tuple[Word, ...]

    def image(self, w: Word) -> Word:
        out: list[Letter] = []
        for l in w:
            if l.kind == "factor":
                out += self.factor_images[l.index][l.value]
            else:
                img = self.free_images[l.index]
                if l.value == 1:
                    out += img
                else:
                    out += [_invert_letter(self.target, x) for x in reversed(img)]
        return tuple(out)

    def pullback(self, a: "HomAssignment", q: FiniteGroup) -> "HomAssignment":
        """Precompose a hom ``target -> q`` with this map."""
        maps = []
        for i, f in enumerate(self.source.factors):
            maps.append(tuple(evaluate(self.target, a, q, self.factor_images[i][e]) for e in f.elements))
        frees = tuple(evaluate(self.target, a, q, w) for w in self.free_images)
        return HomAssignment(tuple(maps), frees)


def _invert_letter(p: Presentation, l: Letter) -> Letter:
    if l.kind == "factor":
        return fac(l.index, p.factors[l.index].inv(l.value))
    return free(l.index, -l.value)


def induced_hom(source_pile, rho: GroupHom, target_pile, rho2: GroupHom, psi,
                lam: GroupHom) -> PresentationHom:
    """The map of pile HNN-extensions induced by a pile morphism ``psi`` and
    ``lam: L -> L'`` with ``lam o rho = rho' o psi``."""
    G = source_pile.group
    for g in G.elements:
        if lam.map[rho.map[g]] != rho2.map[psi.group_map.map[g]]:
            raise SquareDoesNotCommute(g)
    src = build_phnn(source_pile, rho)
    tgt = build_phnn(target_pile, rho2)
    fimg = (tuple((fac(0, psi.group_map.map[g]),) for g in G.elements),
            tuple((fac(1, lam.map[l]),) for l in rho.target.elements))
    ximg = tuple((free(psi.space_map[t], 1),) for t in source_pile.space.points)
    h = PresentationHom(src, tgt, fimg, ximg)
    instances = {phnn_relator(target_pile, rho2, s, k)
                 for s in target_pile.space.points for k in target_pile.group.elements}
    for i, w in enumerate(src.relators):
        if h.image(w) not in instances:
            raise RelatorNotPreserved(i)
    return h


# -- counting ---------------------------------------------------------------


@dataclass(frozen=True)
class HomAssignment:
    """A hom ``P -> Q``: element tables for the factors, values of the free letters."""
    factor_maps: tuple[tuple[int, ...], ...]
    free_values: tuple[int, ...]


def evaluate(p: Presentation, a: HomAssignment, q: FiniteGroup, w: Iterable[Letter]) -> int:
    x = 0
    for l in w:
        if l.kind == "factor":
            v = a.factor_maps[l.index][l.value]
        else:
            v = a.free_values[l.index]
            if l.value == -1:
                v = q.inv(v)
        x = q.mul[x][v]
    return x


def is_hom(p: Presentation, a: HomAssignment, q: FiniteGroup) -> bool:
    """Independent check that an assignment respects every relator."""
    for i, f in enumerate(p.factors):
        try:
            GroupHom(f, q, a.factor_maps[i])
        except PileKitError:
            return False
    return all(evaluate(p, a, q, w) == 0 for w in p.relators)


_LANES = 1 << 18


def _plan(eqs: list[tuple[list, list]]) -> list[tuple]:
    """Order in which a component's letters get values.

    Steps are ``("branch", j)``, ``("solve", e, k)`` (equation ``e`` fixes the
    letter at item ``k``) and ``("check", e)``. The plan depends only on which
    letters occur where, so it is shared by every factor assignment.
    """
    letters = {j for items, _ in eqs for _, j, _ in items}
    known: set[int] = set()
    pending = set(range(len(eqs)))
    steps: list[tuple] = []
    while True:
        progress = True
        while progress:
            progress = False
            for e in sorted(pending):
                items = eqs[e][0]
                unk = [j for _, j, _ in items if j not in known]
                if not unk:
                    steps.append(("check", e))
                    pending.discard(e)
                    progress = True
                elif len(set(unk)) == 1 and len(unk) == 1:
                    k = next(i for i, it in enumerate(items) if it[1] == unk[0])
                    steps.append(("solve", e, k))
                    known.add(unk[0])
                    pending.discard(e)
                    progress = True
        if known == letters:
            return steps
        weight = {j: sum(1 for e in pending for _, jj, _ in eqs[e][0] if jj == j)
                  for j in letters - known}
        j = max(sorted(weight), key=lambda x: weight[x])
        steps.append(("branch", j))
        known.add(j)


class _Engine:
    """Vectorized hom search.

    Relators are grouped into units: each connected component of free
    letters, and each relator without free letters. A factor touched by a
    single unit is summed inside that unit; factors shared by several units
    are enumerated outside as a mixed radix index, last factor fastest. Each
    unit runs its plan on numpy lanes, one lane per (outer assignment,
    private assignment, branch values), and the count for an outer
    assignment is the product of the unit counts.
    """

    def __init__(self, p: Presentation, q: FiniteGroup, factor_domains=None):
        self.p, self.q = p, q
        self.T = q.table
        self.inv = np.asarray(q._inv, dtype=np.int64)
        self.domains = []
        for i, f in enumerate(p.factors):
            if factor_domains and i in factor_domains:
                rows = list(factor_domains[i])
            else:
                rows = [h.map for h in enumerate_homs(f, None, q)]
            self.domains.append(np.asarray(rows, dtype=np.int64).reshape(len(rows), f.order))
        pure, mixed = [], []
        for w in p.relators:
            (mixed if any(l.kind == "free" for l in w) else pure).append(w)
        letters_used = sorted({l.index for w in mixed for l in w if l.kind == "free"})
        self.idle_letters = p.free_letters - len(letters_used)
        parent = {j: j for j in letters_used}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for w in mixed:
            js = [l.index for l in w if l.kind == "free"]
            for j in js[1:]:
                parent[find(j)] = find(js[0])
        groups: dict[int, list] = {}
        for w in mixed:
            groups.setdefault(find(next(l.index for l in w if l.kind == "free")), []).append(w)
        word_sets = list(groups.values()) + [[w] for w in pure]
        touched: dict[int, int] = {}
        raw_units = []
        for ws in word_sets:
            fs = sorted({l.index for w in ws for l in w if l.kind == "factor"})
            for i in fs:
                touched[i] = touched.get(i, 0) + 1
            eqs = [self._compile(w) for w in ws]
            steps = _plan(eqs)
            branches = sum(1 for st in steps if st[0] == "branch")
            raw_units.append((eqs, steps, branches, fs))
        self.shared = [i for i in range(len(p.factors)) if touched.get(i, 0) >= 2]
        self.idle_factors = [i for i in range(len(p.factors)) if i not in touched]
        self.units = [(eqs, steps, b, fs, [i for i in fs if touched[i] == 1])
                      for eqs, steps, b, fs in raw_units]

    @staticmethod
    def _compile(w: Word):
        """Split into items ``(factor segment, letter, exp)`` and a tail segment."""
        items, seg = [], []
        for l in w:
            if l.kind == "factor":
                seg.append((l.index, l.value))
            else:
                items.append((seg, l.index, l.value))
                seg = []
        return items, seg

    def _segment(self, seg, cols) -> np.ndarray | int:
        T = self.T
        x: np.ndarray | int = 0
        for i, e in seg:
            c = cols[i][:, e]
            x = c if isinstance(x, int) else T[x, c]
        return x

    def _digits(self, factors, idx):
        sizes = [len(self.domains[i]) for i in factors]
        digits = []
        rest = idx.copy()
        for d in reversed(sizes):
            digits.append(rest % d)
            rest //= d
        digits.reverse()
        return {i: self.domains[i][dg] for i, dg in zip(factors, digits)}

    @staticmethod
    def _size(domains, factors) -> int:
        return int(np.prod([len(domains[i]) for i in factors], dtype=object)) if factors else 1

    def _run_component(self, comp, cols, n_assign: int):
        """Surviving lanes: (assignment positions, letter value arrays)."""
        eqs, steps = comp[0], comp[1]
        T, inv, n = self.T, self.inv, self.q.order
        consts = []
        for items, tail in eqs:
            cs = [self._segment(seg, cols) for seg, _, _ in items]
            consts.append((cs, self._segment(tail, cols)))
        pos = np.arange(n_assign, dtype=np.int64)
        vals: dict[int, np.ndarray] = {}

        def at(c):
            return c if isinstance(c, int) else c[pos]

        def power(j, e):
            v = vals[j]
            return v if e == 1 else inv[v]

        def prod(e, lo, hi, start):
            items = eqs[e][0]
            cs = consts[e][0]
            x = start
            for k in range(lo, hi):
                c = at(cs[k])
                x = c if isinstance(x, int) and x == 0 else T[x, c]
                x = T[x, power(items[k][1], items[k][2])]
            return x

        def times(x, c):
            c = at(c)
            if isinstance(c, int) and c == 0:
                return x
            if isinstance(x, int) and x == 0:
                return c
            return T[x, c]

        for step in steps:
            if not len(pos):
                break
            if step[0] == "branch":
                m = len(pos)
                pos = np.repeat(pos, n)
                for j in vals:
                    vals[j] = np.repeat(vals[j], n)
                vals[step[1]] = np.tile(np.arange(n, dtype=np.int64), m)
            elif step[0] == "solve":
                _, e, k = step
                items, _ = eqs[e]
                pre = times(prod(e, 0, k, 0), consts[e][0][k])
                post = times(prod(e, k + 1, len(items), 0), consts[e][1])
                if isinstance(pre, int):
                    pre = np.full(len(pos), pre, dtype=np.int64)
                if isinstance(post, int):
                    post = np.full(len(pos), post, dtype=np.int64)
                xe = inv[T[post, pre]]
                vals[items[k][1]] = xe if items[k][2] == 1 else inv[xe]
            else:
                e = step[1]
                x = times(prod(e, 0, len(eqs[e][0]), 0), consts[e][1])
                if isinstance(x, int):
                    keep = np.full(len(pos), x == 0, dtype=bool)
                else:
                    keep = x == 0
                pos = pos[keep]
                for j in vals:
                    vals[j] = vals[j][keep]
        return pos, vals

    def _unit(self, unit, outer_cols, n_outer: int, want: bool):
        """Per outer assignment: number of (private assignment, letter values)
        solutions, and optionally the first one."""
        eqs, steps, branches, fs, private = unit
        n = self.q.order
        total = self._size(self.domains, private)
        counts = np.zeros(n_outer, dtype=object)
        first: list = [None] * n_outer if want else []
        if total == 0:
            return counts, first
        step = max(1, _LANES // max(1, n_outer * n ** branches))
        for start in range(0, total, step):
            pidx = np.arange(start, min(total, start + step), dtype=np.int64)
            m = len(pidx)
            priv = self._digits(private, pidx)
            cols = {}
            for i in fs:
                if i in priv:
                    cols[i] = np.tile(priv[i], (n_outer, 1))
                else:
                    cols[i] = np.repeat(outer_cols[i], m, axis=0)
            pos, vals = self._run_component(unit, cols, n_outer * m)
            c = np.bincount(pos, minlength=n_outer * m).reshape(n_outer, m)
            counts += c.sum(axis=1).astype(object)
            if want:
                for o in np.nonzero(c.any(axis=1))[0]:
                    if first[o] is not None:
                        continue
                    k = int(np.nonzero(c[o])[0][0])
                    lane = int(np.nonzero(pos == o * m + k)[0][0])
                    first[o] = ({i: tuple(int(v) for v in priv[i][k]) for i in private},
                                {j: int(v[lane]) for j, v in vals.items()})
        return counts, first

    def run(self, want_one: bool = False):
        n = self.q.order
        for i in self.idle_factors:
            if not len(self.domains[i]):
                return None if want_one else 0
        widest = max((n ** u[2] for u in self.units), default=1)
        chunk = max(1, _LANES // widest)
        outer_total = self._size(self.domains, self.shared)
        total = 0
        for start in range(0, outer_total, chunk):
            idx = np.arange(start, min(outer_total, start + chunk), dtype=np.int64)
            cols = self._digits(self.shared, idx)
            per = np.ones(len(idx), dtype=object)
            firsts = []
            for unit in self.units:
                counts, first = self._unit(unit, cols, len(idx), want_one)
                per = per * counts
                firsts.append(first)
                if not want_one and not per.any():
                    break
            if not want_one:
                total += int(per.sum())
                continue
            hits = np.nonzero(per != 0)[0]
            if not len(hits):
                continue
            a = int(hits[0])
            values = [0] * self.p.free_letters
            maps: dict[int, tuple] = {i: tuple(int(v) for v in cols[i][a]) for i in self.shared}
            for first in firsts:
                priv, vals = first[a]
                maps.update(priv)
                for j, v in vals.items():
                    values[j] = v
            out = tuple(maps.get(i, tuple(int(v) for v in self.domains[i][0]))
                        for i in range(len(self.p.factors)))
            return HomAssignment(out, tuple(values))
        if want_one:
            return None
        mult = n ** self.idle_letters
        for i in self.idle_factors:
            mult *= len(self.domains[i])
        return total * mult


def hom_count(p: Presentation, q: FiniteGroup) -> int:
    """``|Hom(P, Q)|``"""
    return _Engine(p, q).run()


def find_hom(p: Presentation, q: FiniteGroup, injective_on: Sequence[int] = ()) -> HomAssignment | None:
    """First hom ``P -> Q`` whose restriction to each listed factor is injective."""
    domains = {}
    for i in injective_on:
        domains[i] = [h.map for h in enumerate_homs(p.factors[i], None, q) if h.is_injective()]
    return _Engine(p, q, domains).run(want_one=True)


@dataclass(frozen=True)
class HomCountProfile:
    entries: tuple[tuple[str, int], ...]

    def counts(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.entries)

    def first_difference(self, other: "HomCountProfile") -> tuple[str, int, int] | None:
        for (n1, c1), (n2, c2) in zip(self.entries, other.entries):
            if c1 != c2:
                return (n1, c1, c2)
        if len(self.entries) != len(other.entries):
            return ("<length>", len(self.entries), len(other.entries))
        return None


def hom_profile(p: Presentation, catalog: Sequence[FiniteGroup]) -> HomCountProfile:
    if not catalog:
        raise PresentationError("empty catalog")
    return HomCountProfile(tuple((q.name or f"order{q.order}", hom_count(p, q)) for q in catalog))
