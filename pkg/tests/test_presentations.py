import random

import pytest
from hypothesis import given, strategies as st

from pilekit import oracles
from pilekit.batteries import random_rho
from pilekit.catalog import by_name, catalog, cyclic, small_groups
from pilekit.groups import GroupHom, subgroup_generated
from pilekit.gset import GSet
from pilekit.pile import Pile, PileMorphism, quotient_pile
from pilekit.presentations import (InvalidWord, PhiNotInjective, Presentation, RhoNotInjectiveOn,
                                   SquareDoesNotCommute, build_hnn, build_hnn_prime,
                                   build_hnn_prime_on_points, build_phnn, fac, find_hom, free,
                                   free_product, hnn_to_phnn_kernel, hom_count, hom_profile,
                                   induced_hom, is_hom, kill_factors, mod_l_quotient,
                                   quotient_by_closure)

from conftest import pile_from_seed, seeds

P3 = catalog("p3")
TARGETS = [g for g in P3 if g.order > 1]
C1 = cyclic(1)


def nhom(g, q):
    return len(oracles.homs_by_closure(g, q))


def same_profile(p1, p2, cat=P3):
    return hom_profile(p1, cat).first_difference(hom_profile(p2, cat)) is None


def test_free_product_examples(c2):
    p = Presentation.of_group(c2)
    assert free_product([p]) == p
    triv = Presentation()
    assert free_product([triv, triv]) == triv
    both = free_product([p, p])
    assert len(both.factors) == 2 and both.relators == ()


def test_invalid_words(c2):
    with pytest.raises(InvalidWord):
        Presentation((c2,), 0, ((fac(0, 2),),))
    with pytest.raises(InvalidWord):
        Presentation((c2,), 1, ((free(0, 2),),))


def test_hnn_empty_and_trivial(c2):
    assert build_hnn(c2, []).free_letters == 0
    p = build_hnn(c2, [("t", c2.trivial, GroupHom.identity(c2))])
    assert p.free_letters == 1 and p.relators == ()


def test_hnn_rejects_non_injective(c4):
    with pytest.raises(PhiNotInjective):
        build_hnn(c4, [("t", c4.whole, GroupHom(c4, c4, [0, 2, 0, 2]))])


def test_hnn_c2_centralizer_count(c2):
    p = build_hnn(c2, [("t", c2.whole, GroupHom.identity(c2))])
    for q in P3:
        # pairs (g, t) with g^2 = 1 and t commuting with g
        expect = sum(sum(1 for t in q.elements if q.mul[t][g] == q.mul[g][t])
                     for g in q.elements if q.mul[g][g] == 0)
        assert hom_count(p, q) == expect
        if q.order <= 4:
            assert oracles.naive_hom_count(p, q) == expect


def test_hnn_prime_examples(c2):
    p = build_hnn_prime(c2, [], GroupHom.identity(c2), c2)
    assert same_profile(p, free_product([Presentation.of_group(c2)] * 2))
    p = build_hnn_prime(c2, [("t", c2.whole)], GroupHom.identity(c2), c2)
    for q in P3:
        inv = [g for g in q.elements if q.mul[g][g] == 0]
        expect = sum(1 for a in inv for b in inv for t in q.elements
                     if q.mul[q.mul[q.inv(t)][a]][t] == b)
        assert hom_count(p, q) == expect
    d8 = by_name("D8")
    p = build_hnn_prime(C1, [("t0", C1.whole), ("t1", C1.whole)], GroupHom(C1, d8, [0]), d8)
    assert same_profile(p, free_product([Presentation.of_group(d8), Presentation.free_group(2)]))


def test_phnn_examples(c2):
    c4 = cyclic(4)
    empty = Pile(c2, GSet(c2, []))
    p = build_phnn(empty, GroupHom(c2, c4, [0, 2]))
    assert p.relators == () and p.free_letters == 0 and len(p.factors) == 2
    triv = Pile(C1, GSet.trivial_action(C1, 3))
    p = build_phnn(triv, GroupHom(C1, c4, [0]))
    assert same_profile(p, free_product([Presentation.of_group(c4), Presentation.free_group(3)]))
    reg = Pile(c2, GSet.regular(c2))
    p = build_phnn(reg, GroupHom.identity(c2))
    for q in P3:
        assert hom_count(p, q) == nhom(c2, q) ** 2 * q.order


def test_phnn_rejects_non_injective_rho(c2):
    fixed = Pile(c2, GSet.trivial_action(c2, 1))
    with pytest.raises(RhoNotInjectiveOn):
        build_phnn(fixed, GroupHom.trivial(c2, c2))


def test_kernel_words_regular(c2):
    reg = Pile(c2, GSet.regular(c2))
    words = hnn_to_phnn_kernel(reg, [0, 1], GroupHom.identity(c2))
    nontrivial = [w for w in words if any(l.kind == "factor" and l.value for l in w)]
    assert len(nontrivial) == 2
    assert all(w[0].index != w[2].index for w in nontrivial)


def test_kernel_words_fixed_point(c2):
    fixed = Pile(c2, GSet.trivial_action(c2, 1))
    rho = GroupHom.identity(c2)
    words = hnn_to_phnn_kernel(fixed, [0], rho)
    hnn = build_hnn_prime_on_points(fixed, [0], rho)
    assert same_profile(quotient_by_closure(hnn, words), hnn)


def test_quotient_by_closure_examples():
    d8 = by_name("D8")
    base = free_product([Presentation.of_group(d8), Presentation.free_group(2)])
    assert quotient_by_closure(base, []) == base
    killed = quotient_by_closure(base, [(free(0),), (free(1),)])
    assert same_profile(killed, Presentation.of_group(d8))
    one = quotient_by_closure(base, [(free(0),)])
    assert same_profile(one, free_product([Presentation.of_group(d8), Presentation.free_group(1)]))


def test_induced_hom_identity(c2):
    reg = Pile(c2, GSet.regular(c2))
    rho = GroupHom.identity(c2)
    h = induced_hom(reg, rho, reg, rho, PileMorphism.identity(reg), GroupHom.identity(c2))
    for w in h.source.relators:
        assert h.image(w) == w


def test_induced_hom_quotient_and_bad_square():
    c4 = cyclic(4)
    reg = Pile(c4, GSet.regular(c4))
    q, m = quotient_pile(reg, subgroup_generated(c4, {2}))
    lam = m.group_map
    h = induced_hom(reg, GroupHom.identity(c4), q, GroupHom.identity(q.group), m, lam)
    target = cyclic(2)
    a = find_hom(h.target, target)
    assert a is not None and is_hom(h.source, h.pullback(a, target), target)
    with pytest.raises(SquareDoesNotCommute):
        induced_hom(reg, GroupHom.identity(c4), q, GroupHom.identity(q.group), m,
                    GroupHom.trivial(c4, q.group))


def test_hom_count_examples(c2):
    assert hom_count(Presentation.of_group(c2), c2) == 2
    for q in P3:
        assert hom_count(Presentation.free_group(1), q) == q.order
    two = free_product([Presentation.of_group(c2)] * 2)
    assert hom_count(two, cyclic(4)) == 4


def test_profile_examples(c2):
    prof = hom_profile(Presentation(), P3)
    assert prof.counts() == (1,) * len(P3)
    p = Presentation.of_group(by_name("Q8"))
    assert same_profile(p, free_product([p, Presentation()]))


def test_mod_l_examples(c2):
    fixed = Pile(c2, GSet.trivial_action(c2, 1))
    ml = mod_l_quotient(build_phnn(fixed, GroupHom.identity(c2)), 1)
    assert hom_profile(ml, P3).counts() == tuple(q.order for q in P3)
    reg = Pile(c2, GSet.regular(c2))
    ml = mod_l_quotient(build_phnn(reg, GroupHom.identity(c2)), 1)
    assert same_profile(ml, free_product([Presentation.of_group(c2), Presentation.free_group(1)]))
    p = build_phnn(reg, GroupHom.identity(c2))
    assert same_profile(mod_l_quotient(p, 1), kill_factors(p, [1]))


def test_mod_l_with_trivial_l():
    c4 = cyclic(4)
    reg = Pile(c4, GSet.regular(c4))
    p = build_phnn(reg, GroupHom(c4, C1, [0] * 4))
    assert same_profile(mod_l_quotient(p, 1), p)


def random_presentation(rng, max_factors=3, max_free=2):
    gs = [g for g in small_groups(8) if g.order <= 4]
    nf, k = rng.randint(0, max_factors), rng.randint(0, max_free)
    fs = tuple(rng.choice(gs) for _ in range(nf))
    rels = []
    for _ in range(rng.randint(0, 4)):
        w = []
        for _ in range(rng.randint(1, 5)):
            if fs and (k == 0 or rng.random() < 0.5):
                i = rng.randrange(nf)
                w.append(fac(i, rng.randrange(fs[i].order)))
            elif k:
                w.append(free(rng.randrange(k), rng.choice([1, -1])))
        if w:
            rels.append(tuple(w))
    return Presentation(fs, k, tuple(rels))


@given(seeds, st.sampled_from([g for g in small_groups(8) if g.order <= 6]))
def test_hom_count_matches_naive(seed, q):
    p = random_presentation(random.Random(seed))
    n = hom_count(p, q)
    assert n == oracles.naive_hom_count(p, q)
    a = find_hom(p, q)
    assert (a is None) == (n == 0)
    if a is not None:
        assert is_hom(p, a, q)


@given(seeds, seeds)
def test_hom_count_multiplicative(s1, s2):
    p1 = random_presentation(random.Random(s1), 2, 1)
    p2 = random_presentation(random.Random(s2), 2, 1)
    both = free_product([p1, p2])
    for q in P3[:6]:
        assert hom_count(both, q) == hom_count(p1, q) * hom_count(p2, q)


@given(seeds)
def test_find_hom_injective_on_factor(seed):
    pile = pile_from_seed(seed, 4)
    rho = random_rho(random.Random(seed), pile, TARGETS)
    p = build_phnn(pile, rho)
    for q in catalog("p4"):
        a = find_hom(p, q, injective_on=(0,))
        if a is not None:
            assert is_hom(p, a, q) and len(set(a.factor_maps[0])) == pile.group.order
            break


@given(seeds)
def test_with_section_profiles(seed):
    rng = random.Random(seed)
    pile = pile_from_seed(seed, 4)
    rho = random_rho(rng, pile, TARGETS)
    pts = [rng.choice(orb) for orb in pile.orbits]
    assert same_profile(build_hnn_prime_on_points(pile, pts, rho), build_phnn(pile, rho), P3[:7])
