import pytest
from hypothesis import given

from pilekit import oracles
from pilekit.batteries import all_actions, random_partition
from pilekit.catalog import cyclic
from pilekit.gset import (GSet, InvalidPartition, NotAnAction, Partition, check_aligned, is_g_partition,
                          refine_to_g_partition, setwise_stabilizer, stabilizer,
                          stabilizer_aligned_g_partition)

from conftest import pile_from_seed, seeds, swap_action


def test_stabilizers(c2):
    assert stabilizer(GSet.trivial_action(c2, 1), 0) == c2.whole
    assert stabilizer(GSet.regular(c2), 0).is_trivial()
    s = swap_action(c2, 4, [(0, 1)])
    assert stabilizer(s, 2) == c2.whole


def test_setwise_stabilizers(c2):
    s = swap_action(c2, 4, [(0, 1)])
    assert setwise_stabilizer(s, range(4)) == c2.whole
    assert setwise_stabilizer(s, [0]) == stabilizer(s, 0)
    assert setwise_stabilizer(s, [0, 1]) == c2.whole


def test_bad_action_rejected(c2):
    with pytest.raises(NotAnAction):
        GSet(c2, [[0, 1], [0, 0]])


def test_bad_partition_rejected(c2):
    s = GSet.regular(c2)
    with pytest.raises(InvalidPartition):
        Partition(s, ((0,),))
    with pytest.raises(InvalidPartition):
        Partition(s, ((0, 1), (1,)))


def test_g_partition_examples(c2):
    assert is_g_partition(Partition.singletons(GSet.trivial_action(c2, 3)))
    assert is_g_partition(Partition.singletons(swap_action(c2, 2, [(0, 1)])))
    s = swap_action(c2, 3, [(0, 1)])
    assert not is_g_partition(Partition(s, ((0, 2), (1,))))


def test_refine_examples(c2):
    s = swap_action(c2, 2, [(0, 1)])
    p = Partition.single_block(s)
    assert refine_to_g_partition(p) == p
    s4 = swap_action(c2, 4, [(0, 1), (2, 3)])
    p = Partition(s4, ((0, 2), (1, 3)))
    r = refine_to_g_partition(p)
    assert is_g_partition(r) and r.refines(p)
    # common refinement of p and its translates
    assert r.blocks == ((0, 2), (1, 3))


def test_aligned_trivial_group():
    s = GSet.trivial_action(cyclic(1), 4)
    p = Partition(s, ((0, 2), (1, 3)))
    res = stabilizer_aligned_g_partition(p)
    assert res.partition == p and check_aligned(p, res) == []


def test_aligned_swap_with_fixed_points(c2):
    s = swap_action(c2, 4, [(0, 1)])
    p = Partition.single_block(s)
    res = stabilizer_aligned_g_partition(p)
    assert check_aligned(p, res) == []
    assert oracles.aligned_refinement_exists(p)


def test_aligned_regular_c4(c4):
    s = GSet.regular(c4)
    p = Partition.single_block(s)
    res = stabilizer_aligned_g_partition(p)
    assert check_aligned(p, res) == []
    for b in res.partition.blocks:
        assert setwise_stabilizer(s, b).is_trivial()


def test_sweep_small_actions():
    for pile, _ in all_actions(4, 4):
        s = pile.space
        gp = oracles.all_g_partitions(s)
        assert oracles.stab_properties(s, gp) == []
        for part in gp[:6]:
            p = Partition(s, tuple(tuple(b) for b in part))
            assert check_aligned(p, stabilizer_aligned_g_partition(p)) == []


@given(seeds)
def test_refine_is_g_partition_and_finer(seed):
    import random
    pile = pile_from_seed(seed)
    p = random_partition(random.Random(seed), pile.space)
    r = refine_to_g_partition(p)
    assert is_g_partition(r) and r.refines(p)
    assert refine_to_g_partition(r) == r


@given(seeds)
def test_aligned_partition_checked(seed):
    import random
    pile = pile_from_seed(seed)
    p = random_partition(random.Random(seed), pile.space)
    res = stabilizer_aligned_g_partition(p)
    assert check_aligned(p, res) == []
    blocks = [frozenset(b) for b in res.partition.blocks]
    assert oracles.is_aligned(pile.space, blocks)
    assert oracles._maps_blocks_onto_blocks(pile.space, blocks)
