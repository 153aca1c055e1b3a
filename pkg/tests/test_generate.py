"""Seeded generator families: determinism and membership in the family."""

import random
from fractions import Fraction

import pytest

from digrank import (
    FAMILIES,
    GenSpec,
    TreeKind,
    classify_tree,
    decompose,
    extend_to_r2,
    format_digraph,
    gen,
    is_r0_biblock_graph,
    is_r2_biblock_graph,
    is_r2_block_graph,
    is_r2_digraph,
    is_r2_tree_digraph,
    is_tree,
)
from digrank.errors import InvalidSpec
from digrank.generate import random_digraph


@pytest.mark.parametrize("family", [f for f in FAMILIES if f != "r2-extension"])
def test_every_family_is_deterministic(family):
    a = gen(GenSpec(family, n=9, seed=5))
    b = gen(GenSpec(family, n=9, seed=5))
    assert format_digraph(a) == format_digraph(b)
    c = gen(GenSpec(family, n=9, seed=6))
    assert format_digraph(c) != format_digraph(a)  # seeds matter


def test_membership_loopless_tree():
    for seed in range(15):
        G = gen(GenSpec("loopless-biarc-tree", n=seed % 10 + 2, seed=seed))
        assert is_tree(G)
        assert classify_tree(G) is TreeKind.LOOPLESS_BI_ARC


def test_membership_cutloop_tree():
    kinds = set()
    for seed in range(15):
        G = gen(GenSpec("cutloop-biarc-tree", n=8, seed=seed))
        kinds.add(classify_tree(G))
    assert kinds <= {TreeKind.CUT_LOOP_BI_ARC, TreeKind.LOOPLESS_BI_ARC}
    assert TreeKind.CUT_LOOP_BI_ARC in kinds


def test_membership_r2_tree():
    for seed in range(15):
        G = gen(GenSpec("r2-tree", n=7, seed=seed))
        assert is_r2_tree_digraph(G)


def test_membership_simple_families():
    for seed in range(10):
        assert is_r2_block_graph(gen(GenSpec("r2-block-graph", n=11, seed=seed)))
        assert is_r2_biblock_graph(gen(GenSpec("r2-biblock-graph", n=12, seed=seed)))
        assert is_r0_biblock_graph(gen(GenSpec("biblock-graph", n=12, seed=seed)))


def test_block_graph_respects_requested_sizes():
    G = gen(GenSpec("block-graph", n=10, seed=1, sizes=(4, 4, 4)))
    d = decompose(G)
    assert sorted(len(b) for b in d.blocks) == [4, 4, 4]


def test_random_digraph_is_seed_stable():
    a = random_digraph(8, random.Random("x"), p=0.3)
    b = random_digraph(8, random.Random("x"), p=0.3)
    assert format_digraph(a) == format_digraph(b)


def test_weight_pool_is_respected():
    pool = (Fraction(7), Fraction(-7))
    G = gen(GenSpec("loopless-biarc-tree", n=10, seed=2, weight_pool=pool))
    assert {w for _, _, w in G.arcs()} <= set(pool)


def test_gen_validates_specs():
    with pytest.raises(InvalidSpec):
        gen(GenSpec("no-such-family"))
    with pytest.raises(InvalidSpec):
        gen(GenSpec("loopless-biarc-tree", n=0))
    with pytest.raises(InvalidSpec):
        gen(GenSpec("r2-extension", n=8))  # needs a base digraph


def test_extend_to_r2_fixture(mixed_arc_digraph_14):
    G = extend_to_r2(mixed_arc_digraph_14, seed=0)
    assert is_r2_digraph(G)
    assert G.n > mixed_arc_digraph_14.n
    # the base digraph survives untouched inside the extension
    for u, v, w in mixed_arc_digraph_14.arcs():
        assert G.arc_weight(u, v) == w


def test_extend_to_r2_is_idempotent_on_r2_digraphs():
    base = gen(GenSpec("loopless-biarc-tree", n=7, seed=3))
    once = extend_to_r2(base, seed=9)
    twice = extend_to_r2(once, seed=10)
    assert format_digraph(once) == format_digraph(twice)


def test_r2_extension_family_wraps_extend():
    base = gen(GenSpec("loopless-biarc-tree", n=6, seed=8))
    G = gen(GenSpec("r2-extension", seed=8, base=base))
    assert is_r2_digraph(G)
