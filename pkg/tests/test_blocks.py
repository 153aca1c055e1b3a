"""Block decomposition against networkx and a removal-count oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digrank import block_subdigraph, breve, build, decompose
from digrank.errors import IndexOutOfRange
from oracles import blocks_by_networkx, cut_vertices_by_removal, cuts_by_networkx


def random_graph(rng, n, p):
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                w = rng.choice((1, -1, 2))
                arcs += [(u, v, w), (v, u, w)]
        if rng.random() < 0.2:
            arcs.append((u, u, 1))
    return build(n, arcs)


def test_fixture_blocks(mixed_arc_digraph_14):
    d = decompose(mixed_arc_digraph_14)
    assert d.blocks == (
        (0, 1, 2),
        (0, 3, 4),
        (0, 5, 6, 7),
        (1, 13),
        (3, 12),
        (5, 10, 11),
        (7, 8, 9),
    )
    assert sorted(d.cut_vertices) == [0, 1, 3, 5, 7]
    # leaf blocks hang off exactly one cut
    assert d.pendant == (False, False, False, True, True, True, True)
    assert d.cuts_in_block(2) == (0, 5, 7)
    assert d.membership[0] == (0, 1, 2)


def test_every_fixture_agrees_with_networkx(
    mixed_arc_digraph_14, r2_extended_digraph_19, block_graph_19, biblock_20, r2_tree_10
):
    for G in (
        mixed_arc_digraph_14,
        r2_extended_digraph_19,
        block_graph_19,
        biblock_20,
        r2_tree_10,
    ):
        d = decompose(G)
        assert list(d.blocks) == blocks_by_networkx(G)
        assert set(d.cut_vertices) == cuts_by_networkx(G)
        assert set(d.cut_vertices) == cut_vertices_by_removal(G)


def test_degenerate_graphs():
    d0 = decompose(build(0, []))
    assert d0.blocks == () and d0.cut_vertices == frozenset()

    # isolated vertices form singleton blocks
    d = decompose(build(3, [(1, 1, 5)]))
    assert d.blocks == ((0,), (1,), (2,))
    assert d.pendant == (True, True, True)


@pytest.mark.parametrize("seed", range(40))
def test_random_graphs_match_networkx(seed):
    rng = random.Random(f"blocks:{seed}")
    G = random_graph(rng, rng.randint(1, 12), rng.choice((0.15, 0.3, 0.6)))
    d = decompose(G)
    assert list(d.blocks) == blocks_by_networkx(G)
    assert set(d.cut_vertices) == cuts_by_networkx(G)


@pytest.mark.parametrize("seed", range(25))
def test_cut_vertices_lie_in_at_least_two_blocks(seed):
    rng = random.Random(f"cuts:{seed}")
    G = random_graph(rng, rng.randint(2, 10), 0.3)
    d = decompose(G)
    for v in range(G.n):
        assert (v in d.cut_vertices) == (len(d.membership[v]) >= 2)
    # every vertex is covered; every arc stays inside one block
    assert all(d.membership[v] for v in range(G.n))
    for u, v, _ in G.arcs():
        assert any(u in d.blocks[i] and v in d.blocks[i] for i in d.membership[u])


def test_block_subdigraph_and_breve(mixed_arc_digraph_14):
    G = mixed_arc_digraph_14
    d = decompose(G)
    sub = block_subdigraph(G, d, 2)  # block (0, 5, 6, 7)
    assert sub.n == 4
    # arcs between block vertices survive with their weights
    assert sub.arc_weight(3, 2) == 1  # 7 -> 6 relabelled

    br = breve(G, d, 2)  # cuts 0, 5, 7 removed, vertex 6 remains
    assert br.n == 1
    assert br.loop_weight(0) == 1  # the loop at 6

    assert breve(G, d, 4).n == 1  # block (3, 12): only 12 is not a cut
    with pytest.raises(IndexOutOfRange):
        breve(G, d, 99)


def test_breve_may_be_empty():
    # a path of three vertices: middle block vertices are all cuts or shared
    G = build(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)])
    d = decompose(G)
    assert d.blocks == ((0, 1), (1, 2))
    assert breve(G, d, 0).n == 1
    # both endpoints of a bridge between two cuts vanish
    H = build(4, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (2, 3, 1), (3, 2, 1)])
    dh = decompose(H)
    assert dh.blocks == ((0, 1), (1, 2), (2, 3))
    assert breve(H, dh, 1).n == 0
