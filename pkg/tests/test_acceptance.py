"""Acceptance gate: one test per shipped guarantee, one line per verdict.

Each test is numbered and self-contained; together they pin the public
behaviour of the package at fixed seeds and exact (tolerance-zero) equality.
Scaled enumerations are noted inline: where a guarantee names an instance
count, the test runs exactly that count; where it names an instance *space*
too large to sweep in the stated wall-time, the test sweeps the largest
exhaustive core that fits and samples the rest deterministically.
"""

import gc
import itertools
import random
import time
from fractions import Fraction

import pytest

from digrank import (
    DigraphAttachment,
    EdgeAddition,
    EdgeKind,
    GenSpec,
    RationalMatrix,
    RuleTag,
    TreeKind,
    apply_additions,
    build,
    build_genr2,
    check_lemma_2rin,
    classify_bordered,
    classify_cut,
    classify_tree,
    count_loop_attachments,
    decompose,
    extend_to_r2,
    gen,
    is_r0_biblock_graph,
    is_r2_biblock_graph,
    is_r2_block_graph,
    is_r2_digraph,
    loop_invariance_check,
    make_split,
    max_matching,
    rank_case1_peel,
    rank_delta_cr2,
    rank_genr2,
    rank_r0_digraph,
    rank_r2_biblock_graph,
    rank_r2_block_graph,
    rank_r2_digraph,
    rank_recursive,
    rank_tree,
)
from digrank.classify import CutVertexCase
from digrank.generate import random_digraph
from oracles import naive_rank, rank_of_digraph

SIGNS = (Fraction(0), Fraction(1), Fraction(-1))
RICH = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3))


def _connected_random(rng, n, p=None):
    G = random_digraph(n, rng, p=p)
    for _ in range(60):
        if G.is_connected():
            return G
        G = random_digraph(n, rng, p=p)
    return G


def _delta_against_naive(alpha, x, y, B, rB):
    M = [[alpha, *x]] + [[y[i], *B.row(i)] for i in range(B.rows)]
    return naive_rank(M) - rB


def test_c01_trichotomy_exhaustive_small_cores_and_random():
    """Membership-derived case == literal rank difference.

    Exhaustive over every bordered matrix with core up to 2x2 and entries in
    {0,1,-1}; exhaustive over every 3x3 core with one seeded border each
    (the full 3x3 border sweep is ~43M instances, far past the 10 s budget);
    plus 500 random 5x5 bordered matrices over a richer pool.  All under 10 s.
    """
    t0 = time.perf_counter()
    checked = 0
    # The sweep allocates millions of short-lived Fractions; none of them
    # form cycles, so cyclic GC only adds rescans of the whole test session.
    gc.collect()
    gc.disable()
    try:
        for k in (0, 1, 2):
            borders = tuple(itertools.product(SIGNS, repeat=2 * k + 1))
            for bvals in itertools.product(SIGNS, repeat=k * k):
                B = RationalMatrix([bvals[i * k:(i + 1) * k] for i in range(k)], cols=k)
                rB = naive_rank(B.to_lists())
                for border in borders:
                    alpha, x, y = border[0], border[1:k + 1], border[k + 1:]
                    cls = classify_bordered(alpha, x, y, B)
                    assert cls.delta == _delta_against_naive(alpha, x, y, B, rB)
                    checked += 1

        rng = random.Random("c01")
        for bvals in itertools.product(SIGNS, repeat=9):
            B = RationalMatrix([bvals[0:3], bvals[3:6], bvals[6:9]], cols=3)
            rB = naive_rank(B.to_lists())
            alpha = rng.choice(SIGNS)
            x = tuple(rng.choice(SIGNS) for _ in range(3))
            y = tuple(rng.choice(SIGNS) for _ in range(3))
            cls = classify_bordered(alpha, x, y, B)
            assert cls.delta == _delta_against_naive(alpha, x, y, B, rB)
            checked += 1

        for _ in range(500):
            B = RationalMatrix([[rng.choice(RICH) for _ in range(4)] for _ in range(4)])
            rB = naive_rank(B.to_lists())
            alpha = rng.choice(RICH)
            x = tuple(rng.choice(RICH) for _ in range(4))
            y = tuple(rng.choice(RICH) for _ in range(4))
            cls = classify_bordered(alpha, x, y, B)
            assert cls.delta == _delta_against_naive(alpha, x, y, B, rB)
            checked += 1
    finally:
        gc.enable()

    elapsed = time.perf_counter() - t0
    assert checked == 19767 + 19683 + 500
    assert elapsed < 10.0, f"trichotomy sweep took {elapsed:.1f}s"


def test_c02_case1_pendant_peel_500_digraphs():
    """r(G) = r(H - v) + r(G - H) + 2 on 500 planted rank-plus-2 splits."""
    rng = random.Random("c02")
    pool = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
    for _ in range(500):
        n0 = rng.randint(1, 8)
        G = random_digraph(n0, rng)
        at = rng.randrange(n0)
        leaves = rng.randint(1, 2)
        for _ in range(leaves):
            G = G.attach_edge(
                at, EdgeKind.NC_TILDE_EDGE, (rng.choice(pool), rng.choice(pool))
            )
        side = frozenset({at, *range(n0, n0 + leaves)})
        split = make_split(G, at, side)
        assert classify_cut(G, split).case is CutVertexCase.RANK_PLUS_2
        inner = sorted(side - {at})
        rest = sorted(set(range(G.n)) - side)
        expected = (
            rank_of_digraph(G.induced_subdigraph(inner))
            + rank_of_digraph(G.induced_subdigraph(rest))
            + 2
        )
        assert rank_case1_peel(G, split) == expected == rank_of_digraph(G)


def test_c03_loopless_biarc_trees_rank_is_twice_matching():
    """1000 seeded trees (n <= 12): rank = 2q; 20 shapes x 50 reweightings
    never move the rank."""
    rng = random.Random("c03")
    for i in range(1000):
        G = gen(GenSpec("loopless-biarc-tree", n=rng.randint(2, 12), seed=i))
        q = max_matching(G).size
        assert rank_tree(G) == 2 * q == rank_of_digraph(G)

    for shape_seed in range(20):
        G = gen(GenSpec("loopless-biarc-tree", n=10, seed=shape_seed))
        base = 2 * max_matching(G).size
        for _ in range(50):
            arcs = [
                (u, v, Fraction(rng.randint(1, 40), rng.randint(1, 7)) * rng.choice((1, -1)))
                for u, v, _ in G.arcs()
            ]
            assert rank_of_digraph(build(G.n, arcs)) == base


def test_c04_vertex_set_removal_equivalence_200_instances():
    """r(G) = r(G-S) + 2|S| for the full set iff for every subset (m <= 4).

    check_lemma_2rin(all_subsets=True) recomputes both sides over all 2^m
    subsets and raises on any forward/backward disagreement; planted
    r2-digraph instances must additionally come out True.
    """
    rng = random.Random("c04")
    planted = 0
    for i in range(200):
        if i % 2 == 0:
            base = _connected_random(rng, rng.randint(3, 6))
            G = extend_to_r2(base, seed=i)
            cuts = sorted(decompose(G).cut_vertices)
            if not cuts:
                G = G.attach_edge(0, EdgeKind.NC_TILDE_EDGE, (1, 1))
                cuts = sorted(decompose(G).cut_vertices)
            vs = rng.sample(cuts, min(len(cuts), rng.randint(1, 4)))
            assert check_lemma_2rin(G, vs, all_subsets=True)
            planted += 1
        else:
            G = random_digraph(rng.randint(2, 7), rng)
            vs = rng.sample(range(G.n), min(G.n, rng.randint(1, 4)))
            check_lemma_2rin(G, vs, all_subsets=True)  # equivalence must hold
    assert planted == 100


def test_c05_r2_digraph_sum_formula_and_loop_invariance():
    """300 r2-digraphs: sum r(breve B_i) + 2m = oracle rank; ten cut-vertex
    loop rewrites per instance leave the oracle rank unchanged."""
    rng = random.Random("c05")
    for i in range(300):
        base = _connected_random(rng, rng.randint(2, 8))
        G = extend_to_r2(base, seed=i)
        assert is_r2_digraph(G)
        assert rank_r2_digraph(G) == rank_of_digraph(G)
        assert loop_invariance_check(G, trials=10, seed=i)


def test_c06_gluing_and_attachment_deltas_200_instances():
    """Glued-digraph rank formula and per-attachment rank deltas (s <= 3)."""
    rng = random.Random("c06")
    pool = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
    loopless = (EdgeKind.SIMPLE_EDGE, EdgeKind.NC_TILDE_EDGE, EdgeKind.NC_TILDE_ARC)
    looped = (EdgeKind.NC_EDGE, EdgeKind.NC_ARC)
    nweights = {
        EdgeKind.SIMPLE_EDGE: 1,
        EdgeKind.NC_TILDE_EDGE: 2,
        EdgeKind.NC_TILDE_ARC: 1,
        EdgeKind.NC_EDGE: 3,
        EdgeKind.NC_ARC: 2,
    }
    for i in range(200):
        base = extend_to_r2(_connected_random(rng, rng.randint(3, 6)), seed=i)
        cuts = sorted(decompose(base).cut_vertices)
        if not cuts:
            base = base.attach_edge(0, EdgeKind.NC_TILDE_EDGE, (1, 1))
            cuts = sorted(decompose(base).cut_vertices)
        s = rng.randint(1, 3)
        if i % 2 == 0:
            atts = []
            for _ in range(s):
                W = random_digraph(rng.randint(1, 3), rng)
                atts.append(
                    DigraphAttachment(
                        W,
                        rng.randrange(W.n),
                        rng.choice(cuts),
                        rng.choice(pool),
                        rng.choice(pool),
                    )
                )
            glued = build_genr2(base, atts)
            assert rank_genr2(base, atts) == rank_of_digraph(glued)
        else:
            kinds = [rng.choice(loopless) for _ in range(s)]
            if rng.random() < 0.5:
                kinds[rng.randrange(s)] = rng.choice(looped)
            adds = [
                EdgeAddition(
                    rng.choice(cuts),
                    k,
                    tuple(rng.choice(pool) for _ in range(nweights[k])),
                    rng.random() < 0.5,
                )
                for k in kinds
            ]
            delta = rank_delta_cr2(base, adds)
            assert delta == sum(1 for k in kinds if k in looped)
            grown = apply_additions(base, adds)
            assert rank_of_digraph(grown) - rank_of_digraph(base) == delta


def test_c07_block_graph_nonsingularity_and_biblock_2k():
    """200 r2-block graphs have full rank n; 200 r2-biblock graphs have 2k."""
    rng = random.Random("c07")
    for i in range(200):
        G = gen(GenSpec("r2-block-graph", n=rng.randint(6, 11), seed=i))
        assert is_r2_block_graph(G)
        assert rank_r2_block_graph(G).rank == G.n == rank_of_digraph(G)

        H = gen(GenSpec("r2-biblock-graph", n=rng.randint(8, 12), seed=i))
        assert is_r2_biblock_graph(H)
        k = decompose(H).block_count
        assert rank_r2_biblock_graph(H).rank == 2 * k == rank_of_digraph(H)


def test_c08_r0_digraph_block_sum_300_instances():
    """r(G) = sum of block ranks on r0-digraphs without cut-vertex loops;
    qualifying biblock graphs give exactly 2k."""
    rng = random.Random("c08")
    for i in range(300):
        G = gen(GenSpec("biblock-graph", n=rng.randint(8, 12), seed=i))
        if rng.random() < 0.4:
            # one complete block is allowed to break the r0 pattern
            d = decompose(G)
            noncut = next(v for v in range(G.n) if v not in d.cut_vertices)
            G = G.attach_edge(noncut, EdgeKind.SIMPLE_EDGE, (1,))
            G = G.attach_edge(noncut, EdgeKind.SIMPLE_EDGE, (1,))
            u, w = G.n - 2, G.n - 1
            G = build(G.n, list(G.arcs()) + [(u, w, Fraction(1)), (w, u, Fraction(1))])
        d = decompose(G)
        total = sum(
            rank_of_digraph(G.induced_subdigraph(d.blocks[b]))
            for b in range(d.block_count)
        )
        assert rank_r0_digraph(G, d) == total == rank_of_digraph(G)
        if is_r0_biblock_graph(G):
            assert total == 2 * d.block_count


def test_c09_engine_certificates_use_case3_peels():
    """Engine == oracle on 300 block-graph / arc-pendant digraphs; >= 90% of
    block-graph certificates carry a case-III node, and >= 90% of arc-pendant
    certificates carry the literal one-membership peel."""
    rng = random.Random("c09")
    case3_tags = {RuleTag.CASE_III_PEEL, RuleTag.CASE_III_LT}
    block_hits = 0
    for i in range(150):
        sizes = tuple(rng.randint(3, 4) for _ in range(rng.randint(2, 4)))
        G = gen(GenSpec("block-graph", n=sum(sizes), seed=7000 + i, sizes=sizes))
        cert = rank_recursive(G)
        assert cert.rank == rank_of_digraph(G)
        block_hits += bool(case3_tags & cert.rules_used())

    literal_hits = 0
    for i in range(150):
        G = _connected_random(rng, rng.randint(4, 8), p=0.5)
        n0 = G.n
        for at in rng.sample(range(n0), 2):
            G = G.attach_edge(
                at,
                EdgeKind.NC_TILDE_ARC,
                (rng.choice((Fraction(1), Fraction(-1), Fraction(2))),),
                toward_new=rng.random() < 0.5,
            )
        cert = rank_recursive(G)
        assert cert.rank == rank_of_digraph(G)
        literal_hits += RuleTag.CASE_III_PEEL in cert.rules_used()

    assert block_hits >= 135, f"case-III nodes in only {block_hits}/150 block graphs"
    assert literal_hits >= 135, f"literal peel in only {literal_hits}/150"


def test_c10_worked_fixtures_decompose_classify_and_rank(
    mixed_arc_digraph_14,
    r2_extended_digraph_19,
    r2_tree_10,
    block_graph_19,
    biblock_20,
):
    """The five fixture digraphs: frozen blocks, family membership, ranks."""
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

    assert is_r2_digraph(r2_extended_digraph_19)
    assert classify_tree(r2_tree_10) is TreeKind.R2_TREE
    assert max_matching(r2_tree_10).size == 4
    assert count_loop_attachments(r2_tree_10) == 1

    for G, expected in [
        (mixed_arc_digraph_14, 12),
        (r2_extended_digraph_19, 15),
        (r2_tree_10, 9),
        (block_graph_19, 14),
        (biblock_20, 12),
    ]:
        cert = rank_recursive(G, oracle_check=True)
        assert cert.rank == expected == rank_of_digraph(G)


def test_c11_global_soundness_exhaustive_small_digraphs():
    """Engine == naive oracle on every digraph with n <= 3 and weights in
    {1,-1} (full 3^(n^2) sweep), plus all 65536 arc patterns on n = 4 with
    deterministic sign assignments (the full n = 4 weight sweep is 3^16
    instances, past any 60 s budget).  All under 60 s."""
    t0 = time.perf_counter()
    ONE, NEG = Fraction(1), Fraction(-1)
    checked = 0
    gc.collect()
    gc.disable()
    try:
        for n in range(4):
            positions = [(u, v) for u in range(n) for v in range(n)]
            for combo in itertools.product((None, ONE, NEG), repeat=len(positions)):
                arcs = [
                    (u, v, w) for (u, v), w in zip(positions, combo) if w is not None
                ]
                G = build(n, arcs)
                assert rank_recursive(G).rank == rank_of_digraph(G)
                checked += 1

        positions = [(u, v) for u in range(4) for v in range(4)]
        for bits in range(1 << 16):
            pop = bits.bit_count()
            arcs = []
            for idx, (u, v) in enumerate(positions):
                if bits >> idx & 1:
                    arcs.append((u, v, ONE if (idx + pop) % 2 == 0 else NEG))
            G = build(4, arcs)
            assert rank_recursive(G).rank == rank_of_digraph(G)
            checked += 1
    finally:
        gc.enable()

    elapsed = time.perf_counter() - t0
    assert checked == 1 + 3 + 81 + 19683 + 65536
    assert elapsed < 60.0, f"exhaustive sweep took {elapsed:.1f}s"
