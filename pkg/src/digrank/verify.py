"""Randomized self-check suites: every formula against dense elimination.

Each suite draws seeded instances from the generators, applies one of the
structural rank results, and compares against the exact dense oracle.
A SuiteReport records how many instances ran, every disagreement found
(with the offending digraph serialized so it can be replayed), and the
wall time.  Suites are deterministic in (name, seed, count, max_n).

Suite names are the stable CLI tokens; see SUITE_DEFAULTS for the list.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .blocks import decompose
from .classify import (
    CutVertexCase,
    classify_bordered,
    classify_cut,
    make_split,
    side_components,
)
from .digraph import EdgeKind, WeightedDigraph, build, format_digraph
from .engine import (
    DigraphAttachment,
    EdgeAddition,
    RuleTag,
    apply_additions,
    build_genr2,
    check_lemma_2rin,
    loop_invariance_check,
    oracle_rank,
    rank_case1_peel,
    rank_case2_peel,
    rank_case3_peel,
    rank_delta_cr2,
    rank_genr2,
    rank_mdt,
    rank_r0_biblock_graph,
    rank_r0_digraph,
    rank_r2_biblock_graph,
    rank_r2_block_graph,
    rank_r2_digraph,
    rank_recursive,
)
from .errors import (
    DigraphError,
    InternalMismatch,
    PreconditionViolated,
    UnknownSuite,
)
from .generate import DEFAULT_POOL, GenSpec, extend_to_r2, gen, random_digraph
from .linalg import RationalMatrix, bordered, rank
from .trees import max_matching, rank_r2_tree, rank_tree


@dataclass
class SuiteReport:
    suite: str
    instances: int
    failures: list[dict]
    wall_time_s: float
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failures": self.failures,
            "wall_time_s": self.wall_time_s,
            "extra": self.extra,
        }


def _fail(failures: list[dict], detail: str, G: WeightedDigraph | None = None, **kw):
    entry = {"detail": detail}
    if G is not None:
        entry["instance"] = format_digraph(G)
    entry.update(kw)
    failures.append(entry)


_ENTRY_POOL = tuple(
    Fraction(x) for x in (0, 0, 1, -1, 2, Fraction(1, 2), -3)
)


def _rand_vec(rng, k):
    return tuple(rng.choice(_ENTRY_POOL) for _ in range(k))


def _rand_square(rng, k) -> RationalMatrix:
    return RationalMatrix([_rand_vec(rng, k) for _ in range(k)], cols=k)


# -- individual suites ---------------------------------------------------------


def _suite_thm_hy(count, max_n, rng):
    """Membership trichotomy == literal rank increment, on random borders."""
    failures: list[dict] = []
    for i in range(count):
        k = rng.randint(0, max_n - 1)
        B = _rand_square(rng, k)
        x = _rand_vec(rng, k)
        y = _rand_vec(rng, k)
        alpha = rng.choice(_ENTRY_POOL)
        cls = classify_bordered(alpha, x, y, B)
        delta = rank(bordered(alpha, x, y, B)).rank - rank(B).rank
        if cls.delta != delta:
            _fail(
                failures,
                f"case {cls.label} (delta {cls.delta}) vs rank increment {delta}",
                instance=repr((alpha, x, y, B)),
            )
        m1, m2, m3, m4 = cls.memberships
        if (not m1 and not m2) and (m3 and m4):
            _fail(
                failures,
                "case I and case II conditions held at once",
                instance=repr((alpha, x, y, B)),
            )
    return count, failures, {}


def _cut_instances(rng, max_n, want, budget):
    """Yield up to `want` (G, v, side) triples where v is a cut-vertex."""
    made = 0
    for _ in range(budget):
        if made >= want:
            return
        G = random_digraph(rng.randint(3, max_n), rng)
        d = decompose(G)
        if not d.cut_vertices:
            continue
        v = rng.choice(sorted(d.cut_vertices))
        side = rng.choice(side_components(G, v))
        made += 1
        yield G, v, side


def _suite_obs1(count, max_n, rng):
    """classify_cut's two routes agree and the increment is 0, 1 or 2."""
    failures: list[dict] = []
    instances = 0
    for G, v, side in _cut_instances(rng, max_n, count, budget=count * 60):
        instances += 1
        try:
            cls = classify_cut(G, make_split(G, v, side))
        except DigraphError as e:
            _fail(failures, f"classification blew up at v={v}: {e}", G)
            continue
        if cls.delta not in (0, 1, 2):
            _fail(failures, f"impossible increment {cls.delta}", G)
    return instances, failures, {}


def _plant_case1(rng, max_n):
    """Base digraph plus 1-2 loop-free bi-arc leaves on one vertex: the
    border there never meets the leaf-block row/column spaces."""
    G = random_digraph(rng.randint(2, max_n - 1), rng)
    v = rng.randrange(G.n)
    side = {v}
    for _ in range(rng.randint(1, 2)):
        side.add(G.n)
        G = G.attach_edge(
            v,
            EdgeKind.NC_TILDE_EDGE,
            (rng.choice(DEFAULT_POOL), rng.choice(DEFAULT_POOL)),
        )
    return G, v, frozenset(side)


def _suite_thm22(count, max_n, rng):
    """Case I peel: r(G) = r(H - v) + r(G - H) + 2."""
    failures: list[dict] = []
    for i in range(count):
        G, v, side = _plant_case1(rng, max_n)
        split = make_split(G, v, side)
        cls = classify_cut(G, split)
        if cls.case is not CutVertexCase.RANK_PLUS_2:
            _fail(failures, f"planted split classified {cls.label}, wanted I", G)
            continue
        got = rank_case1_peel(G, split)
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"peel said {got}, oracle {want}", G)
    return count, failures, {}


def _suite_lemma_2rin(count, max_n, rng):
    """Full-set +2-per-vertex removal is equivalent to all-subsets removal."""
    failures: list[dict] = []
    instances = 0
    half = count // 2
    # Positive half: r2 extensions with their cut-vertex set (the sum
    # formula makes the full-set equation hold).
    made = 0
    for _ in range(count * 40):
        if made >= half:
            break
        base = random_digraph(rng.randint(3, max_n), rng)
        G = extend_to_r2(base, seed=rng.randrange(10**6))
        cuts = sorted(decompose(G).cut_vertices)
        if not 1 <= len(cuts) <= 4:
            continue
        made += 1
        instances += 1
        try:
            if not check_lemma_2rin(G, cuts, all_subsets=True):
                _fail(failures, f"full-set equation failed for cuts {cuts}", G)
        except InternalMismatch as e:
            _fail(failures, str(e), G)
    # Mixed half: arbitrary digraphs and subsets; only the equivalence is
    # claimed, whichever way it comes out.
    for _ in range(count - made):
        instances += 1
        G = random_digraph(rng.randint(2, max_n), rng)
        m = rng.randint(1, min(4, G.n))
        vs = rng.sample(range(G.n), m)
        try:
            check_lemma_2rin(G, vs, all_subsets=True)
        except InternalMismatch as e:
            _fail(failures, str(e), G)
    return instances, failures, {}


def _mdt_instance(rng):
    """A windmill (one hub) or a two-hub chain whose every block drops by
    exactly twice its cut count; weights resampled until that holds."""
    for _ in range(60):
        arcs = []
        pool = DEFAULT_POOL

        def biarc(u, v):
            arcs.append((u, v, rng.choice(pool)))
            arcs.append((v, u, rng.choice(pool)))

        if rng.random() < 0.6:
            hubs = [0]
            n = 1
        else:
            hubs = [0, 1]
            n = 4
            biarc(0, 2), biarc(0, 3), biarc(1, 2), biarc(1, 3)
        for hub in hubs:
            for _ in range(rng.randint(1, 3)):
                if rng.random() < 0.5:
                    leaf = n
                    n += 1
                    biarc(hub, leaf)
                else:
                    a, b, c = n, n + 1, n + 2
                    n += 3
                    biarc(hub, a), biarc(a, b), biarc(b, c), biarc(c, hub)
        G = build(n, arcs)
        try:
            return G, rank_mdt(G)
        except PreconditionViolated:
            continue
    return None, None


def _suite_thm_mdt(count, max_n, rng):
    """Per-block sum formula on digraphs satisfying the per-block drop."""
    failures: list[dict] = []
    instances = 0
    for _ in range(count):
        G, got = _mdt_instance(rng)
        if G is None:
            _fail(failures, "could not build a qualifying instance in 60 tries")
            continue
        instances += 1
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"per-block sum said {got}, oracle {want}", G)
    return instances, failures, {}


def _r2_base(rng, max_n, need_cuts=False):
    for _ in range(200):
        base = random_digraph(rng.randint(3, max_n), rng)
        G = extend_to_r2(base, seed=rng.randrange(10**6))
        if not need_cuts or decompose(G).cut_vertices:
            return G
    raise InternalMismatch("could not build an r2 base with cut-vertices")


def _suite_thm_pen(count, max_n, rng):
    """Whole-graph r2 sum: rank = sum of block cores + 2 * cuts."""
    failures: list[dict] = []
    for _ in range(count):
        G = _r2_base(rng, max_n)
        got = rank_r2_digraph(G) if G.is_connected() else None
        if got is None:
            got = sum(
                rank_r2_digraph(G.induced_subdigraph(c))
                for c in G.connected_components()
            )
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"r2 sum said {got}, oracle {want}", G)
    return count, failures, {}


def _suite_cor_loops(count, max_n, rng):
    """Loops at cut-vertices of an r2-digraph never move the rank."""
    failures: list[dict] = []
    for _ in range(count):
        G = _r2_base(rng, max_n)
        if not loop_invariance_check(G, trials=5, seed=rng.randrange(10**6)):
            _fail(failures, "a cut-vertex loop rewrite changed the rank", G)
    return count, failures, {}


def _suite_thm_genr2(count, max_n, rng):
    """Gluing digraphs onto cut-vertices by bi-arc bridges: additive rank."""
    failures: list[dict] = []
    instances = 0
    for _ in range(count):
        try:
            G = _r2_base(rng, max_n, need_cuts=True)
        except InternalMismatch:
            continue
        if not G.is_connected():
            continue
        cuts = sorted(decompose(G).cut_vertices)
        atts = []
        for _ in range(rng.randint(1, 3)):
            W = random_digraph(rng.randint(1, 3), rng)
            atts.append(
                DigraphAttachment(
                    W=W,
                    w_vertex=rng.randrange(W.n),
                    at=rng.choice(cuts),
                    into_w=rng.choice(DEFAULT_POOL),
                    out_of_w=rng.choice(DEFAULT_POOL),
                )
            )
        instances += 1
        got = rank_genr2(G, atts)
        want = oracle_rank(build_genr2(G, atts))
        if got != want:
            _fail(failures, f"glued sum said {got}, oracle {want}", G)
    return instances, failures, {}


def _suite_cor_cr2(count, max_n, rng):
    """Rank delta of single-vertex attachments = number carrying loops."""
    failures: list[dict] = []
    instances = 0
    kinds = (
        EdgeKind.SIMPLE_EDGE,
        EdgeKind.NC_TILDE_EDGE,
        EdgeKind.NC_TILDE_ARC,
        EdgeKind.NC_EDGE,
        EdgeKind.NC_ARC,
    )
    need = {k: {"simple-edge": 1, "nc-tilde-edge": 2, "nc-tilde-arc": 1,
                "nc-edge": 3, "nc-arc": 2}[k.value] for k in kinds}
    for _ in range(count):
        try:
            G = _r2_base(rng, max_n, need_cuts=True)
        except InternalMismatch:
            continue
        if not G.is_connected():
            continue
        cuts = sorted(decompose(G).cut_vertices)
        adds = [
            EdgeAddition(
                at=rng.choice(cuts),
                kind=(k := rng.choice(kinds)),
                weights=tuple(rng.choice(DEFAULT_POOL) for _ in range(need[k])),
                toward_new=rng.random() < 0.5,
            )
            for _ in range(rng.randint(1, 4))
        ]
        instances += 1
        got = rank_delta_cr2(G, adds)
        want = oracle_rank(apply_additions(G, adds)) - oracle_rank(G)
        if got != want:
            _fail(failures, f"delta said {got}, oracle delta {want}", G)
    return instances, failures, {}


def _suite_thm_tt(count, max_n, rng):
    """Loopless bi-arc trees: rank = twice the matching number."""
    failures: list[dict] = []
    for i in range(count):
        G = gen(
            GenSpec(
                "loopless-biarc-tree",
                n=rng.randint(1, max_n),
                seed=rng.randrange(10**9),
            )
        )
        got = rank_tree(G)
        want = oracle_rank(G)
        if got != want or got != 2 * max_matching(G).size:
            _fail(failures, f"2q said {got}, oracle {want}", G)
    return count, failures, {}


def _suite_cor_r2tree(count, max_n, rng):
    """r2-trees: rank = 2q + (number of looped leaves)."""
    failures: list[dict] = []
    for _ in range(count):
        G = gen(
            GenSpec("r2-tree", n=rng.randint(2, max_n), seed=rng.randrange(10**9))
        )
        got = rank_r2_tree(G)
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"2q+s said {got}, oracle {want}", G)
    return count, failures, {}


def _suite_cor_blockgraph(count, max_n, rng):
    """Qualifying block graphs are nonsingular: rank = n."""
    failures: list[dict] = []
    for _ in range(count):
        G = gen(
            GenSpec(
                "r2-block-graph",
                n=rng.randint(3, max(3, max_n)),
                seed=rng.randrange(10**9),
            )
        )
        cert = rank_r2_block_graph(G)
        want = oracle_rank(G)
        if cert.rank != want or cert.rank != G.n:
            _fail(failures, f"family formula said {cert.rank}, oracle {want}", G)
    return count, failures, {}


def _suite_cor_biblock_r2(count, max_n, rng):
    """Qualifying pendant-edge biblock graphs: rank = 2 * block count."""
    failures: list[dict] = []
    for _ in range(count):
        G = gen(
            GenSpec(
                "r2-biblock-graph",
                n=rng.randint(4, max(4, max_n)),
                seed=rng.randrange(10**9),
            )
        )
        cert = rank_r2_biblock_graph(G)
        want = oracle_rank(G)
        if cert.rank != want:
            _fail(failures, f"2k said {cert.rank}, oracle {want}", G)
    return count, failures, {}


def _plant_case2(rng, max_n):
    """A pendant that zeroes the border: either a loop-free bi-arc path of
    length 2 with the hinge loop removed, or a single looped leaf whose
    loop weight is tuned so the border residue vanishes."""
    G0 = random_digraph(rng.randint(2, max_n - 2), rng)
    v = rng.randrange(G0.n)
    if rng.random() < 0.5:
        G0 = G0.with_loop(v, 0)
        a, b = G0.n, G0.n + 1
        arcs = [(u, w, x) for (u, w, x) in G0.arcs()]
        for (s, t) in ((v, a), (a, b)):
            arcs.append((s, t, rng.choice(DEFAULT_POOL)))
            arcs.append((t, s, rng.choice(DEFAULT_POOL)))
        G = build(G0.n + 2, arcs)
        return G, v, frozenset({v, a, b})
    alpha = G0.loop_weight(v)
    if alpha == 0:
        alpha = rng.choice(DEFAULT_POOL)
        G0 = G0.with_loop(v, alpha)
    x = rng.choice(DEFAULT_POOL)
    y = rng.choice(DEFAULT_POOL)
    beta = x * y / alpha  # makes alpha - x*(y/beta) vanish
    a = G0.n
    arcs = [(u, w, t) for (u, w, t) in G0.arcs()]
    arcs += [(v, a, x), (a, v, y), (a, a, beta)]
    G = build(G0.n + 1, arcs)
    return G, v, frozenset({v, a})


def _suite_thm_r0(count, max_n, rng):
    """Case II peel keeps the cut-vertex with the outside part."""
    failures: list[dict] = []
    instances = 0
    for _ in range(count):
        G, v, side = _plant_case2(rng, max_n)
        split = make_split(G, v, side)
        cls = classify_cut(G, split)
        if cls.case is not CutVertexCase.RANK_PLUS_0:
            _fail(failures, f"planted split classified {cls.label}, wanted II", G)
            continue
        try:
            got = rank_case2_peel(G, split)
        except PreconditionViolated:
            # loop present and the outside holds both memberships: the
            # formula is not claimed there, skip without counting.
            continue
        instances += 1
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"case II peel said {got}, oracle {want}", G)
    return instances, failures, {}


def _scaled_biblock(rng, max_n):
    G = gen(
        GenSpec("biblock-graph", n=rng.randint(4, max_n), seed=rng.randrange(10**9))
    )
    d = decompose(G)
    block_of = {}
    for i, blk in enumerate(d.blocks):
        s = set(blk)
        for (u, w) in G.underlying_edges():
            if u in s and w in s:
                block_of[(u, w)] = i
    scales = [rng.choice(DEFAULT_POOL) for _ in d.blocks]
    arcs = []
    for (u, w, t) in G.arcs():
        i = block_of[(min(u, w), max(u, w))]
        arcs.append((u, w, t * scales[i]))
    return build(G.n, arcs)


def _suite_thm_r0f(count, max_n, rng):
    """r0-digraphs without cut loops: rank = plain sum of block ranks."""
    failures: list[dict] = []
    instances = 0
    for _ in range(count):
        G = _scaled_biblock(rng, max_n)
        if rng.random() < 0.4:
            # one non-r0 block is allowed: hang a triangle somewhere
            u = rng.randrange(G.n)
            arcs = [(a, b, w) for (a, b, w) in G.arcs()]
            p, q = G.n, G.n + 1
            for (s, t) in ((u, p), (p, q), (q, u)):
                arcs.append((s, t, Fraction(1)))
                arcs.append((t, s, Fraction(1)))
            G = build(G.n + 2, arcs)
        try:
            got = rank_r0_digraph(G)
        except PreconditionViolated as e:
            _fail(failures, f"expected a qualifying r0-digraph: {e}", G)
            continue
        instances += 1
        want = oracle_rank(G)
        if got != want:
            _fail(failures, f"block sum said {got}, oracle {want}", G)
    return instances, failures, {}


def _suite_cor_biblock_r0(count, max_n, rng):
    """Biblock graphs with spare vertices on both sides: rank = 2k."""
    failures: list[dict] = []
    for _ in range(count):
        G = gen(
            GenSpec(
                "biblock-graph", n=rng.randint(4, max_n), seed=rng.randrange(10**9)
            )
        )
        cert = rank_r0_biblock_graph(G)
        want = oracle_rank(G)
        if cert.rank != want:
            _fail(failures, f"2k said {cert.rank}, oracle {want}", G)
    return count, failures, {}


def _case3_block_graph(rng, max_n):
    sizes = tuple(
        rng.randint(3, 4) for _ in range(rng.randint(2, max(2, max_n // 3)))
    )
    return gen(
        GenSpec("block-graph", n=sum(sizes), sizes=sizes, seed=rng.randrange(10**9))
    )


def _case3_arc_pendant(rng, max_n):
    """Dense connected base with single-arc pendants; returns the planted sides.

    Two loop-free arc pendants hang at distinct base vertices.  Each is a
    rank-delta-1 block, so neither the r2 nor the r0 closed form covers the
    graph and the engine is forced to peel them.
    """
    n0 = rng.randint(4, max_n)
    G = random_digraph(n0, rng, p=0.5)
    for _ in range(50):
        if G.is_connected():
            break
        G = random_digraph(n0, rng, p=0.5)
    sides = []
    # attach to base vertices only, so the planted sides stay valid
    for at in rng.sample(range(n0), 2):
        sides.append((at, frozenset({at, G.n})))
        G = G.attach_edge(
            at,
            EdgeKind.NC_TILDE_ARC,
            (rng.choice(DEFAULT_POOL),),
            toward_new=rng.random() < 0.5,
        )
    if rng.random() < 0.3:  # occasional looped-arc pendant for variety
        G = G.attach_edge(
            rng.randrange(n0),
            EdgeKind.NC_ARC,
            (rng.choice(DEFAULT_POOL), rng.choice(DEFAULT_POOL)),
            toward_new=rng.random() < 0.5,
        )
    return G, sides


def _pendant_block_split(G, rng):
    """One pendant-block split of G, if any block hangs off a single cut."""
    d = decompose(G)
    options = [
        i
        for i in range(d.block_count)
        if d.pendant[i] and len(d.cuts_in_block(i)) == 1
    ]
    if not options:
        return None
    i = rng.choice(options)
    (v,) = d.cuts_in_block(i)
    return v, frozenset(d.blocks[i])


def _suite_case3(count, max_n, rng):
    """Engine == oracle on digraphs designed to force the one-increment
    peels; the standalone peel formula is checked on a planted split, and
    the report counts how many certificates actually quote these rules."""
    failures: list[dict] = []
    with_case3 = 0
    with_literal_peel = 0
    for i in range(count):
        sides: list[tuple[int, frozenset]] = []
        if i % 2 == 0:
            G = _case3_block_graph(rng, max_n)
            picked = _pendant_block_split(G, rng)
            if picked:
                sides.append(picked)
        else:
            G, sides = _case3_arc_pendant(rng, max_n)
        cert = rank_recursive(G)
        want = oracle_rank(G)
        if cert.rank != want:
            _fail(failures, f"engine said {cert.rank}, oracle {want}", G)
        for (v, side) in sides:
            split = make_split(G, v, side)
            if classify_cut(G, split).case is CutVertexCase.RANK_PLUS_1:
                got = rank_case3_peel(G, split)
                if got != want:
                    _fail(
                        failures,
                        f"standalone case III peel at v={v} said {got}, oracle {want}",
                        G,
                    )
        rules = cert.rules_used()
        if RuleTag.CASE_III_PEEL in rules or RuleTag.CASE_III_LT in rules:
            with_case3 += 1
        if RuleTag.CASE_III_PEEL in rules:
            with_literal_peel += 1
    extra = {"with_case3_nodes": with_case3, "with_literal_peel": with_literal_peel}
    return count, failures, extra


SUITE_DEFAULTS: dict[str, tuple] = {
    "thm-hy": (_suite_thm_hy, 400, 6),
    "obs-1": (_suite_obs1, 300, 8),
    "thm-2.2": (_suite_thm22, 300, 8),
    "lemma-2rin": (_suite_lemma_2rin, 150, 7),
    "thm-mdt": (_suite_thm_mdt, 120, 8),
    "thm-pen": (_suite_thm_pen, 200, 8),
    "cor-loops": (_suite_cor_loops, 120, 8),
    "thm-genr2": (_suite_thm_genr2, 150, 7),
    "cor-cr2": (_suite_cor_cr2, 150, 7),
    "thm-tt": (_suite_thm_tt, 400, 12),
    "cor-r2tree": (_suite_cor_r2tree, 300, 10),
    "cor-blockgraph": (_suite_cor_blockgraph, 150, 10),
    "cor-biblock-r2": (_suite_cor_biblock_r2, 150, 10),
    "thm-r0": (_suite_thm_r0, 200, 8),
    "thm-r0f": (_suite_thm_r0f, 200, 10),
    "cor-biblock-r0": (_suite_cor_biblock_r0, 150, 10),
    "case3": (_suite_case3, 300, 8),
}


def suite_names() -> tuple[str, ...]:
    return tuple(SUITE_DEFAULTS)


def run_suite(
    name: str,
    count: int | None = None,
    max_n: int | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Run one named suite; deterministic in all four arguments."""
    if name not in SUITE_DEFAULTS:
        raise UnknownSuite(
            f"unknown suite {name!r}; known: {', '.join(SUITE_DEFAULTS)}"
        )
    fn, default_count, default_max_n = SUITE_DEFAULTS[name]
    count = default_count if count is None else count
    max_n = default_max_n if max_n is None else max_n
    if count < 1 or max_n < 4:
        raise UnknownSuite("count must be >= 1 and max-n >= 4")
    rng = random.Random(f"{name}:{seed}")
    start = time.perf_counter()
    instances, failures, extra = fn(count, max_n, rng)
    elapsed = time.perf_counter() - start
    return SuiteReport(name, instances, failures, round(elapsed, 3), extra)
