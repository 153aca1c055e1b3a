"""Seeded generators for the digraph families used by the verifier.

Everything is driven by `random.Random(seed)` plus the family name, so a
GenSpec pins the output byte-for-byte (the text serialization of the result
is deterministic).  Each generator re-validates its own output against the
matching recognizer predicate and raises InternalMismatch if it ever breaks
its own promise - that is a bug canary, not an expected failure.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .blocks import decompose
from .digraph import EdgeKind, WeightedDigraph, build
from .engine import (
    is_r0_biblock_graph,
    is_r2_biblock_graph,
    is_r2_block,
    is_r2_block_graph,
    is_r2_digraph,
)
from .errors import InternalMismatch, InvalidSpec
from .trees import TreeKind, classify_tree, is_r2_tree_digraph

DEFAULT_POOL: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 2),
)

FAMILIES = (
    "loopless-biarc-tree",
    "cutloop-biarc-tree",
    "r2-tree",
    "block-graph",
    "biblock-graph",
    "r2-block-graph",
    "r2-biblock-graph",
    "random-digraph",
    "r2-extension",
)


@dataclass(frozen=True)
class GenSpec:
    """Everything a generator needs; same spec, same digraph, always."""

    family: str
    n: int = 8
    seed: int = 0
    weight_pool: tuple[Fraction, ...] = DEFAULT_POOL
    sizes: tuple | None = None
    extras: int | None = None
    base: WeightedDigraph | None = None


def gen(spec: GenSpec) -> WeightedDigraph:
    if spec.family not in FAMILIES:
        raise InvalidSpec(f"unknown family {spec.family!r}")
    if spec.family != "r2-extension" and spec.n < 1:
        raise InvalidSpec(f"family {spec.family!r} needs n >= 1, got {spec.n}")
    if not spec.weight_pool or any(Fraction(w) == 0 for w in spec.weight_pool):
        raise InvalidSpec("weight pool must be nonempty and zero-free")
    rng = random.Random(f"{spec.family}:{spec.n}:{spec.seed}")
    pool = tuple(Fraction(w) for w in spec.weight_pool)
    if spec.family == "loopless-biarc-tree":
        G = _biarc_tree(spec.n, rng, pool)
        _require(classify_tree(G) is TreeKind.LOOPLESS_BI_ARC, spec)
    elif spec.family == "cutloop-biarc-tree":
        G = _cutloop_tree(spec.n, rng, pool)
        kind = classify_tree(G)
        _require(
            kind in (TreeKind.CUT_LOOP_BI_ARC, TreeKind.LOOPLESS_BI_ARC), spec
        )
    elif spec.family == "r2-tree":
        G = _r2_tree(spec.n, rng, pool, spec.extras)
        _require(is_r2_tree_digraph(G), spec)
    elif spec.family == "block-graph":
        G = _block_graph(spec.n, rng, spec.sizes, min_size=2, managed=False)
        _require(_all_blocks_complete(G), spec)
    elif spec.family == "r2-block-graph":
        G = _block_graph(spec.n, rng, spec.sizes, min_size=3, managed=True)
        _require(is_r2_block_graph(G), spec)
    elif spec.family == "biblock-graph":
        G = _biblock_graph(spec.n, rng, spec.sizes, pendants=False)
        _require(is_r0_biblock_graph(G), spec)
    elif spec.family == "r2-biblock-graph":
        G = _biblock_graph(spec.n, rng, spec.sizes, pendants=True)
        _require(is_r2_biblock_graph(G), spec)
    elif spec.family == "random-digraph":
        G = random_digraph(spec.n, rng, pool)
    else:  # r2-extension
        if spec.base is None:
            raise InvalidSpec("r2-extension needs a base digraph")
        G = extend_to_r2(spec.base, seed=spec.seed, weight_pool=pool)
        _require(is_r2_digraph(G), spec)
    return G


def _require(ok: bool, spec: GenSpec) -> None:
    if not ok:
        raise InternalMismatch(
            f"generator for {spec.family!r} produced a non-member (seed {spec.seed})"
        )


# -- trees ---------------------------------------------------------------


def _prufer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labelled tree on 0..n-1 via a Pruefer sequence."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        deg[leaf] -= 1
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def _biarc_arcs(edges, rng, pool):
    arcs = []
    for (u, v) in edges:
        arcs.append((u, v, rng.choice(pool)))
        arcs.append((v, u, rng.choice(pool)))
    return arcs


def _biarc_tree(n: int, rng: random.Random, pool) -> WeightedDigraph:
    return build(n, _biarc_arcs(_prufer_tree(n, rng), rng, pool))


def _internal_vertices(n: int, edges) -> set[int]:
    deg = [0] * n
    for (u, v) in edges:
        deg[u] += 1
        deg[v] += 1
    return {v for v in range(n) if deg[v] >= 2}


def _cutloop_tree(n: int, rng: random.Random, pool) -> WeightedDigraph:
    edges = _prufer_tree(n, rng)
    arcs = _biarc_arcs(edges, rng, pool)
    internal = sorted(_internal_vertices(n, edges))
    looped = [v for v in internal if rng.random() < 0.6]
    if internal and not looped:
        looped = [rng.choice(internal)]
    for v in looped:
        arcs.append((v, v, rng.choice(pool)))
    return build(n, arcs)


def _r2_tree(n, rng, pool, extras) -> WeightedDigraph:
    G = _cutloop_tree(n, rng, pool)
    edges = G.underlying_edges()
    internal = sorted(_internal_vertices(G.n, edges))
    # Every cut-vertex needs a plain leaf: loop-free, joined both ways.
    adj = G.underlying_adjacency()
    for c in internal:
        plain = any(
            len(adj[u]) == 1 and not G.has_loop(u) and G.has_arc(c, u) and G.has_arc(u, c)
            for u in adj[c]
        )
        if not plain:
            G = G.attach_edge(
                c, EdgeKind.NC_TILDE_EDGE, (rng.choice(pool), rng.choice(pool))
            )
    if extras is None:
        extras = rng.randint(1, 3) if internal else 0
    kinds = (EdgeKind.NC_TILDE_ARC, EdgeKind.NC_ARC, EdgeKind.NC_EDGE)
    for _ in range(extras):
        if not internal:
            break
        at = rng.choice(internal)
        kind = rng.choice(kinds)
        need = {EdgeKind.NC_TILDE_ARC: 1, EdgeKind.NC_ARC: 2, EdgeKind.NC_EDGE: 3}[kind]
        ws = tuple(rng.choice(pool) for _ in range(need))
        G = G.attach_edge(at, kind, ws, toward_new=rng.random() < 0.5)
    return G


# -- random digraphs ---------------------------------------------------------


def random_digraph(
    n: int,
    rng: random.Random,
    pool: Sequence = DEFAULT_POOL,
    p: float | None = None,
    loop_p: float = 0.15,
) -> WeightedDigraph:
    """One random digraph drawn from the given rng (a stream-friendly form)."""
    if p is None:
        p = rng.choice((0.15, 0.25, 0.4))
    arcs = []
    for u in range(n):
        for v in range(n):
            if u == v:
                if rng.random() < loop_p:
                    arcs.append((u, u, rng.choice(pool)))
            elif rng.random() < p:
                arcs.append((u, v, rng.choice(pool)))
    return build(n, arcs)


# -- block graphs -------------------------------------------------------------


class _Growth:
    """Incremental unit-weight simple graph with per-block bookkeeping."""

    def __init__(self):
        self.n = 0
        self.arcs: list[tuple[int, int, int]] = []
        self.cut: set[int] = set()
        self.home: dict[int, int] = {}  # non-cut vertex -> its block id
        self.blocks: list[list[int]] = []

    def fresh(self, k: int) -> list[int]:
        vs = list(range(self.n, self.n + k))
        self.n += k
        return vs

    def add_edge(self, u: int, v: int) -> None:
        self.arcs.append((u, v, 1))
        self.arcs.append((v, u, 1))

    def new_block(self, members: list[int], attach: int | None) -> int:
        bid = len(self.blocks)
        self.blocks.append(members)
        if attach is not None:
            self.cut.add(attach)
            self.home.pop(attach, None)
        for v in members:
            if v != attach:
                self.home[v] = bid
        return bid

    def graph(self) -> WeightedDigraph:
        return build(self.n, self.arcs)


def _block_sizes(n: int, rng, sizes, min_size: int) -> list[int]:
    if sizes is not None:
        out = [int(s) for s in sizes]
        if not out or any(s < min_size for s in out):
            raise InvalidSpec(f"block sizes must all be >= {min_size}")
        return out
    out = [rng.randint(min_size, max(min_size, 4))]
    total = out[0]
    while total < n:
        s = rng.randint(min_size, max(min_size, 4))
        out.append(s)
        total += s - 1
    return out


def _block_graph(n, rng, sizes, min_size, managed) -> WeightedDigraph:
    """Complete blocks glued at vertices.  With managed=True the growth keeps
    every non-pendant block holding >= 2 non-cut vertices and finishes by
    hanging exactly one pendant edge on each cut-vertex."""
    plan = _block_sizes(n, rng, sizes, min_size)
    g = _Growth()
    first = g.fresh(plan[0])
    for a, b in _pairs(first):
        g.add_edge(a, b)
    g.new_block(first, None)
    for s in plan[1:]:
        at = _eligible_vertex(g, rng, managed, min_noncut=3)
        members = [at] + g.fresh(s - 1)
        for a, b in _pairs(members):
            g.add_edge(a, b)
        g.new_block(members, at)
    if managed:
        for v in sorted(g.cut):
            (leaf,) = g.fresh(1)
            g.add_edge(v, leaf)
    return g.graph()


def _pairs(vs):
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            yield vs[i], vs[j]


def _all_blocks_complete(G: WeightedDigraph) -> bool:
    edges = G.underlying_edges()
    return all(
        all((min(a, b), max(a, b)) in edges for a, b in _pairs(blk))
        for blk in decompose(G).blocks
    )


def _eligible_vertex(g: _Growth, rng, managed: bool, min_noncut: int) -> int:
    """A vertex a new block may be glued to.

    Unmanaged growth allows any vertex.  Managed growth allows existing
    cut-vertices, or non-cut vertices whose home block keeps enough non-cut
    vertices after losing this one.
    """
    if not managed:
        return rng.randrange(g.n)
    noncut_per_block: dict[int, int] = {}
    for v, b in g.home.items():
        noncut_per_block[b] = noncut_per_block.get(b, 0) + 1
    options = sorted(g.cut) + sorted(
        v for v, b in g.home.items() if noncut_per_block[b] >= min_noncut
    )
    if not options:
        raise InvalidSpec("no eligible attachment vertex; sizes too small")
    return rng.choice(options)


def _biblock_graph(n, rng, sizes, pendants) -> WeightedDigraph:
    """Complete bipartite blocks K_{a,b} (a, b >= 2), glued so every block
    keeps a non-cut vertex on each side; optionally one pendant edge per
    cut-vertex afterwards."""
    if sizes is not None:
        plan = [(int(a), int(b)) for (a, b) in sizes]
        if not plan or any(a < 2 or b < 2 for (a, b) in plan):
            raise InvalidSpec("biblock sizes must be pairs with both sides >= 2")
    else:
        plan = [(rng.randint(2, 3), rng.randint(2, 3))]
        total = sum(plan[0])
        while total < n:
            a, b = rng.randint(2, 3), rng.randint(2, 3)
            plan.append((a, b))
            total += a + b - 1
    g = _Growth()
    side_of: dict[int, int] = {}  # non-cut vertex -> 0/1 within its home block

    def add_block(a_side: list[int], b_side: list[int], attach: int | None) -> None:
        for x in a_side:
            for y in b_side:
                g.add_edge(x, y)
        g.new_block(a_side + b_side, attach)
        for v in a_side:
            side_of[v] = 0
        for v in b_side:
            side_of[v] = 1
        if attach is not None:
            side_of.pop(attach, None)

    a0, b0 = plan[0]
    add_block(g.fresh(a0), g.fresh(b0), None)
    for (a, b) in plan[1:]:
        at = _biblock_eligible(g, rng, side_of)
        if rng.random() < 0.5:
            add_block([at] + g.fresh(a - 1), g.fresh(b), at)
        else:
            add_block(g.fresh(a), [at] + g.fresh(b - 1), at)
    if pendants:
        for v in sorted(g.cut):
            (leaf,) = g.fresh(1)
            g.add_edge(v, leaf)
    return g.graph()


def _biblock_eligible(g: _Growth, rng, side_of) -> int:
    noncut_side: dict[tuple[int, int], int] = {}
    for v, b in g.home.items():
        key = (b, side_of[v])
        noncut_side[key] = noncut_side.get(key, 0) + 1
    options = sorted(g.cut) + sorted(
        v for v, b in g.home.items() if noncut_side[(b, side_of[v])] >= 2
    )
    if not options:
        raise InvalidSpec("no eligible biblock attachment vertex")
    return rng.choice(options)


# -- r2 extension -------------------------------------------------------------


def extend_to_r2(
    G: WeightedDigraph,
    seed: int = 0,
    weight_pool: Sequence = DEFAULT_POOL,
) -> WeightedDigraph:
    """Attach a loop-free bi-arc leaf at every cut-vertex lacking an
    r2-block.  Cut-vertices already served are left alone, so the operation
    is idempotent; a digraph without cut-vertices comes back unchanged."""
    pool = tuple(Fraction(w) for w in weight_pool)
    if not pool or any(w == 0 for w in pool):
        raise InvalidSpec("weight pool must be nonempty and zero-free")
    d = decompose(G)
    rng = random.Random(f"extend:{seed}")
    out = G
    for v in sorted(d.cut_vertices):
        if any(is_r2_block(G, d, i) for i in d.membership[v]):
            continue
        out = out.attach_edge(
            v, EdgeKind.NC_TILDE_EDGE, (rng.choice(pool), rng.choice(pool))
        )
    if not is_r2_digraph(out):
        raise InternalMismatch("extension failed to produce an r2-digraph")
    return out
