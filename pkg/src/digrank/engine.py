"""Rank formulas, decomposition rules, and the recursive rank engine.

The engine computes the adjacency rank of a weighted digraph by structural
decomposition, producing a certificate tree that records which rule fired
where and how much rank it contributed.  Every formula in here is also
available as a standalone operation with explicit preconditions
(PreconditionViolated when the hypotheses do not hold), so tests can pit
each one against the dense-elimination oracle independently.

Rule vocabulary (RuleTag):

- CASE_I_PEEL: split off a pendant side H at a cut-vertex v whose border
  adds 2; r(G) = r(H-v) + r(G-H) + 2.
- R0_PEEL: border adds 0 and v's outside neighbourhood cooperates;
  r(G) = r(H-v) + r(G-(H-v)).
- CASE_III_PEEL: border adds 1 and exactly one of v's inside membership
  tests holds; one extra membership test against the outside decides a
  0/1 correction.
- CASE_III_LT: border adds 1 with both inside memberships; v's loop is
  replaced by its Schur-style residue and the outside graph recursed.
- R2_DIGRAPH: every cut-vertex has an incident block whose rank drops by
  exactly 2 when the cut-vertex is removed; r(G) = sum r(breve B_i) + 2m.
- R0_DIGRAPH: at most one block fails the all-cuts rank-drop-0 test and
  no cut-vertex carries a loop; r(G) = sum r(B_i).
- TREE_MATCHING / R2_TREE: closed forms for tree-shaped components.
- BLOCK_GRAPH_2K / BIBLOCK_GRAPH_2K: family formulas (rank = n, rank = 2k);
  used by the dedicated family operations, never by the recursion, so that
  block graphs still exercise the peeling rules.
- MDT_FORMULA / GEN_R2: per-block and attachment variants of the r2 sum.
- DIRECT_RANK: dense exact elimination, the fallback and the leaf rule.
- COMPONENT_SUM: plumbing node summing over connected components.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .blocks import BlockDecomposition, breve, block_subdigraph, decompose
from .classify import (
    Classification,
    CutSplit,
    CutVertexCase,
    classify_cut,
    make_split,
)
from .digraph import EdgeKind, WeightedDigraph, build
from .errors import (
    InconsistentClassification,
    InternalMismatch,
    PreconditionViolated,
    VertexOutOfRange,
)
from .linalg import dot, in_column_space, in_row_space, rank
from .trees import TreeKind, classify_tree, count_loop_attachments, max_matching


def oracle_rank(G: WeightedDigraph) -> int:
    """Rank of the adjacency matrix by dense exact elimination."""
    return rank(G.adjacency_matrix()).rank


class RuleTag(Enum):
    CASE_I_PEEL = "CaseIPeel"
    R2_DIGRAPH = "R2Digraph"
    MDT_FORMULA = "MdtFormula"
    GEN_R2 = "GenR2"
    R0_PEEL = "R0Peel"
    R0_DIGRAPH = "R0Digraph"
    CASE_III_PEEL = "CaseIIIPeel"
    CASE_III_LT = "CaseIIILt"
    TREE_MATCHING = "TreeMatching"
    R2_TREE = "R2Tree"
    BLOCK_GRAPH_2K = "BlockGraph2k"
    BIBLOCK_GRAPH_2K = "BiblockGraph2k"
    DIRECT_RANK = "DirectRank"
    COMPONENT_SUM = "ComponentSum"


@dataclass(frozen=True)
class CertNode:
    """One rule application.  Vertex ids are the original graph's ids."""

    rule: RuleTag
    contributed: int
    children: tuple["CertNode", ...] = ()
    block_index: int | None = None
    block_vertices: tuple[int, ...] | None = None
    cut_vertex: int | None = None
    note: str = ""

    @property
    def total(self) -> int:
        return self.contributed + sum(c.total for c in self.children)

    def walk(self) -> Iterator["CertNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


@dataclass(frozen=True)
class RankCertificate:
    rank: int
    root: CertNode

    def rules_used(self) -> set[RuleTag]:
        return {node.rule for node in self.root.walk()}

    def count_rule(self, tag: RuleTag) -> int:
        return sum(1 for node in self.root.walk() if node.rule is tag)


def render_certificate(cert: RankCertificate) -> str:
    lines: list[str] = []

    def emit(node: CertNode, depth: int) -> None:
        parts = [node.rule.value]
        if node.block_index is not None:
            parts.append(f"block={node.block_index}")
        if node.cut_vertex is not None:
            parts.append(f"v={node.cut_vertex}")
        parts.append(f"contributes={node.contributed}")
        if node.block_vertices is not None:
            parts.append("[" + ",".join(str(v) for v in node.block_vertices) + "]")
        if node.note:
            parts.append(f"({node.note})")
        lines.append("  " * depth + " ".join(parts))
        for c in node.children:
            emit(c, depth + 1)

    emit(cert.root, 0)
    return "\n".join(lines) + "\n"


# -- r2 / r0 block predicates ------------------------------------------------


def is_r2_block(G: WeightedDigraph, d: BlockDecomposition, i: int) -> bool:
    """Block i has exactly one cut-vertex v and loses rank 2 when v goes."""
    cuts = d.cuts_in_block(i)
    if len(cuts) != 1:
        return False
    v = cuts[0]
    B = block_subdigraph(G, d, i)
    Bv = G.induced_subdigraph(u for u in d.blocks[i] if u != v)
    return oracle_rank(B) == oracle_rank(Bv) + 2


def is_r2_digraph(G: WeightedDigraph, d: BlockDecomposition | None = None) -> bool:
    """Every cut-vertex has at least one incident r2-block (vacuous if none)."""
    if d is None:
        d = decompose(G)
    r2 = [is_r2_block(G, d, i) for i in range(d.block_count)]
    return all(
        any(r2[i] for i in d.membership[v]) for v in d.cut_vertices
    )

def is_r0_block(G: WeightedDigraph, d: BlockDecomposition, i: int) -> bool:
    """Removing any one of G's cut-vertices from block i keeps its rank."""
    B = block_subdigraph(G, d, i)
    rb = oracle_rank(B)
    for v in d.cuts_in_block(i):
        Bv = G.induced_subdigraph(u for u in d.blocks[i] if u != v)
        if oracle_rank(Bv) != rb:
            return False
    return True


def is_r0_digraph(G: WeightedDigraph, d: BlockDecomposition | None = None) -> bool:
    """All blocks, or all but one, are r0-blocks."""
    if d is None:
        d = decompose(G)
    bad = sum(1 for i in range(d.block_count) if not is_r0_block(G, d, i))
    return bad <= 1


# -- sum formulas ------------------------------------------------------------


def rank_r2_digraph(G: WeightedDigraph, d: BlockDecomposition | None = None) -> int:
    """r(G) = sum of r(breve B_i) over all blocks + 2 * (number of cut-vertices)."""
    if d is None:
        d = decompose(G)
    if not G.is_connected():
        raise PreconditionViolated("rank_r2_digraph expects a connected digraph")
    if not is_r2_digraph(G, d):
        raise PreconditionViolated("not an r2-digraph: some cut-vertex has no r2-block")
    total = 2 * len(d.cut_vertices)
    for i in range(d.block_count):
        total += oracle_rank(breve(G, d, i))
    return total


def rank_mdt(G: WeightedDigraph, d: BlockDecomposition | None = None) -> int:
    """Per-block variant: needs every breve nonempty and every block to
    satisfy r(B_i) = r(breve B_i) + 2 * (cut-vertices in B_i)."""
    if d is None:
        d = decompose(G)
    if not G.is_connected():
        raise PreconditionViolated("rank_mdt expects a connected digraph")
    total = 2 * len(d.cut_vertices)
    for i in range(d.block_count):
        mi = len(d.cuts_in_block(i))
        br = breve(G, d, i)
        if br.n == 0:
            raise PreconditionViolated(f"block {i} is all cut-vertices")
        rb = oracle_rank(block_subdigraph(G, d, i))
        rbr = oracle_rank(br)
        if rb != rbr + 2 * mi:
            raise PreconditionViolated(
                f"block {i} violates the per-block drop: {rb} != {rbr} + 2*{mi}"
            )
        total += rbr
    return total


@dataclass(frozen=True)
class DigraphAttachment:
    """A digraph W glued to cut-vertex `at` by a two-weight bi-arc bridge.

    Arcs added: at -> w_vertex with weight `into_w`, w_vertex -> at with
    weight `out_of_w` (no loop on w_vertex's side of the bridge).
    """

    W: WeightedDigraph
    w_vertex: int
    at: int
    into_w: Fraction
    out_of_w: Fraction


def build_genr2(
    G: WeightedDigraph, attachments: Sequence[DigraphAttachment]
) -> WeightedDigraph:
    """The glued digraph; W vertex ids are shifted past the previous total."""
    arcs = [(u, v, w) for (u, v, w) in G.arcs()]
    n = G.n
    for att in attachments:
        if not (0 <= att.at < G.n):
            raise VertexOutOfRange(f"attachment point {att.at} outside base digraph")
        if not (0 <= att.w_vertex < att.W.n):
            raise VertexOutOfRange(f"w_vertex {att.w_vertex} outside its digraph")
        off = n
        for (u, v, w) in att.W.arcs():
            arcs.append((u + off, v + off, w))
        arcs.append((att.at, att.w_vertex + off, Fraction(att.into_w)))
        arcs.append((att.w_vertex + off, att.at, Fraction(att.out_of_w)))
        n += att.W.n
    return build(n, arcs)


def rank_genr2(
    G: WeightedDigraph, attachments: Sequence[DigraphAttachment]
) -> int:
    """Rank of the glued digraph: sum r(breve B_i) + sum r(W_j) + 2m.

    Preconditions: G is a connected r2-digraph and every attachment lands
    on one of its cut-vertices.
    """
    d = decompose(G)
    if not G.is_connected():
        raise PreconditionViolated("rank_genr2 expects a connected base digraph")
    if not is_r2_digraph(G, d):
        raise PreconditionViolated("base digraph is not an r2-digraph")
    for att in attachments:
        if att.at not in d.cut_vertices:
            raise PreconditionViolated(
                f"attachment point {att.at} is not a cut-vertex of the base"
            )
        if att.W.n == 0:
            raise PreconditionViolated("attached digraph is empty")
    total = 2 * len(d.cut_vertices)
    for i in range(d.block_count):
        total += oracle_rank(breve(G, d, i))
    for att in attachments:
        total += oracle_rank(att.W)
    return total


@dataclass(frozen=True)
class EdgeAddition:
    """One single-vertex attachment for the rank-delta count."""

    at: int
    kind: EdgeKind
    weights: tuple
    toward_new: bool = True


def apply_additions(
    G: WeightedDigraph, additions: Sequence[EdgeAddition]
) -> WeightedDigraph:
    out = G
    for add in additions:
        out = out.attach_edge(add.at, add.kind, add.weights, add.toward_new)
    return out


def rank_delta_cr2(G: WeightedDigraph, additions: Sequence[EdgeAddition]) -> int:
    """Rank gained by attaching new vertices at cut-vertices of an r2-digraph.

    Loop-carrying attachments (NC_EDGE, NC_ARC) contribute 1 apiece;
    the loop-free shapes contribute 0.
    """
    d = decompose(G)
    if not G.is_connected():
        raise PreconditionViolated("rank_delta_cr2 expects a connected digraph")
    if not is_r2_digraph(G, d):
        raise PreconditionViolated("base digraph is not an r2-digraph")
    for add in additions:
        if add.at not in d.cut_vertices:
            raise PreconditionViolated(
                f"attachment point {add.at} is not a cut-vertex of the base"
            )
    return sum(1 for a in additions if a.kind in (EdgeKind.NC_EDGE, EdgeKind.NC_ARC))


def loop_invariance_check(
    G: WeightedDigraph,
    trials: int = 10,
    seed: int = 0,
    pool: Sequence | None = None,
) -> bool:
    """Rewrite the loops at cut-vertices of an r2-digraph at random; the
    rank must never move.  Returns False on the first counterexample."""
    d = decompose(G)
    if not is_r2_digraph(G, d):
        raise PreconditionViolated("loop invariance only claimed for r2-digraphs")
    weights = [Fraction(x) for x in (pool or (0, 1, -1, 2, Fraction(1, 2), 3))]
    base = oracle_rank(G)
    rng = random.Random(seed)
    for _ in range(trials):
        H = G
        for v in sorted(d.cut_vertices):
            H = H.with_loop(v, rng.choice(weights))
        if oracle_rank(H) != base:
            return False
    return True


def check_lemma_2rin(
    G: WeightedDigraph, vertices: Sequence[int], all_subsets: bool = False
) -> bool:
    """Does r(G) = r(G - vertices) + 2 * len(vertices)?

    With all_subsets=True, also evaluates the same equation for every
    subset S of `vertices` and raises InternalMismatch if the full-set
    answer and the all-subsets answer ever disagree (they are equivalent).
    """
    vs = sorted(set(vertices))
    if len(vs) != len(vertices):
        raise PreconditionViolated("vertices must be distinct")
    rg = oracle_rank(G)
    main = rg == oracle_rank(G.delete_vertices(vs)) + 2 * len(vs)
    if all_subsets:
        every = True
        for k in range(len(vs) + 1):
            for S in combinations(vs, k):
                if rg != oracle_rank(G.delete_vertices(S)) + 2 * len(S):
                    every = False
                    break
            if not every:
                break
        if every != main:
            raise InternalMismatch(
                f"full-set removal says {main} but all-subsets says {every} "
                f"for vertices {vs}"
            )
    return main


def rank_r0_digraph(G: WeightedDigraph, d: BlockDecomposition | None = None) -> int:
    """r(G) = sum of block ranks, for r0-digraphs without cut-vertex loops."""
    if d is None:
        d = decompose(G)
    if not G.is_connected():
        raise PreconditionViolated("rank_r0_digraph expects a connected digraph")
    if not is_r0_digraph(G, d):
        raise PreconditionViolated("more than one block fails the r0-block test")
    looped = [v for v in sorted(d.cut_vertices) if G.has_loop(v)]
    if looped:
        raise PreconditionViolated(f"cut-vertices {looped} carry loops")
    return sum(
        oracle_rank(block_subdigraph(G, d, i)) for i in range(d.block_count)
    )


# -- single-split peel formulas ----------------------------------------------


def _split_pieces(G: WeightedDigraph, split: CutSplit):
    v = split.v
    inner = sorted(split.side - {v})
    rest = sorted(u for u in range(G.n) if u not in split.side)
    return v, inner, rest


def rank_case1_peel(G: WeightedDigraph, split: CutSplit) -> int:
    """r(G) = r(H - v) + r(G - H) + 2 when the border at v adds 2."""
    split = make_split(G, split.v, split.side)
    cls = classify_cut(G, split)
    if cls.case is not CutVertexCase.RANK_PLUS_2:
        raise PreconditionViolated(f"split is case {cls.label}, not I")
    v, inner, rest = _split_pieces(G, split)
    return oracle_rank(G.induced_subdigraph(inner)) + oracle_rank(
        G.induced_subdigraph(rest)
    ) + 2


def rank_case2_peel(G: WeightedDigraph, split: CutSplit) -> int:
    """r(G) = r(H - v) + r(G - (H - v)) when the border adds 0, provided
    v's loop is absent or its outside neighbourhood misses a membership."""
    split = make_split(G, split.v, split.side)
    cls = classify_cut(G, split)
    if cls.case is not CutVertexCase.RANK_PLUS_0:
        raise PreconditionViolated(f"split is case {cls.label}, not II")
    v, inner, rest = _split_pieces(G, split)
    if not _case2_outside_ok(G, v, rest):
        raise PreconditionViolated(
            "loop present and both outside memberships hold; formula not claimed"
        )
    return oracle_rank(G.induced_subdigraph(inner)) + oracle_rank(
        G.induced_subdigraph(rest + [v])
    )


def _case2_outside_ok(G: WeightedDigraph, v: int, rest: list[int]) -> bool:
    if G.loop_weight(v) == 0:
        return True
    A_R = G.induced_subdigraph(rest).adjacency_matrix()
    z_in, _ = in_column_space(G.in_vector(v, rest), A_R)
    w_in, _ = in_row_space(G.out_vector(v, rest), A_R)
    return not (z_in and w_in)


def rank_case3_peel(G: WeightedDigraph, split: CutSplit) -> int:
    """Case III formulas: one inside membership gives a 0/1-corrected peel,
    both inside memberships give the loop-residue reduction."""
    split = make_split(G, split.v, split.side)
    cls = classify_cut(G, split)
    if cls.case is not CutVertexCase.RANK_PLUS_1:
        raise PreconditionViolated(f"split is case {cls.label}, not III")
    v, inner, rest = _split_pieces(G, split)
    m1, m2 = cls.memberships[0], cls.memberships[1]
    r_inner = oracle_rank(G.induced_subdigraph(inner))
    if m1 and m2:
        residual, _ = _loop_residue(G, v, inner)
        outside = G.induced_subdigraph(rest + [v])
        v_local = sorted(rest + [v]).index(v)
        return r_inner + oracle_rank(outside.with_loop(v_local, residual))
    A_R = G.induced_subdigraph(rest).adjacency_matrix()
    if m2:  # in-vector lies inside; the out-row stands alone
        extra, _ = in_column_space(G.in_vector(v, rest), A_R)
    elif m1:  # out-vector lies inside; the in-column stands alone
        extra, _ = in_row_space(G.out_vector(v, rest), A_R)
    else:  # pragma: no cover - would be case I
        raise InconsistentClassification("case III with neither membership")
    return r_inner + 1 + rank(A_R).rank + (0 if extra else 1)


def _loop_residue(G: WeightedDigraph, v: int, inner: list[int]) -> tuple[Fraction, object]:
    """alpha_hat = alpha - out_H . d where B_H d = in_H (both memberships hold)."""
    B = G.induced_subdigraph(inner).adjacency_matrix()
    ok, d = in_column_space(G.in_vector(v, inner), B)
    if not ok:
        raise InconsistentClassification("loop residue needs the in-column inside")
    residual = G.loop_weight(v) - dot(G.out_vector(v, inner), d)
    return residual, d


# -- simple-graph families ----------------------------------------------------


def _is_unit_simple(G: WeightedDigraph) -> bool:
    for (u, v, w) in G.arcs():
        if u == v or w != 1 or not G.has_arc(v, u):
            return False
    return True


def _is_complete(G: WeightedDigraph, blk: Sequence[int]) -> bool:
    edges = G.underlying_edges()
    return all(
        (min(a, b), max(a, b)) in edges for a, b in combinations(blk, 2)
    )


def _bipartition_of_block(
    G: WeightedDigraph, blk: Sequence[int]
) -> tuple[set[int], set[int]] | None:
    """(A, B) of a complete bipartite block, or None.  K_1 gives ({v}, {})."""
    members = set(blk)
    edges = {e for e in G.underlying_edges() if e[0] in members and e[1] in members}
    adj: dict[int, set[int]] = {v: set() for v in blk}
    for (a, b) in edges:
        adj[a].add(b)
        adj[b].add(a)
    colour: dict[int, int] = {}
    start = min(blk)
    colour[start] = 0
    queue = [start]
    while queue:
        x = queue.pop()
        for y in adj[x]:
            if y not in colour:
                colour[y] = 1 - colour[x]
                queue.append(y)
            elif colour[y] == colour[x]:
                return None
    if len(colour) != len(members):  # disconnected block: only K_1 qualifies
        return None
    A = {v for v in blk if colour[v] == 0}
    B = {v for v in blk if colour[v] == 1}
    if len(edges) != len(A) * len(B):
        return None
    return A, B


def is_r2_block_graph(G: WeightedDigraph) -> bool:
    """Connected unit block graph: complete blocks, exactly one pendant
    edge at each cut-vertex, every non-pendant block with >= 2 non-cut
    vertices.  These are exactly the nonsingular ones (rank = n)."""
    if G.n == 0 or not _is_unit_simple(G) or not G.is_connected():
        return False
    d = decompose(G)
    if not all(_is_complete(G, blk) for blk in d.blocks):
        return False
    pend = _pendant_edge_blocks(d)
    for v in d.cut_vertices:
        if sum(1 for i in pend if v in d.blocks[i]) != 1:
            return False
    for i, blk in enumerate(d.blocks):
        if i in pend:
            continue
        if sum(1 for v in blk if v not in d.cut_vertices) < 2:
            return False
    return True


def _pendant_edge_blocks(d: BlockDecomposition) -> set[int]:
    """Blocks that are a single edge hanging off exactly one cut-vertex."""
    out = set()
    for i, blk in enumerate(d.blocks):
        if len(blk) == 2:
            noncut = [v for v in blk if v not in d.cut_vertices]
            if len(noncut) == 1:
                out.add(i)
    return out


def rank_r2_block_graph(G: WeightedDigraph) -> RankCertificate:
    if not is_r2_block_graph(G):
        raise PreconditionViolated("not a qualifying block graph")
    node = CertNode(RuleTag.BLOCK_GRAPH_2K, G.n, note="nonsingular")
    return RankCertificate(G.n, node)


def _biblock_shape(G: WeightedDigraph) -> tuple[BlockDecomposition, list] | None:
    if G.n == 0 or not _is_unit_simple(G) or not G.is_connected():
        return None
    d = decompose(G)
    parts = []
    for blk in d.blocks:
        p = _bipartition_of_block(G, blk)
        if p is None:
            return None
        parts.append(p)
    return d, parts


def is_r2_biblock_graph(G: WeightedDigraph) -> bool:
    """Connected unit graph, complete bipartite blocks, exactly one pendant
    edge per cut-vertex, every non-pendant block keeping a non-cut vertex
    in each partition side.  Rank = 2 * (number of blocks)."""
    shape = _biblock_shape(G)
    if shape is None:
        return False
    d, parts = shape
    pend = _pendant_edge_blocks(d)
    for v in d.cut_vertices:
        if sum(1 for i in pend if v in d.blocks[i]) != 1:
            return False
    for i, (A, B) in enumerate(parts):
        if i in pend:
            continue
        if not (A - d.cut_vertices) or not (B - d.cut_vertices):
            return False
    return True


def rank_r2_biblock_graph(G: WeightedDigraph) -> RankCertificate:
    if not is_r2_biblock_graph(G):
        raise PreconditionViolated("not a qualifying biblock graph")
    k = decompose(G).block_count
    node = CertNode(RuleTag.BIBLOCK_GRAPH_2K, 2 * k, note=f"k={k}")
    return RankCertificate(2 * k, node)


def is_r0_biblock_graph(G: WeightedDigraph) -> bool:
    """Every block complete bipartite with a non-cut vertex in each side."""
    shape = _biblock_shape(G)
    if shape is None:
        return False
    d, parts = shape
    for (A, B) in parts:
        if not (A - d.cut_vertices) or not (B - d.cut_vertices):
            return False
    return True


def rank_r0_biblock_graph(G: WeightedDigraph) -> RankCertificate:
    if not is_r0_biblock_graph(G):
        raise PreconditionViolated("not a qualifying biblock graph")
    k = decompose(G).block_count
    node = CertNode(RuleTag.BIBLOCK_GRAPH_2K, 2 * k, note=f"k={k} (r0 route)")
    return RankCertificate(2 * k, node)


# -- the recursive engine ------------------------------------------------------


def rank_recursive(G: WeightedDigraph, oracle_check: bool = False) -> RankCertificate:
    """Decompose-and-recurse rank with a certificate.

    Component split first; per component: closed tree forms, then the
    whole-graph sum rules, then pendant-block peels (preferring case I,
    then case II, then case III, then lowest block index), and dense
    elimination when nothing applies.  With oracle_check=True the final
    value is compared against the dense oracle and InternalMismatch is
    raised on disagreement.
    """
    root = _node(G, tuple(range(G.n)))
    cert = RankCertificate(root.total, root)
    if oracle_check:
        expect = oracle_rank(G)
        if cert.rank != expect:
            raise InternalMismatch(
                f"engine produced {cert.rank} but dense elimination says {expect}"
            )
    return cert


def _node(G: WeightedDigraph, labels: tuple[int, ...]) -> CertNode:
    if G.n == 0:
        return CertNode(RuleTag.DIRECT_RANK, 0, note="empty")
    comps = G.connected_components()
    if len(comps) > 1:
        children = []
        for comp in comps:
            sub, keep = G.induced_with_labels(comp)
            children.append(_node(sub, tuple(labels[i] for i in keep)))
        return CertNode(RuleTag.COMPONENT_SUM, 0, tuple(children))
    return _component_node(G, labels)


def _component_node(G: WeightedDigraph, labels: tuple[int, ...]) -> CertNode:
    kind = classify_tree(G)
    if kind is TreeKind.LOOPLESS_BI_ARC:
        q = max_matching(G).size
        return CertNode(RuleTag.TREE_MATCHING, 2 * q, note=f"q={q}")
    if kind is TreeKind.R2_TREE:
        q = max_matching(G).size
        s = count_loop_attachments(G)
        return CertNode(RuleTag.R2_TREE, 2 * q + s, note=f"q={q} s={s}")

    d = decompose(G)
    k = d.block_count
    if k <= 1:
        return _direct_leaf(G)

    if is_r2_digraph(G, d):
        m = len(d.cut_vertices)
        children = []
        for i in range(d.block_count):
            keep = [v for v in d.blocks[i] if v not in d.cut_vertices]
            sub, kept = G.induced_with_labels(keep)
            child = _node(sub, tuple(labels[i2] for i2 in kept))
            children.append(
                replace(
                    child,
                    block_index=i,
                    block_vertices=tuple(labels[v] for v in d.blocks[i]),
                )
            )
        return CertNode(RuleTag.R2_DIGRAPH, 2 * m, tuple(children), note=f"m={m}")

    if is_r0_digraph(G, d) and not any(G.has_loop(v) for v in d.cut_vertices):
        children = []
        for i in range(d.block_count):
            sub, kept = G.induced_with_labels(d.blocks[i])
            child = _node(sub, tuple(labels[i2] for i2 in kept))
            children.append(
                replace(
                    child,
                    block_index=i,
                    block_vertices=tuple(labels[v] for v in d.blocks[i]),
                )
            )
        return CertNode(RuleTag.R0_DIGRAPH, 0, tuple(children))

    choice = _pick_peel(G, d)
    if choice is None:
        return _direct_leaf(G)
    return _apply_peel(G, labels, d, *choice)


def _direct_leaf(G: WeightedDigraph) -> CertNode:
    return CertNode(RuleTag.DIRECT_RANK, oracle_rank(G), note=f"n={G.n}")


_CASE_PRIORITY = {
    CutVertexCase.RANK_PLUS_2: 0,
    CutVertexCase.RANK_PLUS_0: 1,
    CutVertexCase.RANK_PLUS_1: 2,
}


def _pick_peel(G: WeightedDigraph, d: BlockDecomposition):
    """Lowest (case priority, block index) applicable pendant-block peel."""
    best = None
    for i in range(d.block_count):
        if not d.pendant[i]:
            continue
        cuts = d.cuts_in_block(i)
        if len(cuts) != 1:
            continue
        v = cuts[0]
        split = make_split(G, v, d.blocks[i])
        cls = classify_cut(G, split)
        if cls.case is CutVertexCase.RANK_PLUS_0:
            rest = sorted(u for u in range(G.n) if u not in split.side)
            if not _case2_outside_ok(G, v, rest):
                continue
        key = (_CASE_PRIORITY[cls.case], i)
        if best is None or key < best[0]:
            best = (key, i, v, split, cls)
            if key[0] == 0 and i == 0:
                break
    if best is None:
        return None
    return best[1], best[2], best[3], best[4]


def _apply_peel(
    G: WeightedDigraph,
    labels: tuple[int, ...],
    d: BlockDecomposition,
    i: int,
    v: int,
    split: CutSplit,
    cls: Classification,
) -> CertNode:
    inner = sorted(split.side - {v})
    rest = sorted(u for u in range(G.n) if u not in split.side)
    blk_orig = tuple(labels[u] for u in d.blocks[i])

    def sub(vertices: Iterable[int]) -> tuple[WeightedDigraph, tuple[int, ...]]:
        g, kept = G.induced_with_labels(vertices)
        return g, tuple(labels[u] for u in kept)

    inner_g, inner_lab = sub(inner)
    inner_node = _node(inner_g, inner_lab)

    if cls.case is CutVertexCase.RANK_PLUS_2:
        rest_g, rest_lab = sub(rest)
        return CertNode(
            RuleTag.CASE_I_PEEL,
            2,
            (inner_node, _node(rest_g, rest_lab)),
            block_index=i,
            block_vertices=blk_orig,
            cut_vertex=labels[v],
        )

    if cls.case is CutVertexCase.RANK_PLUS_0:
        keep_g, keep_lab = sub(rest + [v])
        return CertNode(
            RuleTag.R0_PEEL,
            0,
            (inner_node, _node(keep_g, keep_lab)),
            block_index=i,
            block_vertices=blk_orig,
            cut_vertex=labels[v],
        )

    # case III
    m1, m2 = cls.memberships[0], cls.memberships[1]
    if m1 and m2:
        residual, _ = _loop_residue(G, v, inner)
        if residual == 0:
            raise InconsistentClassification(
                "zero loop residue inside case III with both memberships"
            )
        keep = sorted(rest + [v])
        keep_g, keep_lab = sub(keep)
        keep_g = keep_g.with_loop(keep.index(v), residual)
        return CertNode(
            RuleTag.CASE_III_LT,
            0,
            (inner_node, _node(keep_g, keep_lab)),
            block_index=i,
            block_vertices=blk_orig,
            cut_vertex=labels[v],
            note=f"loop residue {residual}",
        )

    A_R = G.induced_subdigraph(rest).adjacency_matrix()
    if m2:
        extra, _ = in_column_space(G.in_vector(v, rest), A_R)
        which = "in-column inside"
    else:
        extra, _ = in_row_space(G.out_vector(v, rest), A_R)
        which = "out-row inside"
    rest_g, rest_lab = sub(rest)
    return CertNode(
        RuleTag.CASE_III_PEEL,
        1 + (0 if extra else 1),
        (inner_node, _node(rest_g, rest_lab)),
        block_index=i,
        block_vertices=blk_orig,
        cut_vertex=labels[v],
        note=which,
    )
