"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: plain Gauss elimination over
``fractions.Fraction``, brute-force articulation tests by vertex removal,
exhaustive matching search.  None of it shares code with ``digrank`` beyond
reading the public graph API, so agreement is meaningful evidence.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx


def naive_rank(rows) -> int:
    """Gaussian elimination rank over Fraction, no pivoting tricks.

    Plain downward row-echelon sweep; columns left of the pivot are already
    zero in the rows below, so elimination starts at the pivot column.
    """
    m = [
        [x if isinstance(x, Fraction) else Fraction(x) for x in row] for row in rows
    ]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        prow = m[row]
        for r in range(row + 1, nrows):
            crow = m[r]
            if crow[col] != 0:
                f = crow[col] / prow[col]
                for j in range(col + 1, ncols):
                    crow[j] -= f * prow[j]
                crow[col] = Fraction(0)
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def rank_of_digraph(G) -> int:
    return naive_rank(G.adjacency_matrix().to_lists())


def sympy_rank(rows) -> int:
    """Rank via sympy's Matrix.rank over exact rationals."""
    import sympy

    mat = sympy.Matrix(
        [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]
    )
    return mat.rank()


def _underlying_nx(G) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    for u, v, _ in G.arcs():
        if u != v:
            H.add_edge(u, v)
    return H


def cut_vertices_by_removal(G) -> set[int]:
    """v is a cut vertex iff deleting it splits v's own component."""
    H = _underlying_nx(G)
    cuts = set()
    for v in range(G.n):
        comp = nx.node_connected_component(H, v)
        if len(comp) < 3:
            continue
        sub = H.subgraph(comp - {v})
        if nx.number_connected_components(sub) >= 2:
            cuts.add(v)
    return cuts


def cuts_by_networkx(G) -> set[int]:
    return set(nx.articulation_points(_underlying_nx(G)))


def blocks_by_networkx(G):
    """Sorted block list matching the package convention.

    networkx only reports biconnected components of non-trivial pieces, so
    isolated vertices are added back as singleton blocks.
    """
    H = _underlying_nx(G)
    blocks = [tuple(sorted(c)) for c in nx.biconnected_components(H)]
    covered = set().union(*blocks) if blocks else set()
    for v in range(G.n):
        if v not in covered:
            blocks.append((v,))
    return sorted(blocks)


def max_matching_brute(edges) -> int:
    """Exhaustive maximum matching size; fine for small forests."""
    edges = list(edges)

    def best(i, used):
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if u in used or v in used:
            return skip
        return max(skip, 1 + best(i + 1, used | {u, v}))

    return best(0, frozenset())


def max_matching_networkx(edges) -> int:
    H = nx.Graph()
    H.add_edges_from(edges)
    return len(nx.max_weight_matching(H, maxcardinality=True))


def all_weighted_digraphs(n, weights):
    """Every weighted digraph on n vertices with arc weights drawn from
    `weights` (absence included automatically).  Exponential; keep n small."""
    positions = [(u, v) for u in range(n) for v in range(n)]
    choices = [None, *weights]
    for combo in itertools.product(choices, repeat=len(positions)):
        arcs = {
            pos: w for pos, w in zip(positions, combo) if w is not None and w != 0
        }
        yield arcs
