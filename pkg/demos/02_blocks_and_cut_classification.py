"""Block decomposition and the three kinds of cut-vertex.

Removing a cut-vertex v changes the rank by exactly 0, 1, or 2 relative to
r(G - side) + r(rest), and which of the three happens is decided by four
row/column-space membership tests on the bordered adjacency matrix.
`classify_cut` runs those tests and double-checks them against the literal
rank difference, so a wrong answer cannot escape silently.
"""

from digrank import (
    build,
    classify_cut,
    decompose,
    make_split,
    side_components,
)

# Two triangles and a pendant path sharing vertex 0.
edges = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5), (5, 6)]
arcs = []
for u, v in edges:
    arcs.append((u, v, 1))
    arcs.append((v, u, 1))
G = build(7, arcs + [(6, 6, 1)])  # loop at the far end of the path

d = decompose(G)
print(f"{d.block_count} blocks:")
for i, blk in enumerate(d.blocks):
    marker = " (pendant)" if d.pendant[i] else ""
    print(f"  block {i}: vertices {blk}{marker}")
print(f"cut vertices: {sorted(d.cut_vertices)}")
print()

for v in sorted(d.cut_vertices):
    for side in side_components(G, v):
        split = make_split(G, v, frozenset(side) | {v})
        cls = classify_cut(G, split)
        print(
            f"cut {v}, side {sorted(side)}: case {cls.case.label} "
            f"(rank delta {cls.delta}, memberships {cls.memberships})"
        )
