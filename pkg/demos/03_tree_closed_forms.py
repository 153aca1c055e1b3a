"""Closed-form ranks for tree digraphs: no elimination required.

For a loopless bi-arc tree the rank is twice the maximum matching, whatever
the arc weights are.  Loops are still tolerable in closed form when every
internal vertex keeps at least one plain (loop-free, bi-arc) leaf: the rank
of such an r2-tree is 2q + s, with q the matching number of the underlying
tree and s the number of looped leaves.
"""

import random
from fractions import Fraction

from digrank import (
    build,
    classify_tree,
    max_matching,
    oracle_rank,
    rank_r2_tree,
    rank_tree,
    tree_summary,
)

rng = random.Random(7)

# A loopless bi-arc tree on 9 vertices (a spider with three legs).
edges = [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (0, 6), (6, 7), (7, 8)]
arcs = []
for u, v in edges:
    arcs.append((u, v, Fraction(rng.randint(1, 9))))
    arcs.append((v, u, Fraction(rng.randint(1, 9))))
T = build(9, arcs)

q = max_matching(T).size
print(f"loopless tree: matching q = {q}, rank = {rank_tree(T)} = 2q")

# The rank never depends on the weights: re-randomize them a few times.
ranks = set()
for _ in range(8):
    rearcs = [(u, v, Fraction(rng.randint(1, 50), rng.randint(1, 9))) for u, v, _ in T.arcs()]
    ranks.add(oracle_rank(build(9, rearcs)))
print(f"8 reweightings hit ranks {ranks}")

# A double broom: two centres, each holding one plain leaf and one looped
# leaf.  Loops on the centres themselves are also fine.
broom_edges = [(0, 3), (0, 1), (0, 2), (3, 4), (3, 5)]
broom = []
for u, v in broom_edges:
    broom.append((u, v, Fraction(1)))
    broom.append((v, u, Fraction(rng.randint(1, 5))))
broom += [(2, 2, Fraction(3)), (5, 5, Fraction(1, 4)), (0, 0, Fraction(-2))]
B = build(6, broom)

kind, q2, s = tree_summary(B)
print(f"\ndouble broom: kind = {kind.value}, q = {q2}, s = {s}")
print(f"rank = {rank_r2_tree(B)} = 2q + s   (oracle: {oracle_rank(B)})")

# Loop the remaining plain leaf of centre 0 and the closed form is gone.
overloaded = build(6, broom + [(1, 1, Fraction(1))])
print(f"\nloop every leaf of centre 0: classify_tree -> {classify_tree(overloaded)}")
