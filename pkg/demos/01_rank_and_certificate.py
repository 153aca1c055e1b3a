"""Compute the exact rank of a weighted digraph and read the certificate.

A digraph's rank is the rank of its adjacency matrix over the rationals,
with loops supplying the diagonal.  `rank_recursive` never does dense
elimination when it can avoid it: it splits the graph at cut-vertices and
applies closed forms per block, recording every step in a certificate tree.
"""

from fractions import Fraction

from digrank import build, oracle_rank, rank_recursive, render_certificate

# A hub vertex joining a weighted triangle, a looped pendant, and a 4-cycle.
arcs = [
    # triangle on {0, 1, 2} with mixed weights
    (0, 1, Fraction(1)), (1, 0, Fraction(2)),
    (1, 2, Fraction(1)), (2, 1, Fraction(1)),
    (2, 0, Fraction(1, 2)), (0, 2, Fraction(1)),
    # pendant edge 0 - 3, plus a loop at 3
    (0, 3, Fraction(1)), (3, 0, Fraction(1)), (3, 3, Fraction(-1)),
    # 4-cycle 0 - 4 - 5 - 6 - 0
    (0, 4, Fraction(1)), (4, 0, Fraction(1)),
    (4, 5, Fraction(1)), (5, 4, Fraction(1)),
    (5, 6, Fraction(1)), (6, 5, Fraction(1)),
    (6, 0, Fraction(1)), (0, 6, Fraction(1)),
]
G = build(7, arcs)

cert = rank_recursive(G, oracle_check=True)
print(f"rank(G) = {cert.rank}   (oracle agrees: {oracle_rank(G)})")
print()
print("How the engine got there:")
print(render_certificate(cert))

rules = sorted(tag.value for tag in cert.rules_used())
print(f"rules used: {', '.join(rules)}")
