"""Folded core graphs for finitely generated subgroups.

Membership is reading a loop at the base state.  The subgroup below is
the fixed subgroup of the rank-4 family members (k >= 1): a, b a b^-1
and c a c^-1.
"""

from fgdyn import (
    build_core_graph,
    contains,
    core_graph_dot,
    coset_power_membership,
    enumerate_elements,
    parse_word,
    standard_alphabet,
)

F4 = standard_alphabet(4)
gens = [parse_word(F4, t) for t in ("a", "b a b^-1", "c a c^-1")]
graph = build_core_graph(F4, gens)
print(f"core graph: {graph.n_states} states")
print(core_graph_dot(graph))

for text in ("b a^3 b^-1 a^-1", "c a^-2 c^-1", "d", "b a b^-1 c"):
    word = parse_word(F4, text)
    print(f"  {text:22s} member: {contains(graph, word)}")

short = enumerate_elements(graph, 3)
print(f"\nelements of length <= 3: {len(short)}")
print(" ", ", ".join(str(w) or "1" for w in short[:10]), "...")

# does some b a^j b^-1 land in the subgroup after appending a^-1?
k = coset_power_membership(
    graph, parse_word(F4, "b"), parse_word(F4, "a"), parse_word(F4, "b^-1 a^-1")
)
print(f"\nsmallest k with [b a^k b^-1 a^-1] in the subgroup: {k}")
