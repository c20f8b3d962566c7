"""Sampled dynamics graphs and their loops.

A graph vertex is an isoglossy class of limit points; an edge labeled g
joins the class of the backward limit of g to the class of its forward
limit.  A loop certifies a parabolic orbit.
"""

from fgdyn import (
    build_graph,
    emit_dot,
    family,
    has_parabolic_loop,
    inner,
    parse_word,
    standard_alphabet,
)

F2 = standard_alphabet(2)

# conjugation by a single generator: everything flows from a^-inf to a^inf
pair = inner(parse_word(F2, "a"))
graph = build_graph(pair, [parse_word(F2, "a")], seeds=[parse_word(F2, "b"), parse_word(F2, "b^-1")])
print("conjugation by a:")
print(emit_dot(graph))

# the rank-4 family member with a parabolic orbit: three components,
# one loop
fam = family("phi_k", k=1)
graph = build_graph(fam.pair, fam.fixed_generators)
print(f"rank-4 member, k=1: {len(graph.vertices)} vertices, "
      f"{len(graph.edges)} edges, {graph.n_components()} components")
loop = has_parabolic_loop(graph)
if loop is not None:
    vertex, labels = loop
    print(f"loop at {vertex.text()} labeled {', '.join(str(w) for w in labels)}")
print()
print(emit_dot(graph))
