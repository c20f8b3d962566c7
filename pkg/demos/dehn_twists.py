"""The three dynamics types of twisted conjugations on rank 2.

For the automorphism a -> a, b -> a^k b a^(n-k), the sign of k(n-k)
decides the picture: two separate flows, North-South, or a 2-cycle.
None of them carries a loop.
"""

from fgdyn import (
    build_graph,
    classify_twist,
    conjugate,
    expected_graph,
    family,
    make_sigma,
    make_twist,
    parse_word,
    standard_alphabet,
    twist_reduce,
)

F2 = standard_alphabet(2)

print("classification against built graphs (n = 1..3):")
for n in (1, 2, 3):
    for k in range(-2, n + 3):
        fam = family("twist", n=n, k=k)
        graph = build_graph(fam.pair, fam.fixed_generators, seeds=fam.default_seeds)
        case = classify_twist(n, k)
        ok = "ok" if expected_graph("twist", n=n, k=k).matches(graph) else "MISMATCH"
        loops = sum(1 for e in graph.edges if e.is_loop())
        print(f"  n={n} k={k:+d}: {case.value:18s} "
              f"{len(graph.vertices)}v/{len(graph.edges)}e loops={loops} {ok}")

# the involution a -> a^-1, b -> b^-1 swaps the parameter k with n - k
sigma = make_sigma()
print("\nconjugating by the involution swaps k and n-k:")
for n, k in ((2, 0), (3, 1)):
    assert conjugate(make_twist(n, k), sigma) == make_twist(n, n - k)
    print(f"  sigma (n={n}, k={k}) sigma^-1 == (n={n}, k={n - k})")

# bounded search for an elliptic witness: u delta^n(w) = w a^k
print("\nelliptic reduction of conjugators:")
for text in ("a^4", "b a^2 b^-1", "b"):
    u = parse_word(F2, text)
    found = twist_reduce(u, 1, search_bound=3)
    if found is None:
        print(f"  u = {text}: unresolved within bound 3")
    else:
        w, k = found
        print(f"  u = {text}: conjugate to the (1, {k}) twist via w = {w or '1'}")
