"""A two-sided orbit converging to a single boundary point.

Builds the rank-4 automorphism (a -> a, b -> ba, c -> ca^2, d -> dc),
iterates the seed b d^-1 in both directions, and certifies that the two
orbits share the limit b (a^-1)^inf.
"""

import json

from fgdyn import detect_parabolic, format_word, iterate, make_phi_k, parse_word

phi = make_phi_k(1)
seed = parse_word(phi.alphabet, "b d^-1")

print("forward orbit:")
for p in range(1, 5):
    print(f"  phi^{p}(b d^-1)  = {format_word(iterate(phi, seed, p))}")

print("backward orbit:")
for p in range(1, 4):
    print(f"  phi^-{p}(b d^-1) = {format_word(iterate(phi, seed, -p))}")

report = detect_parabolic(phi, seed)
print(f"\nverdict: {report.verdict} at {report.point.text()}")
print(f"forward certified {report.forward.certified_length} letters "
      f"in {report.forward.iterations_used} iterations")
print(f"backward certified {report.backward.certified_length} letters "
      f"in {report.backward.iterations_used} iterations")

print("\nfull report:")
print(json.dumps(report.to_json(), indent=2, ensure_ascii=False))

# translating the seed by powers of the fixed element b a^-1 b^-1 stays
# inside the same parabolic orbit family
u = parse_word(phi.alphabet, "b a^-1 b^-1")
for m in (1, 3, 5):
    moved = u**m * seed
    again = detect_parabolic(phi, moved)
    print(f"seed {format_word(moved)}: {again.verdict} at {again.point.text()}")
