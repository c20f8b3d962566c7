"""Growth classes and abelianized invariants.

Orbit lengths under the rank-4 member grow quadratically; the stock
hyperbolic rank-2 automorphisms grow exponentially at the rate of their
matrix eigenvalue.  Abelianization separates distinct parameters and
powers exactly.
"""

import math

from fgdyn import (
    abelianize,
    dilatation_info,
    growth_classify,
    make_phi_k,
    matrix_power,
    parse_word,
    standard_alphabet,
    stock_theta,
    stock_theta_names,
)

F2 = standard_alphabet(2)

phi = make_phi_k(1)
d = parse_word(phi.alphabet, "d")
cls = growth_classify(phi, d, 40)
print(f"|phi^p(d)| growth: {cls.kind}, degree ~ {cls.degree}")

for name in stock_theta_names():
    theta = stock_theta(name)
    info = dilatation_info(abelianize(theta.forward))
    exact = math.log(info.value())
    got = growth_classify(theta, parse_word(F2, "a"), 20)
    print(f"{name}: {got.kind}, fitted rate {got.rate:.4f} vs exact {exact:.4f} "
          f"(eigenvalue field: sqrt {info.squarefree_part})")

print("\nmatrix powers of the abelianized family member (k=2):")
m = abelianize(make_phi_k(2).forward)
for p in (1, 2, 5):
    mp = matrix_power(m, p)
    print(f"  p={p}: top row {list(mp.entries[0])}  "
          f"(corner = (k+1) p (p-1) / 2 = {3 * p * (p - 1) // 2})")
