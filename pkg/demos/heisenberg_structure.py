#!/usr/bin/env python3
# The three-generator presentation: exchange relations, trace
# orthonormality of monomials, and the canonical derivations.

import cmath
import itertools
import math

from ncdiff import commutator, heisenberg_derivations, heisenberg_spec, inner, tau
from ncdiff.expr import format_element
from ncdiff.qlattice import QElement

mu, nu, c = 0.11, 0.07, 1.0
spec = heisenberg_spec(mu, nu, hbar=1.0, c=c)
U = QElement.generator(spec, 1)
V = QElement.generator(spec, 2)
W = QElement.generator(spec, 3)

print("U V - V U norm:", commutator(U, V).norm())
uw = U * W
wu = W * U
print("U W = e^{-4 pi i mu} W U:",
      abs(uw.terms[(1, 0, 1)] - cmath.exp(-4j * math.pi * mu)
          * wu.terms[(1, 0, 1)]) < 1e-15)

x = QElement.monomial(spec, (2, 1, 0))
print("\n[W, U^2 V] =", format_element(commutator(W, x)))
print("expected factor e^{4 pi i (2 mu + nu)} - 1 =",
      cmath.exp(4j * math.pi * (2 * mu + nu)) - 1)

print("\ntrace picks the identity coefficient:",
      tau(QElement(spec, {(0, 0, 0): 2.5, (1, 0, -2): 9.0})))
offdiag = [abs(inner(QElement.monomial(spec, e), QElement.monomial(spec, f)))
           for e in itertools.product((-1, 0, 1), repeat=3)
           for f in itertools.product((-1, 0, 1), repeat=3) if e != f]
print("monomials are orthonormal: max off-diagonal inner product =",
      max(offdiag))

print("\ncanonical derivations on the generators (K=3 series truncation):")
for name, g in (("U", U), ("V", V), ("W", W)):
    d1, d2, d3 = heisenberg_derivations(g, K=3)
    print(f"  D1 {name} = {format_element(d1)}")
    print(f"  D2 {name} = {format_element(d2)}")
    print(f"  D3 {name} = {format_element(d3)}")

# D3 commutes with D1 and D2 (it reads only the W degree)
x = QElement.monomial(spec, (1, -2, 2))
d = lambda i, z: heisenberg_derivations(z, K=3)[i]
print("\n[D1, D3] on U V^-2 W^2:", (d(0, d(2, x)) - d(2, d(0, x))).norm())
print("[D2, D3] on U V^-2 W^2:", (d(1, d(2, x)) - d(2, d(1, x))).norm())
