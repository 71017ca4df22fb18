#!/usr/bin/env python3
# Rotation-algebra basics: normal ordering, commutators as finite
# differences, the first-order derivative, and commutant membership.

import cmath
import math

from ncdiff import (DifferentialBasis, DifferentialForm, c00_membership,
                    clock_shift_rep, commutator, delta, theta_hat, torus_spec)
from ncdiff.expr import format_element, format_form
from ncdiff.qlattice import QElement

theta = 0.7
spec = torus_spec(theta)
U = QElement.generator(spec, 1)
V = QElement.generator(spec, 2)

print("relation check: V*U =", format_element(V * U))
print("so U V = e^{i theta} V U with theta =", theta)

print("\n[U, V] =", format_element(commutator(U, V)))
print("expected factor 1 - e^{-i theta} =", 1 - cmath.exp(-1j * theta))

# the commutator acts as a finite difference: [U, a] = U (a - translation(a))
a = QElement(spec, {(2, 1): 1.0, (0, 3): 0.5})
lhs = commutator(U, a)
rhs = U * (a - theta_hat(0.0, theta, a))
print("\nfinite-difference identity defect:", (lhs - rhs).norm())

# first-order derivative over the basis {U}: two covectors dU, dU*
basis = DifferentialBasis([U], label="{U}")
dV = delta(DifferentialForm.from_element(basis, V))
print("\ndelta(V) =", format_form(dV))
print("delta(delta(V)) norm:", delta(dV).norm())

# commutant membership: which elements commute with U?
for candidate in (3 * U * U + U.adjoint(), V):
    member, witnesses = c00_membership(candidate)
    print(f"\n{format_element(candidate)} commutes with U: {member}",
          f"(offending degrees {witnesses})" if witnesses else "")

# rational angle: finite-dimensional clock/shift image
spec_rat = torus_spec(2 * math.pi * 3 / 7)
img = clock_shift_rep(spec_rat, QElement.generator(spec_rat, 1))
print("\nclock image of U at theta = 2*pi*3/7 is", img.n, "x", img.n)
print("diagonal:", [round(z.real, 3) + 1j * round(z.imag, 3)
                    for z in img.mat.diagonal()])
