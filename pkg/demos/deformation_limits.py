#!/usr/bin/env python3
# Scaled commutators against their classical targets: all three families
# converge at first order in the deformation parameter.

from ncdiff import (heisenberg_limit_sweep, plane_limit_sweep,
                    plane_partial_sweep, torus_limit_sweep)

params = [1e-2, 5e-3, 2.5e-3, 1.25e-3]


def show(name, sweep):
    print(f"{name}:")
    print(sweep.to_csv(), end="")
    print(f"  fitted order = {sweep.fitted_order:.4f},"
          f" halving ratio = {sweep.halving_ratio():.4f}\n")


# trigonometric polynomial on the commutative torus directions
show("torus, f = V + 0.5 V^3",
     torus_limit_sweep({(1,): 1.0, (3,): 0.5}, params))

# Weyl lattice: (1/hbar) [A, f] with f supported off the commuting ray
show("plane, k=(1,0), f = B + 0.25 A^2 B^5",
     plane_limit_sweep((1, 0), {(0, 1): 1.0, (2, 5): 0.25}, params))

# gradient mode: position-only data, momentum-direction basis
show("plane gradient, f = B1 B2^2",
     plane_partial_sweep({(1, 2): 1.0}, params))

# Heisenberg generators, all three directions
for direction, exponents in (("W", (2, 1, 0)), ("U", (0, 0, 3)), ("V", (1, 0, 2))):
    show(f"heisenberg, direction {direction}, monomial {exponents}",
         heisenberg_limit_sweep(direction, exponents, params, mu=0.11, nu=0.07))
