#!/usr/bin/env python3
# Dimension tables for the derivative complexes: matrix carriers exactly,
# q-lattice carriers on nested exponent truncations.

from ncdiff import (DifferentialBasis, MatrixCarrierBasis, deRham_dims,
                    deRham_dims_truncated, dolbeault_dims, projection_basis,
                    torus_spec)
from ncdiff.qlattice import QElement

print("de Rham over M_n with the projection basis (degree-0 row):")
for n in range(2, 7):
    basis = DifferentialBasis(projection_basis(n), mode="selfadjoint",
                              label=f"M_{n}")
    report = deRham_dims(basis, MatrixCarrierBasis(n), max_degree=0)
    print(f"  n={n}: H^0 = {report.h(0)}")

print("\nfull M_2 complex:")
basis2 = DifferentialBasis(projection_basis(2), mode="selfadjoint", label="M_2")
for row in deRham_dims(basis2, MatrixCarrierBasis(2)).degrees:
    print(f"  k={row.k}: dim ker = {row.dim_ker}, rank prev = {row.rank_prev},"
          f" H^k = {row.h_dim}")

print("\ntruncated rotation algebra (theta=0.7, basis {U}, K=4):")
spec = torus_spec(0.7)
tb = DifferentialBasis([QElement.generator(spec, 1)], label="torus {U}")
report = deRham_dims_truncated(tb, spec, K=4)
print("  truncation:", report.truncation)
for row in report.degrees:
    print(f"  k={row.k}: dim ker = {row.dim_ker}, rank prev = {row.rank_prev},"
          f" H^k = {row.h_dim}")
print("  (degree 0 sees exactly the powers of U inside the kernel ball)")

print("\nDolbeault row (p=0) over M_2 with a diagonal clock basis:")
import numpy as np
from ncdiff.matrix_algebra import MatElement
clock = MatElement(np.diag([1.0, 1j]))
cb = DifferentialBasis([clock], label="M_2 clock")
for row in dolbeault_dims(0, cb, MatrixCarrierBasis(2)).degrees:
    print(f"  q={row.k}: dim ker = {row.dim_ker}, H = {row.h_dim}")
