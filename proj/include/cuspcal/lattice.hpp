#pragma once

#include <vector>

#include "cuspcal/arith.hpp"

namespace cuspcal::lattice {

using IntMatrix = std::vector<std::vector<Int>>;

/// U * A * V = D with U, V unimodular and D diagonal (d_1 | d_2 | ...).
struct SmithForm {
  IntMatrix U, V, D;
  int rank = 0;
  Int diag(int i) const { return D[i][i]; }
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Basis (as rows) of {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Generators (as rows) of {x in (Z/p^k)^cols : A x = 0 mod p^k}.
IntMatrix kernel_mod_prime_power(const IntMatrix& a, Int p, int k);

/// Whether v lies in the Z-span of the rows of basis.
bool in_span(const IntMatrix& basis, const std::vector<Int>& v);

/// Whether the rows of a and b span the same sublattice.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Rows e_i - e_{i+delta}, i in Z/n: the coroot lattice of one root orbit.
IntMatrix orbit_coroot_rows(int n, int delta);

/// Coset-sum vectors sum_{i = r mod d} e_i, r = 0..d-1.
IntMatrix coset_sum_rows(int n, int d);

}  // namespace cuspcal::lattice
