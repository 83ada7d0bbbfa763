// Two-qubit concurrence and tangle, cut tangle of pure states, and the
// distributed-entanglement (CKW) check.
#pragma once

#include <vector>

#include "monogamy/quantum.hpp"

namespace monogamy {

/// Wootters concurrence max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)},
/// l_i the eigenvalues of rho (sy x sy) rho* (sy x sy) in descending order.
/// They are obtained as the spectrum of the Hermitian sqrt(rho) rho~ sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// concurrence squared
double tangle(const DensityMatrix& rho);

/// 4 det(rho_pivot) for a pure multi-qubit state.
/// Throws std::invalid_argument on mixed input or a bad pivot.
double cut_tangle(const DensityMatrix& psi, int pivot);

struct TangleReport {
  int pivot = 0;
  std::vector<int> partners;
  std::vector<double> pairwise;  // tau(rho_{pivot, partner})
  double cut = 0.0;              // tau across pivot | rest
  double residual = 0.0;         // cut - sum(pairwise)
  bool passes = true;            // residual >= -tolerance
};

/// Pure 3- or 4-qubit states only.
TangleReport ckw_check(const DensityMatrix& psi, int pivot = 0, double tol = 1e-9);

}  // namespace monogamy
