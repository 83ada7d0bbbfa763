#include "monogamy/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monogamy {

namespace {

constexpr double kRankCutoff = 1e-14;

void require_pure(const DensityMatrix& psi) {
  if (psi.purity_eigenvalue() < 1.0 - 1e-9) throw std::invalid_argument("state is not pure");
}

// Columns sqrt(mu_k) v_k of the eigen-ensemble rho = W W^dagger. Eigenvalues
// below `cutoff` are rounding noise of a rank-deficient state and are dropped.
ComplexMatrix ensemble_factor(const ComplexMatrix& m, double cutoff) {
  const auto sp = eig_hermitian(m);
  const std::size_t n = m.dim();
  ComplexMatrix w(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (sp.values[k] <= cutoff) continue;
    const double s = std::sqrt(sp.values[k]);
    for (std::size_t i = 0; i < n; ++i) w(i, k) = s * sp.vectors(i, k);
  }
  return w;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  if (rho.qubits() != 2) throw std::invalid_argument("concurrence needs a two-qubit state");
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix w = ensemble_factor(rho.matrix(), kRankCutoff);
  // sqrt of the eigenvalues of rho (yy rho* yy) are the singular values of
  // tau = W^T yy W; read them off the Hermitian dilation [[0, tau], [tau^+, 0]].
  ComplexMatrix wt(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) wt(i, j) = w(j, i);
  const ComplexMatrix tau = wt * yy * w;
  ComplexMatrix dilation(8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      dilation(i, 4 + j) = tau(i, j);
      dilation(4 + j, i) = std::conj(tau(i, j));
    }
  const auto sv = eig_hermitian(dilation).values;  // s1..s4, -s4..-s1
  return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

double tangle(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double cut_tangle(const DensityMatrix& psi, int pivot) {
  if (pivot < 0 || pivot >= psi.qubits()) throw std::invalid_argument("pivot out of range");
  require_pure(psi);
  const int keep[] = {pivot};
  const auto r = partial_trace(psi, keep).matrix();
  const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
  return 4.0 * det;
}

TangleReport ckw_check(const DensityMatrix& psi, int pivot, double tol) {
  const int n = psi.qubits();
  if (n < 3 || n > 4) throw std::invalid_argument("ckw_check supports 3 or 4 qubits");
  TangleReport rep;
  rep.pivot = pivot;
  rep.cut = cut_tangle(psi, pivot);
  double sum = 0.0;
  for (int q = 0; q < n; ++q) {
    if (q == pivot) continue;
    const int keep[] = {pivot, q};
    const double t = tangle(partial_trace(psi, keep));
    rep.partners.push_back(q);
    rep.pairwise.push_back(t);
    sum += t;
  }
  rep.residual = rep.cut - sum;
  rep.passes = rep.residual >= -tol;
  return rep;
}

}  // namespace monogamy
