// Small dense complex linear algebra for few-qubit systems.
//
// Qubit 0 is the most significant bit of a basis index, so |abc> has index
// 4a + 2b + c.
#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "monogamy/model.hpp"

namespace monogamy {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix outer(std::span<const Complex> ket);  // |k><k|

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  const std::vector<Complex>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  double hermiticity_error() const;  // max |m_ij - conj(m_ji)|
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend StateVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);
/// Tr[a b] without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix id();
}  // namespace pauli

struct Spectrum {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic Jacobi rotations. Throws std::invalid_argument if `m` is not
/// Hermitian within `hermitian_tol` (relative to its largest entry).
Spectrum eig_hermitian(const ComplexMatrix& m, double hermitian_tol = 1e-9);

/// Hermitian, unit trace, positive semidefinite, dimension 2^qubits.
class DensityMatrix {
 public:
  /// Validates the invariants (throws std::invalid_argument).
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-10);
  static DensityMatrix pure(std::span<const Complex> ket);
  static DensityMatrix maximally_mixed(int qubits);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  int qubits() const { return qubits_; }
  /// Largest eigenvalue (1 for pure states).
  double purity_eigenvalue() const;

  friend DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

 private:
  ComplexMatrix m_;
  int qubits_ = 0;
};

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);

/// Dichotomic observable with O^2 = I.
class Observable {
 public:
  explicit Observable(ComplexMatrix op, double tol = 1e-10);
  /// cos(alpha) sigma_x + sin(alpha) sigma_z
  static Observable planar(double alpha);
  /// n·sigma for a unit Bloch vector.
  static Observable bloch(double x, double y, double z);
  static Observable sigma_y();

  const ComplexMatrix& op() const { return op_; }
  /// Projector onto outcome 0 (+1) or 1 (-1): (I +- O) / 2.
  ComplexMatrix projector(int outcome) const;

 private:
  ComplexMatrix op_;
};

/// P(a_1..a_N | A_1..A_N) = Tr[(P^{A_1}_{a_1} x ... x P^{A_N}_{a_N}) rho], one
/// qubit per party; observables[party][setting].
Behavior born_behavior(const DensityMatrix& rho,
                       const std::vector<std::vector<Observable>>& observables);

/// Reduced state on `keep` (ascending or not; result ordered as given).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Tr[O rho]; throws if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix& rho, const ComplexMatrix& op);

/// Operator acting as `op` on qubit `qubit` of an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, int qubit, int qubits);
/// Operator acting as a x b on qubits (qa, qb) of an n-qubit register.
ComplexMatrix embed_pair(const ComplexMatrix& a, int qa, const ComplexMatrix& b, int qb,
                         int qubits);

namespace states {
StateVector basis(int qubits, std::size_t index);
StateVector singlet();
StateVector phi_plus();
StateVector ghz(int qubits = 3);
StateVector w();
/// mu|000> + sqrt((1-mu^2)/2) (|110> + |101>); mu in [0,1].
StateVector cg(double mu);
/// Tensor product of single-qubit kets.
StateVector product(std::span<const StateVector> kets);
StateVector tensor(std::span<const Complex> a, std::span<const Complex> b);
/// Haar-random pure state (normalized complex Gaussian vector).
StateVector random_pure(int qubits, std::mt19937_64& rng);
}  // namespace states

enum class NamedStateKind { Singlet, PhiPlus, Ghz, W, Cg, Product };

DensityMatrix named_state(NamedStateKind kind, double mu = 1.0,
                          std::span<const StateVector> product_kets = {});

}  // namespace monogamy
