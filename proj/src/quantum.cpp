#include "monogamy/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace monogamy {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw std::invalid_argument("matrix data has wrong size");
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("matrix entry is not finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r(*this);
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return e;
}

double ComplexMatrix::max_abs() const {
  double e = 0.0;
  for (const auto& z : data_) e = std::max(e, std::abs(z));
  return e;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  const std::size_t n = a.dim_;
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

StateVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (v.size() != a.dim_) throw std::invalid_argument("vector dimension mismatch");
  StateVector r(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t j = 0; j < a.dim_; ++j) r[i] += a(i, j) * v[j];
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix r = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) r = kron(r, factors[i]);
  return r;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  Complex t = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  return t;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
ComplexMatrix id() { return ComplexMatrix::identity(2); }
}  // namespace pauli

Spectrum eig_hermitian(const ComplexMatrix& m, double hermitian_tol) {
  const std::size_t n = m.dim();
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_error() > hermitian_tol * scale)
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-32 * scale * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        const Complex phase = a(p, q) / g;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag-phase(q) * real rotation; A <- J^dagger A J
        const Complex jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  Spectrum sp;
  sp.values.resize(n);
  sp.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    sp.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) sp.vectors(i, k) = v(i, order[k]);
  }
  return sp;
}

namespace {

int qubit_count(std::size_t dim) {
  int q = 0;
  std::size_t d = 1;
  while (d < dim) {
    d <<= 1;
    ++q;
  }
  if (d != dim || dim == 0) throw std::invalid_argument("dimension is not a power of two");
  return q;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  qubits_ = qubit_count(m_.dim());
  if (m_.hermiticity_error() > tol) throw std::invalid_argument("density matrix is not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > tol || std::abs(tr.imag()) > tol)
    throw std::invalid_argument("density matrix trace is not 1");
  const auto sp = eig_hermitian(m_, tol);
  if (sp.values.back() < -1e-9) throw std::invalid_argument("density matrix is not positive");
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
  double norm = 0.0;
  for (const auto& z : ket) norm += std::norm(z);
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("state vector is not normalized");
  return DensityMatrix(ComplexMatrix::outer(ket));
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const std::size_t d = std::size_t{1} << qubits;
  return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
}

double DensityMatrix::purity_eigenvalue() const { return eig_hermitian(m_).values.front(); }

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.m_, b.m_));
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("mix needs one weight per state");
  ComplexMatrix m(states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) m += states[i].matrix() * Complex(weights[i]);
  return DensityMatrix(std::move(m));
}

Observable::Observable(ComplexMatrix op, double tol) : op_(std::move(op)) {
  if (op_.hermiticity_error() > tol) throw std::invalid_argument("observable is not Hermitian");
  const ComplexMatrix sq = op_ * op_;
  const ComplexMatrix diff = sq - ComplexMatrix::identity(op_.dim());
  if (diff.max_abs() > tol) throw std::invalid_argument("observable does not square to identity");
}

Observable Observable::planar(double alpha) {
  return Observable(pauli::x() * Complex(std::cos(alpha)) + pauli::z() * Complex(std::sin(alpha)));
}

Observable Observable::bloch(double x, double y, double z) {
  return Observable(pauli::x() * Complex(x) + pauli::y() * Complex(y) + pauli::z() * Complex(z));
}

Observable Observable::sigma_y() { return Observable(pauli::y()); }

ComplexMatrix Observable::projector(int outcome) const {
  const double sign = outcome == 0 ? 1.0 : -1.0;
  return (ComplexMatrix::identity(op_.dim()) + op_ * Complex(sign)) * Complex(0.5);
}

Behavior born_behavior(const DensityMatrix& rho,
                       const std::vector<std::vector<Observable>>& observables) {
  const int n = rho.qubits();
  if (static_cast<int>(observables.size()) != n)
    throw std::invalid_argument("need one observable list per qubit");
  std::vector<int> settings, outcomes;
  for (const auto& obs : observables) {
    if (obs.empty()) throw std::invalid_argument("party has no observables");
    for (const auto& o : obs)
      if (o.op().dim() != 2) throw std::invalid_argument("observables must act on one qubit");
    settings.push_back(static_cast<int>(obs.size()));
    outcomes.push_back(2);
  }
  Scenario s(settings, outcomes);

  // projectors[p][x][a]
  std::vector<std::vector<std::array<ComplexMatrix, 2>>> proj(observables.size());
  for (std::size_t p = 0; p < observables.size(); ++p)
    for (const auto& o : observables[p]) proj[p].push_back({o.projector(0), o.projector(1)});

  std::vector<double> table(s.table_size());
  std::vector<ComplexMatrix> factors(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      const auto out = s.outcome(o);
      for (int p = 0; p < n; ++p) factors[p] = proj[p][ctx[p]][out[p]];
      const double v = trace_product(kron(factors), rho.matrix()).real();
      table[c * s.outcome_count() + o] = std::abs(v) < 1e-15 ? 0.0 : v;
    }
  }
  return Behavior(std::move(s), std::move(table));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace needs a nonempty keep set");
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
    if (kept[q]) throw std::invalid_argument("duplicate qubit in keep set");
    kept[q] = 1;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept[q]) traced.push_back(q);

  auto spread = [n](std::size_t bits, std::span<const int> positions) {
    std::size_t idx = 0;
    const std::size_t m = positions.size();
    for (std::size_t r = 0; r < m; ++r)
      if ((bits >> (m - 1 - r)) & 1U) idx |= std::size_t{1} << (n - 1 - positions[r]);
    return idx;
  };
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> ki(dk), ti(dt);
  for (std::size_t i = 0; i < dk; ++i) ki[i] = spread(i, keep);
  for (std::size_t t = 0; t < dt; ++t) ti[t] = spread(t, traced);

  ComplexMatrix r(dk);
  const auto& m = rho.matrix();
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += m(ki[i] | ti[t], ki[j] | ti[t]);
      r(i, j) = s;
    }
  return DensityMatrix(std::move(r));
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  const Complex v = trace_product(op, rho.matrix());
  if (std::abs(v.imag()) > 1e-10) throw std::invalid_argument("expectation is not real");
  return v.real();
}

ComplexMatrix embed(const ComplexMatrix& op, int qubit, int qubits) {
  if (qubit < 0 || qubit >= qubits) throw std::invalid_argument("qubit index out of range");
  ComplexMatrix r = qubit == 0 ? op : pauli::id();
  for (int q = 1; q < qubits; ++q) r = kron(r, q == qubit ? op : pauli::id());
  return r;
}

ComplexMatrix embed_pair(const ComplexMatrix& a, int qa, const ComplexMatrix& b, int qb,
                         int qubits) {
  if (qa == qb || qa < 0 || qb < 0 || qa >= qubits || qb >= qubits)
    throw std::invalid_argument("invalid qubit pair");
  ComplexMatrix r = qa == 0 ? a : (qb == 0 ? b : pauli::id());
  for (int q = 1; q < qubits; ++q) r = kron(r, q == qa ? a : (q == qb ? b : pauli::id()));
  return r;
}

namespace states {

StateVector basis(int qubits, std::size_t index) {
  StateVector v(std::size_t{1} << qubits);
  v.at(index) = 1.0;
  return v;
}

StateVector singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return {0.0, h, -h, 0.0};
}

StateVector phi_plus() {
  const double h = 1.0 / std::sqrt(2.0);
  return {h, 0.0, 0.0, h};
}

StateVector ghz(int qubits) {
  StateVector v(std::size_t{1} << qubits);
  v.front() = v.back() = 1.0 / std::sqrt(2.0);
  return v;
}

StateVector w() {
  StateVector v(8);
  const double t = 1.0 / std::sqrt(3.0);
  v[0b001] = v[0b010] = v[0b100] = t;
  return v;
}

StateVector cg(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("cg state needs mu in [0,1]");
  StateVector v(8);
  const double r = std::sqrt((1.0 - mu * mu) / 2.0);
  v[0b000] = mu;
  v[0b110] = r;
  v[0b101] = r;
  return v;
}

StateVector tensor(std::span<const Complex> a, std::span<const Complex> b) {
  StateVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

StateVector product(std::span<const StateVector> kets) {
  if (kets.empty()) throw std::invalid_argument("product needs at least one ket");
  StateVector r = kets.front();
  for (std::size_t i = 1; i < kets.size(); ++i) r = tensor(r, kets[i]);
  return r;
}

StateVector random_pure(int qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  StateVector v(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& z : v) {
    z = Complex(g(rng), g(rng));
    norm += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& z : v) z *= inv;
  return v;
}

}  // namespace states

DensityMatrix named_state(NamedStateKind kind, double mu, std::span<const StateVector> product_kets) {
  switch (kind) {
    case NamedStateKind::Singlet: return DensityMatrix::pure(states::singlet());
    case NamedStateKind::PhiPlus: return DensityMatrix::pure(states::phi_plus());
    case NamedStateKind::Ghz: return DensityMatrix::pure(states::ghz(3));
    case NamedStateKind::W: return DensityMatrix::pure(states::w());
    case NamedStateKind::Cg: return DensityMatrix::pure(states::cg(mu));
    case NamedStateKind::Product: {
      StateVector v = states::product(product_kets);
      double norm = 0.0;
      for (const auto& z : v) norm += std::norm(z);
      for (auto& z : v) z /= std::sqrt(norm);
      return DensityMatrix::pure(v);
    }
  }
  throw std::invalid_argument("unknown state kind");
}

}  // namespace monogamy
