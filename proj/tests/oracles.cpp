#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oracle {

CMat to_rows(const monogamy::ComplexMatrix& m) {
  CMat r(m.dim(), std::vector<cplx>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = m(i, j);
  return r;
}

namespace {

CMat mul(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat c(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

std::vector<cplx> char_poly(const CMat& m) {
  const std::size_t n = m.size();
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  CMat mk(n, std::vector<cplx>(n));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
    CMat next = mul(m, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    const CMat am = mul(m, mk);
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  std::vector<cplx> z(n);
  const cplx seed(0.4, 0.9);
  double radius = 1.0;
  for (std::size_t k = 0; k < n; ++k) radius = std::max(radius, 1.0 + std::abs(coeffs[k]));
  for (std::size_t k = 0; k < n; ++k) z[k] = radius * std::pow(seed, static_cast<double>(k));
  auto eval = [&](cplx x) {
    cplx v = coeffs[n];
    for (std::size_t k = n; k-- > 0;) v = v * x + coeffs[k];
    return v;
  };
  for (int it = 0; it < 5000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cplx den = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (std::abs(den) == 0.0) den = 1e-300;
      const cplx step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // polish each root with Newton steps on the polynomial
  for (auto& x : z)
    for (int it = 0; it < 20; ++it) {
      cplx v = coeffs[n], d = 0.0;
      for (std::size_t k = n; k-- > 0;) {
        d = d * x + v;
        v = v * x + coeffs[k];
      }
      if (std::abs(d) < 1e-300) break;
      x -= v / d;
    }
  return z;
}

std::vector<double> eigenvalues(const CMat& m) {
  const auto roots = poly_roots(char_poly(m));
  std::vector<double> out;
  for (const auto& r : roots) out.push_back(r.real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

cplx determinant(CMat m) {
  const std::size_t n = m.size();
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) == 0.0) return 0.0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

double born_probability(const std::vector<cplx>& psi, const std::vector<double>& angles,
                        const std::vector<int>& outcomes) {
  // cos(a) X + sin(a) Z has Bloch vector at polar angle pi/2 - a in the x-z
  // plane; its +1 eigenvector is (cos t/2, sin t/2) with t = pi/2 - a.
  const std::size_t n = angles.size();
  std::vector<std::array<double, 2>> vecs(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double t = std::acos(-1.0) / 2 - angles[p];
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    vecs[p] = outcomes[p] == 0 ? std::array<double, 2>{c, s} : std::array<double, 2>{-s, c};
  }
  cplx amp = 0.0;
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    double w = 1.0;
    for (std::size_t p = 0; p < n; ++p) w *= vecs[p][(idx >> (n - 1 - p)) & 1];
    amp += w * psi[idx];
  }
  return std::norm(amp);
}

monogamy::Behavior born_behavior(const std::vector<cplx>& psi,
                                 const std::vector<std::vector<double>>& angles) {
  std::vector<int> settings, outcomes;
  for (const auto& a : angles) {
    settings.push_back(static_cast<int>(a.size()));
    outcomes.push_back(2);
  }
  monogamy::Scenario s(settings, outcomes);
  std::vector<double> table(s.table_size());
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    std::vector<double> ang;
    for (std::size_t p = 0; p < angles.size(); ++p) ang.push_back(angles[p][ctx[p]]);
    for (std::size_t o = 0; o < s.outcome_count(); ++o)
      table[c * s.outcome_count() + o] = born_probability(psi, ang, s.outcome(o));
  }
  return monogamy::Behavior(s, std::move(table));
}

double pure_concurrence(const std::vector<cplx>& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

CMat leading_reduced(const std::vector<cplx>& psi, int keep) {
  int n = 0;
  while ((std::size_t{1} << n) < psi.size()) ++n;
  const std::size_t dk = std::size_t{1} << keep, dr = std::size_t{1} << (n - keep);
  CMat r(dk, std::vector<cplx>(dk));
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j)
      for (std::size_t k = 0; k < dr; ++k) r[i][j] += psi[i * dr + k] * std::conj(psi[j * dr + k]);
  return r;
}

namespace {

// Solves the square system by Gaussian elimination; false if singular.
bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& x) {
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-12) return false;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

}  // namespace

double lp_bruteforce(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b) {
  const std::size_t n = c.size();
  // all constraints as rows g.x <= h, including -x_j <= 0
  std::vector<std::vector<double>> g = a;
  std::vector<double> h = b;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n, 0.0);
    row[j] = -1.0;
    g.push_back(row);
    h.push_back(0.0);
  }
  const std::size_t m = g.size();
  double best = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  // iterate over n-subsets of m rows
  for (;;) {
    std::vector<std::vector<double>> sys;
    std::vector<double> rhs;
    for (std::size_t k : pick) {
      sys.push_back(g[k]);
      rhs.push_back(h[k]);
    }
    std::vector<double> x;
    if (solve_square(sys, rhs, x)) {
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += g[r][j] * x[j];
        ok = v <= h[r] + 1e-9;
      }
      if (ok) {
        double z = 0.0;
        for (std::size_t j = 0; j < n; ++j) z += c[j] * x[j];
        if (std::isnan(best) || z > best) best = z;
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

double chsh_direct(const monogamy::Behavior& b) {
  double total = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const double sign = x == 1 && y == 1 ? -1.0 : 1.0;
      for (int a = 0; a < 2; ++a)
        for (int o = 0; o < 2; ++o) {
          const int out[] = {a, o};
          const int set[] = {x, y};
          total += sign * (a == o ? 1.0 : -1.0) * b.prob(out, set);
        }
    }
  return total;
}

monogamy::Behavior permute_parties(const monogamy::Behavior& b, const std::vector<int>& perm) {
  const auto& s = b.scenario();
  std::vector<int> settings, outcomes;
  for (int p : perm) {
    settings.push_back(s.settings(p));
    outcomes.push_back(s.outcomes(p));
  }
  monogamy::Scenario t(settings, outcomes);
  std::vector<double> table(t.table_size());
  for (std::size_t c = 0; c < t.context_count(); ++c) {
    const auto tctx = t.context(c);
    std::vector<int> sctx(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sctx[perm[i]] = tctx[i];
    for (std::size_t o = 0; o < t.outcome_count(); ++o) {
      const auto tout = t.outcome(o);
      std::vector<int> sout(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) sout[perm[i]] = tout[i];
      table[c * t.outcome_count() + o] = b.prob(sout, sctx);
    }
  }
  return monogamy::Behavior(t, std::move(table));
}

std::vector<cplx> random_state(int qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& z : v) {
    z = cplx(g(rng), g(rng));
    norm += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(norm);
  return v;
}

}  // namespace oracle

#include "monogamy/lp.hpp"
#include "monogamy/sharing.hpp"

namespace oracle {

monogamy::Behavior random_symmetric_ns3(std::mt19937_64& rng) {
  using namespace monogamy;
  const Scenario s = Scenario::uniform(3, 2, 2);
  lp::LinearProgram base = no_signalling_program(s);
  const std::size_t n = s.table_size();
  for (std::size_t e = 0; e < n; ++e) {
    auto ctx = s.context(e / s.outcome_count());
    auto out = s.outcome(e % s.outcome_count());
    std::swap(ctx[1], ctx[2]);
    std::swap(out[1], out[2]);
    const std::size_t f = s.entry_index(ctx, out);
    if (f <= e) continue;
    lp::Row r{std::vector<double>(n, 0.0), 0.0};
    r.coeffs[e] = 1.0;
    r.coeffs[f] = -1.0;
    base.equalities.push_back(r);
  }
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const int parts = 1 + static_cast<int>(rng() % 3);
  std::vector<double> table(n, 0.0);
  double total = 0.0;
  for (int k = 0; k < parts; ++k) {
    lp::LinearProgram p = base;
    p.objective.resize(n);
    for (auto& v : p.objective) v = g(rng);
    const auto r = lp::solve(p);
    if (r.status != lp::Status::Optimal) throw std::runtime_error("symmetric NS vertex LP failed");
    const double w = u(rng);
    total += w;
    for (std::size_t i = 0; i < n; ++i) table[i] += w * std::max(0.0, r.solution[i]);
  }
  for (auto& v : table) v /= total;
  return Behavior(s, std::move(table));
}

monogamy::Behavior random_two_shareable(std::mt19937_64& rng) {
  const int keep[] = {0, 1};
  return monogamy::reduce(random_symmetric_ns3(rng), keep, 0);
}

monogamy::Behavior random_quantum_violator(std::mt19937_64& rng, double threshold) {
  std::uniform_real_distribution<double> jitter(-0.6, 0.6), tilt(0.35, 0.785398163397448);
  const double pi = std::acos(-1.0);
  for (;;) {
    const double t = tilt(rng);
    std::vector<cplx> psi{std::cos(t), 0.0, 0.0, std::sin(t)};
    std::vector<std::vector<double>> ang{{jitter(rng), pi / 2 + jitter(rng)},
                                         {pi / 4 + jitter(rng), -pi / 4 + jitter(rng)}};
    auto b = born_behavior(psi, ang);
    if (std::abs(chsh_direct(b)) > threshold) return b;
  }
}

}  // namespace oracle
