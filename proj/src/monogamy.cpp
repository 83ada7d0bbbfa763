#include "monogamy/monogamy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "monogamy/localpoly.hpp"
#include "monogamy/lp.hpp"
#include "monogamy/optimize.hpp"
#include "monogamy/parallel.hpp"
#include "monogamy/sharing.hpp"

namespace monogamy {

namespace {

constexpr double kPi = std::numbers::pi;

void require_chsh_triple(const Scenario& s) {
  if (!(s == Scenario::uniform(3, 2, 2)))
    throw StructuralError("expected 3 parties with 2 settings and 2 outcomes each");
}

double sq(double x) { return x * x; }

}  // namespace

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::NsTradeoff: return "NS-13";
    case InequalityId::TvTradeoff: return "TV-14";
    case InequalityId::Strengthened: return "STRONG-21";
    case InequalityId::NaiveTriple: return "NAIVE-23";
    case InequalityId::Triple: return "TRIPLE-25";
    case InequalityId::Cylinder: return "CYL";
    case InequalityId::PawlowskiBrukner: return "PB-30";
    case InequalityId::KeyCorollary: return "KEY-31";
  }
  return "?";
}

CheckReport make_report(InequalityId id, double lhs, double bound, double tol, std::string label) {
  CheckReport r;
  r.id = id;
  r.label = std::move(label);
  r.lhs = lhs;
  r.bound = bound;
  r.slack = bound - lhs;
  r.pass = r.slack >= -tol;
  return r;
}

TradeoffPoint TradeoffPoint::pair(double b_ab, double b_ac) {
  TradeoffPoint p;
  p.labels = {"B_ab", "B_ac"};
  p.values = {b_ab, b_ac};
  return p;
}

TradeoffPoint TradeoffPoint::triple(double b_ab, double b_ac, double b_bc) {
  TradeoffPoint p;
  p.labels = {"B_ab", "B_ac", "B_bc"};
  p.values = {b_ab, b_ac, b_bc};
  return p;
}

TradeoffPoint pair_values(const Behavior& b) {
  require_chsh_triple(b.scenario());
  const auto f = BellFunctional::chsh();
  auto p = TradeoffPoint::pair(bell_value(b, f, 0, 1), bell_value(b, f, 0, 2));
  const int settings[] = {0, 0, 0};
  const int ac[] = {0, 2};
  p.corr_ac = correlator(b, settings, ac);
  return p;
}

TradeoffPoint triple_values(const Behavior& b) {
  auto p = pair_values(b);
  p.labels.push_back("B_bc");
  p.values.push_back(bell_value(b, BellFunctional::chsh(), 1, 2));
  return p;
}

TradeoffPoint quantum_point(const DensityMatrix& rho, std::span<const double> angles) {
  if (rho.qubits() != 3) throw StructuralError("quantum_point needs a 3-qubit state");
  if (angles.size() != 6) throw StructuralError("quantum_point needs 6 angles");
  std::vector<std::vector<Observable>> obs(3);
  for (int p = 0; p < 3; ++p)
    for (int x = 0; x < 2; ++x) obs[p].push_back(Observable::planar(angles[2 * p + x]));
  auto point = triple_values(born_behavior(rho, obs));
  const auto sy = pauli::y();
  point.sigma_y_a = expectation(rho, embed(sy, 0, 3));
  point.sigma_y_b = expectation(rho, embed(sy, 1, 3));
  point.sigma_y_c = expectation(rho, embed(sy, 2, 3));
  return point;
}

CheckReport check_ns_tradeoff(const TradeoffPoint& p, double tol) {
  return make_report(InequalityId::NsTradeoff, std::abs(p.ab()) + std::abs(p.ac()), 4.0, tol);
}

CheckReport check_tv_tradeoff(const TradeoffPoint& p, double tol) {
  return make_report(InequalityId::TvTradeoff, sq(p.ab()) + sq(p.ac()), 8.0, tol);
}

CheckReport check_strengthened(const TradeoffPoint& p, double tol) {
  if (!p.sigma_y_a) throw std::invalid_argument("check_strengthened needs <sigma_y>_a");
  return make_report(InequalityId::Strengthened, sq(p.ab()) + sq(p.ac()),
                     8.0 * (1.0 - sq(*p.sigma_y_a)), tol);
}

TripleReport check_triple(const TradeoffPoint& p, double tol) {
  if (p.values.size() != 3) throw std::invalid_argument("check_triple needs three values");
  const double ya = p.sigma_y_a.value_or(0.0), yb = p.sigma_y_b.value_or(0.0),
               yc = p.sigma_y_c.value_or(0.0);
  const double lhs = sq(p.ab()) + sq(p.ac()) + sq(p.bc());
  TripleReport r;
  r.triple = make_report(InequalityId::Triple, lhs, 12.0 - 4.0 * (sq(ya) + sq(yb) + sq(yc)), tol);
  r.naive = make_report(InequalityId::NaiveTriple, lhs, 8.0, tol);
  r.cylinders = {make_report(InequalityId::Cylinder, sq(p.ab()) + sq(p.ac()), 8.0, tol, "ab,ac"),
                 make_report(InequalityId::Cylinder, sq(p.ab()) + sq(p.bc()), 8.0, tol, "ab,bc"),
                 make_report(InequalityId::Cylinder, sq(p.ac()) + sq(p.bc()), 8.0, tol, "ac,bc")};
  return r;
}

CheckReport check_key_corollary(double b_ab, double corr_ac, double tol) {
  return make_report(InequalityId::KeyCorollary, sq(b_ab) + 4.0 * sq(corr_ac), 8.0, tol);
}

CheckReport check_pb(double c_ab, double c_ac, double c_ad, double lr, double tol) {
  return make_report(InequalityId::PawlowskiBrukner,
                     std::abs(c_ab) + std::abs(c_ac) + std::abs(c_ad), 3.0 * lr, tol);
}

ComplexMatrix bell_operator(const BellFunctional& f, std::span<const ComplexMatrix> first, int qa,
                            std::span<const ComplexMatrix> second, int qb, int qubits) {
  if (static_cast<int>(first.size()) != f.settings_first() ||
      static_cast<int>(second.size()) != f.settings_second())
    throw StructuralError("observable count does not match the functional");
  ComplexMatrix out(std::size_t{1} << qubits);
  for (int x = 0; x < f.settings_first(); ++x)
    for (int y = 0; y < f.settings_second(); ++y)
      if (f.correlators[x][y] != 0.0)
        out += embed_pair(first[x], qa, second[y], qb, qubits) * Complex(f.correlators[x][y]);
  for (int x = 0; x < f.settings_first(); ++x)
    if (!f.first_marginals.empty() && f.first_marginals[x] != 0.0)
      out += embed(first[x], qa, qubits) * Complex(f.first_marginals[x]);
  for (int y = 0; y < f.settings_second(); ++y)
    if (!f.second_marginals.empty() && f.second_marginals[y] != 0.0)
      out += embed(second[y], qb, qubits) * Complex(f.second_marginals[y]);
  return out;
}

// ---- support functions ----

std::string to_string(RegionClass c) {
  switch (c) {
    case RegionClass::Local: return "local";
    case RegionClass::Quantum: return "quantum";
    case RegionClass::NoSignalling: return "ns";
    case RegionClass::SeparableOrthogonal: return "separable-orthogonal";
  }
  return "?";
}

std::optional<RegionClass> parse_region_class(std::string_view s) {
  for (auto c : {RegionClass::Local, RegionClass::Quantum, RegionClass::NoSignalling,
                 RegionClass::SeparableOrthogonal})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::vector<double> theta_grid(int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  std::vector<double> t(static_cast<std::size_t>(grid));
  for (int k = 0; k < grid; ++k) t[k] = 2.0 * kPi * k / grid;
  return t;
}

namespace {

void fill_from_behavior(SupportPoint& sp, Behavior b) {
  const auto p = pair_values(b);
  sp.b_ab = p.ab();
  sp.b_ac = p.ac();
  sp.value = std::cos(sp.theta) * sp.b_ab + std::sin(sp.theta) * sp.b_ac;
  sp.argmax = std::move(b);
}

std::vector<Observable> planar_pair(double a0, double a1) {
  return {Observable::planar(a0), Observable::planar(a1)};
}

}  // namespace

std::vector<SupportPoint> local_support(std::span<const double> thetas) {
  const auto vertices = deterministic_behaviors(Scenario::uniform(3, 2, 2));
  std::vector<TradeoffPoint> pts;
  pts.reserve(vertices.size());
  for (const auto& v : vertices) pts.push_back(pair_values(v));
  std::vector<SupportPoint> out;
  for (double th : thetas) {
    std::size_t best = 0;
    double best_val = -lp::kInfinity;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = std::cos(th) * pts[i].ab() + std::sin(th) * pts[i].ac();
      if (v > best_val + 1e-12) {
        best_val = v;
        best = i;
      }
    }
    SupportPoint sp;
    sp.theta = th;
    fill_from_behavior(sp, vertices[best]);
    out.push_back(std::move(sp));
  }
  return out;
}

std::vector<SupportPoint> ns_support(std::span<const double> thetas) {
  const Scenario s = Scenario::uniform(3, 2, 2);
  const auto f = BellFunctional::chsh();
  const auto cab = bell_coefficients(s, f, 0, 1);
  const auto cac = bell_coefficients(s, f, 0, 2);
  const auto base = no_signalling_program(s);
  std::vector<SupportPoint> out(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t k) {
    lp::LinearProgram prog = base;
    prog.objective.resize(s.table_size());
    const double c = std::cos(thetas[k]), sn = std::sin(thetas[k]);
    for (std::size_t e = 0; e < s.table_size(); ++e) prog.objective[e] = c * cab[e] + sn * cac[e];
    const auto res = lp::solve(prog);
    if (res.status != lp::Status::Optimal)
      throw std::runtime_error("no-signalling support LP failed: " + lp::to_string(res.status));
    auto table = res.solution;
    for (double& v : table) v = std::max(v, 0.0);
    SupportPoint sp;
    sp.theta = thetas[k];
    fill_from_behavior(sp, Behavior(s, std::move(table)));
    sp.value = res.objective;
    out[k] = std::move(sp);
  });
  return out;
}

namespace {

ComplexMatrix directional_operator(double theta, std::span<const double> a) {
  const auto f = BellFunctional::chsh();
  const ComplexMatrix oa[] = {Observable::planar(a[0]).op(), Observable::planar(a[1]).op()};
  const ComplexMatrix ob[] = {Observable::planar(a[2]).op(), Observable::planar(a[3]).op()};
  const ComplexMatrix oc[] = {Observable::planar(a[4]).op(), Observable::planar(a[5]).op()};
  return bell_operator(f, oa, 0, ob, 1, 3) * Complex(std::cos(theta)) +
         bell_operator(f, oa, 0, oc, 2, 3) * Complex(std::sin(theta));
}

std::vector<double> uniform_angles(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-kPi, kPi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint64_t out[1];
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  out[0] = (std::uint64_t{parts[0]} << 32) | parts[1];
  return out[0];
}

}  // namespace

std::vector<SupportPoint> quantum_boundary_search(std::span<const double> thetas,
                                                  const SearchOptions& opts) {
  std::vector<SupportPoint> out(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t k) {
    const double th = thetas[k];
    const double sb = std::cos(th) < 0 ? kPi : 0.0;
    const double sc = std::sin(th) < 0 ? kPi : 0.0;
    const double h = kPi / 2, q = kPi / 4;
    // all sigma_z (classical corner) and Tsirelson settings on either pair
    const std::vector<std::vector<double>> seeds = {
        {h, h, h + sb, h + sb, h + sc, h + sc},
        {0, h, q + sb, -q + sb, sc, sc},
        {0, h, sb, sb, q + sc, -q + sc},
    };
    auto objective = [th](std::span<const double> a) {
      return -eig_hermitian(directional_operator(th, a)).values.front();
    };
    std::mt19937_64 rng(mix_seed(opts.seed, k));
    MultiStartOptions ms;
    ms.restarts = opts.restarts;
    ms.agreeing = opts.agreeing;
    const auto best = multistart_minimize(
        objective, [](std::mt19937_64& r) { return uniform_angles(r, 6); }, rng, ms, seeds);

    const auto spec = eig_hermitian(directional_operator(th, best.x));
    StateVector psi(8);
    for (std::size_t i = 0; i < 8; ++i) psi[i] = spec.vectors(i, 0);
    const auto rho = DensityMatrix::pure(psi);
    std::vector<std::vector<Observable>> obs = {planar_pair(best.x[0], best.x[1]),
                                                planar_pair(best.x[2], best.x[3]),
                                                planar_pair(best.x[4], best.x[5])};
    SupportPoint sp;
    sp.theta = th;
    sp.parameters = best.x;
    fill_from_behavior(sp, born_behavior(rho, obs));
    out[k] = std::move(sp);
  });
  return out;
}

namespace {

struct Bloch {
  double x, y, z;
};

Bloch bloch(double t, double p) { return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)}; }

// CHSH of a product state with A = sigma_x, A' = sigma_z on both sides.
double orthogonal_chsh(const Bloch& a, const Bloch& b) {
  return a.x * b.x + a.x * b.z + a.z * b.x - a.z * b.z;
}

StateVector bloch_ket(double t, double p) {
  return {Complex(std::cos(t / 2), 0.0), std::polar(std::sin(t / 2), p)};
}

}  // namespace

std::vector<SupportPoint> separable_orthogonal_support(std::span<const double> thetas,
                                                       const SearchOptions& opts) {
  std::vector<SupportPoint> out(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t k) {
    const double th = thetas[k];
    auto objective = [th](std::span<const double> v) {
      const Bloch a = bloch(v[0], v[1]), b = bloch(v[2], v[3]), c = bloch(v[4], v[5]);
      return -(std::cos(th) * orthogonal_chsh(a, b) + std::sin(th) * orthogonal_chsh(a, c));
    };
    std::mt19937_64 rng(mix_seed(opts.seed, k));
    MultiStartOptions ms;
    ms.restarts = opts.restarts;
    ms.agreeing = opts.agreeing;
    const auto best = multistart_minimize(
        objective, [](std::mt19937_64& r) { return uniform_angles(r, 6); }, rng, ms);
    const StateVector kets[] = {bloch_ket(best.x[0], best.x[1]), bloch_ket(best.x[2], best.x[3]),
                                bloch_ket(best.x[4], best.x[5])};
    const auto rho = DensityMatrix::pure(states::product(kets));
    const double h = kPi / 2;
    std::vector<std::vector<Observable>> obs = {planar_pair(0, h), planar_pair(0, h),
                                                planar_pair(0, h)};
    SupportPoint sp;
    sp.theta = th;
    sp.parameters = best.x;
    fill_from_behavior(sp, born_behavior(rho, obs));
    out[k] = std::move(sp);
  });
  return out;
}

std::pair<double, std::vector<double>> separable_orthogonal_chsh(const SearchOptions& opts) {
  std::pair<double, std::vector<double>> best{-1.0, {}};
  for (double sign : {1.0, -1.0}) {
    auto objective = [sign](std::span<const double> v) {
      return -sign * orthogonal_chsh(bloch(v[0], v[1]), bloch(v[2], v[3]));
    };
    std::mt19937_64 rng(mix_seed(opts.seed, sign > 0 ? 0 : 1));
    MultiStartOptions ms;
    ms.restarts = opts.restarts;
    ms.agreeing = opts.agreeing;
    const auto r = multistart_minimize(
        objective, [](std::mt19937_64& g) { return uniform_angles(g, 4); }, rng, ms);
    if (-r.value > best.first) best = {-r.value, r.x};
  }
  return best;
}

std::vector<SupportPoint> support_sweep(RegionClass c, std::span<const double> thetas,
                                        const SearchOptions& opts) {
  switch (c) {
    case RegionClass::Local: return local_support(thetas);
    case RegionClass::Quantum: return quantum_boundary_search(thetas, opts);
    case RegionClass::NoSignalling: return ns_support(thetas);
    case RegionClass::SeparableOrthogonal: return separable_orthogonal_support(thetas, opts);
  }
  return {};
}

std::string sweep_csv(std::span<const SupportPoint> points, RegionClass c) {
  std::string out = "theta,max_value,class\n";
  char buf[96];
  const std::string name = to_string(c);
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.12f,%.12f,", p.theta, p.value);
    out += buf;
    out += name;
    out += '\n';
  }
  return out;
}

// ---- Collins-Gisin double violation ----

namespace {

struct CgReduced {
  DensityMatrix ab, ac;
};

CgReduced cg_reduced(double mu) {
  const auto rho = DensityMatrix::pure(states::cg(mu));
  const int ab[] = {0, 1};
  const int ac[] = {0, 2};
  return {partial_trace(rho, ab), partial_trace(rho, ac)};
}

CgCandidate cg_evaluate(const CgReduced& red, double mu, std::span<const double> angles) {
  const auto f = BellFunctional::collins_gisin();
  ComplexMatrix oa[3], ob[3], oc[3];
  for (int i = 0; i < 3; ++i) {
    oa[i] = Observable::planar(angles[i]).op();
    ob[i] = Observable::planar(angles[3 + i]).op();
    oc[i] = Observable::planar(angles[6 + i]).op();
  }
  CgCandidate c;
  c.mu = mu;
  std::copy(angles.begin(), angles.begin() + 9, c.angles.begin());
  c.c_ab = expectation(red.ab, bell_operator(f, oa, 0, ob, 1, 2));
  c.c_ac = expectation(red.ac, bell_operator(f, oa, 0, oc, 1, 2));
  return c;
}

double mu_from(double t) { return 0.5 * (1.0 - std::cos(t)); }

}  // namespace

CgCandidate cg_values(double mu, const std::array<double, 9>& angles) {
  return cg_evaluate(cg_reduced(mu), mu, angles);
}

CgSearchResult cg_double_violation_search(std::span<const double> mus, const SearchOptions& opts) {
  if (mus.empty()) throw std::invalid_argument("empty mu grid");
  CgSearchResult result;
  result.per_mu.resize(mus.size());
  MultiStartOptions ms;
  ms.restarts = opts.restarts;
  ms.agreeing = opts.agreeing;
  parallel_for(mus.size(), [&](std::size_t k) {
    const double mu = mus[k];
    const auto red = cg_reduced(mu);
    auto objective = [&](std::span<const double> a) {
      return -cg_evaluate(red, mu, a).min_value();
    };
    std::mt19937_64 rng(mix_seed(opts.seed, k));
    const auto best = multistart_minimize(
        objective, [](std::mt19937_64& r) { return uniform_angles(r, 9); }, rng, ms);
    result.per_mu[k] = cg_evaluate(red, mu, best.x);
  });

  const auto top = std::max_element(result.per_mu.begin(), result.per_mu.end(),
                                    [](const CgCandidate& a, const CgCandidate& b) {
                                      return a.min_value() < b.min_value();
                                    });
  std::vector<double> seed{std::acos(std::clamp(1.0 - 2.0 * top->mu, -1.0, 1.0))};
  seed.insert(seed.end(), top->angles.begin(), top->angles.end());
  auto objective = [](std::span<const double> v) {
    const double mu = mu_from(v[0]);
    return -cg_evaluate(cg_reduced(mu), mu, v.subspan(1)).min_value();
  };
  std::mt19937_64 rng(mix_seed(opts.seed, mus.size()));
  MultiStartOptions refine = ms;
  refine.restarts = 1;
  const auto best = multistart_minimize(
      objective, [](std::mt19937_64& r) { return uniform_angles(r, 10); }, rng, refine, {seed});
  const double mu = mu_from(best.x[0]);
  result.best = cg_evaluate(cg_reduced(mu), mu, std::span<const double>(best.x).subspan(1));
  if (result.best.min_value() < top->min_value()) result.best = *top;
  return result;
}

// ---- four-party probe ----

PbProbeReport pb_probe(const BellFunctional& f) {
  const auto start = std::chrono::steady_clock::now();
  if (f.settings_first() != f.settings_second())
    throw StructuralError("pb_probe needs a functional with equal setting counts");
  const Scenario s = Scenario::uniform(4, f.settings_first(), 2);
  if (s.table_size() > 4096) throw StructuralError("pb_probe scenario exceeds size cap");
  const std::size_t nv = s.table_size();
  const std::array<std::vector<double>, 3> coef = {bell_coefficients(s, f, 0, 1),
                                                   bell_coefficients(s, f, 0, 2),
                                                   bell_coefficients(s, f, 0, 3)};
  const auto base = no_signalling_program(s);

  PbProbeReport rep;
  rep.local_bound = local_bound(f);
  rep.pair_bound = 2.0 * rep.local_bound;
  rep.patterns.resize(8);
  std::vector<Behavior> argmax(9);

  auto values_of = [&](const Behavior& b) {
    return std::array<double, 3>{bell_value(b, f, 0, 1), bell_value(b, f, 0, 2),
                                 bell_value(b, f, 0, 3)};
  };

  parallel_for(9, [&](std::size_t job) {
    lp::LinearProgram prog = base;
    if (job < 8) {
      PbSignPattern& pat = rep.patterns[job];
      for (int i = 0; i < 3; ++i) pat.signs[i] = (job >> (2 - i)) & 1 ? -1 : 1;
      prog.objective.assign(nv, 0.0);
      for (int i = 0; i < 3; ++i)
        for (std::size_t e = 0; e < nv; ++e) prog.objective[e] += pat.signs[i] * coef[i][e];
    } else {
      // variable nv is t, free
      prog.variables = nv + 1;
      for (auto& r : prog.equalities) r.coeffs.push_back(0.0);
      prog.bounds.assign(nv + 1, lp::Bound{});
      prog.bounds[nv] = {-lp::kInfinity, lp::kInfinity};
      prog.objective.assign(nv + 1, 0.0);
      prog.objective[nv] = 1.0;
      for (int other : {1, 2}) {
        lp::Row r{std::vector<double>(nv + 1, 0.0), 0.0};
        for (std::size_t e = 0; e < nv; ++e) r.coeffs[e] = -coef[0][e] - coef[other][e];
        r.coeffs[nv] = 1.0;
        prog.inequalities.push_back(std::move(r));
      }
    }
    const auto res = lp::solve(prog);
    if (res.status != lp::Status::Optimal)
      throw std::runtime_error("pb_probe LP failed: " + lp::to_string(res.status) + " " +
                               res.diagnostics);
    std::vector<double> table(res.solution.begin(), res.solution.begin() + nv);
    for (double& v : table) v = std::max(v, 0.0);
    Behavior b(s, std::move(table));
    if (job < 8) {
      rep.patterns[job].value = res.objective;
      rep.patterns[job].c = values_of(b);
    } else {
      rep.t_star = res.objective;
      rep.t_star_c = values_of(b);
    }
    argmax[job] = std::move(b);
  });

  std::size_t best = 0;
  for (std::size_t j = 1; j < 8; ++j)
    if (rep.patterns[j].value > rep.patterns[best].value + 1e-12) best = j;
  rep.max_abs_sum = rep.patterns[best].value;
  const auto& c = rep.patterns[best].c;
  rep.abs_sum_check = check_pb(c[0], c[1], c[2], rep.local_bound);
  rep.one_sided_max = rep.patterns[0].value;
  rep.abs_sum_argmax = std::move(argmax[best]);
  rep.t_star_argmax = std::move(argmax[8]);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace monogamy
