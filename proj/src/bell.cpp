#include "monogamy/bell.hpp"

namespace monogamy {

namespace {

void check_pair(const Scenario& s, const BellFunctional& f, int first, int second) {
  if (first == second || first < 0 || second < 0 || first >= s.parties() ||
      second >= s.parties())
    throw StructuralError("invalid party pair for Bell functional");
  if (s.settings(first) != f.settings_first() || s.settings(second) != f.settings_second() ||
      s.outcomes(first) != 2 || s.outcomes(second) != 2)
    throw StructuralError("Bell functional arity does not match scenario");
  if (static_cast<int>(f.first_marginals.size()) != f.settings_first() ||
      static_cast<int>(f.second_marginals.size()) != f.settings_second())
    throw StructuralError("Bell functional marginal terms have wrong length");
}

}  // namespace

Scenario BellFunctional::scenario() const {
  return Scenario({settings_first(), settings_second()}, {2, 2});
}

BellFunctional BellFunctional::chsh() {
  return {"CHSH", {{1.0, 1.0}, {1.0, -1.0}}, {0.0, 0.0}, {0.0, 0.0}};
}

BellFunctional BellFunctional::collins_gisin() {
  // rows x = A, A', A''; columns y = B, B', B''
  return {"CG",
          {{1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}, {1.0, -1.0, 0.0}},
          {1.0, 1.0, 0.0},
          {-1.0, -1.0, 0.0}};
}

BellFunctional BellFunctional::zero(int settings_first, int settings_second) {
  return {"zero",
          std::vector<std::vector<double>>(static_cast<std::size_t>(settings_first),
                                           std::vector<double>(static_cast<std::size_t>(settings_second), 0.0)),
          std::vector<double>(static_cast<std::size_t>(settings_first), 0.0),
          std::vector<double>(static_cast<std::size_t>(settings_second), 0.0)};
}

double bell_value(const Behavior& b, const BellFunctional& f) {
  if (b.scenario().parties() != 2) throw StructuralError("two-party behavior expected");
  return bell_value(b, f, 0, 1);
}

double bell_value(const Behavior& b, const BellFunctional& f, int first, int second) {
  const Scenario& s = b.scenario();
  check_pair(s, f, first, second);
  std::vector<int> ctx(static_cast<std::size_t>(s.parties()), 0);
  const int pair[] = {first, second};
  const int only_first[] = {first};
  const int only_second[] = {second};
  double v = 0.0;
  for (int x = 0; x < f.settings_first(); ++x)
    for (int y = 0; y < f.settings_second(); ++y) {
      if (f.correlators[x][y] == 0.0) continue;
      ctx[first] = x;
      ctx[second] = y;
      v += f.correlators[x][y] * correlator(b, ctx, pair);
    }
  ctx[first] = ctx[second] = 0;
  for (int x = 0; x < f.settings_first(); ++x) {
    if (f.first_marginals[x] == 0.0) continue;
    ctx[first] = x;
    v += f.first_marginals[x] * correlator(b, ctx, only_first);
  }
  ctx[first] = 0;
  for (int y = 0; y < f.settings_second(); ++y) {
    if (f.second_marginals[y] == 0.0) continue;
    ctx[second] = y;
    v += f.second_marginals[y] * correlator(b, ctx, only_second);
  }
  return v;
}

std::vector<double> bell_coefficients(const Scenario& s, const BellFunctional& f, int first,
                                      int second) {
  check_pair(s, f, first, second);
  std::vector<double> c(s.table_size(), 0.0);
  const std::size_t nout = s.outcome_count();
  std::vector<int> ctx(static_cast<std::size_t>(s.parties()), 0);
  auto add = [&](double coeff, bool use_first, bool use_second) {
    const std::size_t ci = s.context_index(ctx);
    for (std::size_t o = 0; o < nout; ++o) {
      const auto out = s.outcome(o);
      int sign = 1;
      if (use_first) sign *= outcome_sign(out[first]);
      if (use_second) sign *= outcome_sign(out[second]);
      c[ci * nout + o] += coeff * sign;
    }
  };
  for (int x = 0; x < f.settings_first(); ++x)
    for (int y = 0; y < f.settings_second(); ++y) {
      if (f.correlators[x][y] == 0.0) continue;
      ctx[first] = x;
      ctx[second] = y;
      add(f.correlators[x][y], true, true);
    }
  ctx[first] = ctx[second] = 0;
  for (int x = 0; x < f.settings_first(); ++x) {
    if (f.first_marginals[x] == 0.0) continue;
    ctx[first] = x;
    add(f.first_marginals[x], true, false);
  }
  ctx[first] = 0;
  for (int y = 0; y < f.settings_second(); ++y) {
    if (f.second_marginals[y] == 0.0) continue;
    ctx[second] = y;
    add(f.second_marginals[y], false, true);
  }
  return c;
}

}  // namespace monogamy
