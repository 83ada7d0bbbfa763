#include "monogamy/localpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monogamy/bell.hpp"
#include "monogamy/lp.hpp"

namespace monogamy {

std::size_t strategy_count(const Scenario& s, std::size_t cap) {
  std::size_t count = 1;
  for (int p = 0; p < s.parties(); ++p)
    for (int x = 0; x < s.settings(p); ++x) {
      count *= static_cast<std::size_t>(s.outcomes(p));
      if (count > cap) throw StructuralError("deterministic strategy count exceeds cap");
    }
  return count;
}

std::vector<DeterministicStrategy> deterministic_strategies(const Scenario& s, std::size_t cap) {
  const std::size_t count = strategy_count(s, cap);
  std::vector<DeterministicStrategy> out;
  out.reserve(count);
  DeterministicStrategy cur;
  for (int p = 0; p < s.parties(); ++p)
    cur.response.emplace_back(static_cast<std::size_t>(s.settings(p)), 0);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(cur);
    // odometer increment, last digit fastest
    for (int p = s.parties(); p-- > 0;) {
      bool carried = false;
      for (int x = s.settings(p); x-- > 0;) {
        if (++cur.response[p][x] < s.outcomes(p)) {
          carried = true;
          break;
        }
        cur.response[p][x] = 0;
      }
      if (carried) break;
    }
  }
  return out;
}

std::vector<Behavior> deterministic_behaviors(const Scenario& s, std::size_t cap) {
  const auto strategies = deterministic_strategies(s, cap);
  std::vector<Behavior> out;
  out.reserve(strategies.size());
  for (const auto& st : strategies) out.push_back(deterministic_box(s, st.response));
  return out;
}

Behavior LocalModel::reconstruct(const Scenario& s) const {
  std::vector<double> table(s.table_size(), 0.0);
  for (std::size_t l = 0; l < strategies.size(); ++l) {
    const Behavior d = deterministic_box(s, strategies[l].response);
    for (std::size_t e = 0; e < table.size(); ++e) table[e] += weights[l] * d.table()[e];
  }
  return Behavior(s, std::move(table));
}

LocalDecomposition local_decomposition(const Behavior& b, double tol, std::size_t cap) {
  const Scenario& s = b.scenario();
  const auto strategies = deterministic_strategies(s, cap);
  const std::size_t nv = strategies.size();
  const std::size_t nout = s.outcome_count();

  // Entry e of D_lambda is 1 exactly when the strategy's outcome vector in
  // context c equals the entry's outcome vector.
  std::vector<lp::Row> eqs(s.table_size(), lp::Row{std::vector<double>(nv, 0.0), 0.0});
  for (std::size_t e = 0; e < s.table_size(); ++e) eqs[e].rhs = b.table()[e];
  std::vector<int> out(static_cast<std::size_t>(s.parties()));
  for (std::size_t l = 0; l < nv; ++l)
    for (std::size_t c = 0; c < s.context_count(); ++c) {
      const auto ctx = s.context(c);
      for (int p = 0; p < s.parties(); ++p) out[p] = strategies[l].response[p][ctx[p]];
      eqs[c * nout + s.outcome_index(out)].coeffs[l] = 1.0;
    }
  lp::Row norm{std::vector<double>(nv, 1.0), 1.0};
  eqs.push_back(std::move(norm));

  const auto res = lp::feasibility(std::move(eqs), {}, {}, nv, tol);
  LocalDecomposition dec;
  if (res.status == lp::Status::Infeasible) {
    dec.not_local = NotLocal{res.infeasibility};
    return dec;
  }
  if (res.status != lp::Status::Optimal)
    throw std::runtime_error("local decomposition LP failed: " + res.diagnostics);

  LocalModel model;
  for (std::size_t l = 0; l < nv; ++l) {
    const double w = std::max(res.solution[l], 0.0);
    if (w > 0.0) {
      model.strategies.push_back(strategies[l]);
      model.weights.push_back(w);
    }
  }
  const Behavior rec = model.reconstruct(s);
  for (std::size_t e = 0; e < s.table_size(); ++e)
    model.reconstruction_error =
        std::max(model.reconstruction_error, std::abs(rec.table()[e] - b.table()[e]));
  dec.model = std::move(model);
  return dec;
}

double local_bound(const BellFunctional& f, const Scenario& s) {
  if (!(s == f.scenario())) throw StructuralError("functional does not match scenario");
  double best = -lp::kInfinity;
  for (const auto& d : deterministic_behaviors(s)) best = std::max(best, bell_value(d, f));
  return best;
}

double local_bound(const BellFunctional& f) { return local_bound(f, f.scenario()); }

}  // namespace monogamy
