// Local polytope: deterministic strategies, local-model decomposition and
// local Bell bounds.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "monogamy/model.hpp"

namespace monogamy {

struct BellFunctional;

inline constexpr std::size_t kStrategyCap = 1'000'000;

/// response[party][setting] = outcome
struct DeterministicStrategy {
  std::vector<std::vector<int>> response;
};

/// Number of deterministic strategies, prod_j outcomes_j^settings_j.
/// Throws StructuralError above `cap`.
std::size_t strategy_count(const Scenario& s, std::size_t cap = kStrategyCap);

/// All strategies in lexicographic order (party 0 most significant).
std::vector<DeterministicStrategy> deterministic_strategies(const Scenario& s,
                                                            std::size_t cap = kStrategyCap);
std::vector<Behavior> deterministic_behaviors(const Scenario& s, std::size_t cap = kStrategyCap);

struct LocalModel {
  std::vector<DeterministicStrategy> strategies;  // support of the weights
  std::vector<double> weights;
  double reconstruction_error = 0.0;  // max entry-wise |sum w D - b|

  Behavior reconstruct(const Scenario& s) const;
};

struct NotLocal {
  /// Minimized L1 violation of the decomposition equalities. Diagnostic only.
  double score = 0.0;
};

struct LocalDecomposition {
  std::optional<LocalModel> model;
  std::optional<NotLocal> not_local;
  bool is_local() const { return model.has_value(); }
};

/// Searches weights p(lambda) >= 0 over all deterministic strategies with
/// sum_lambda p(lambda) D_lambda == b. Throws std::runtime_error if the LP
/// breaks down numerically.
LocalDecomposition local_decomposition(const Behavior& b, double tol = 1e-7,
                                       std::size_t cap = kStrategyCap);

/// Largest value of the functional over the local set (vertex maximum,
/// one-sided). `s` must be the two-party dichotomic scenario with the
/// functional's setting counts; the one-argument form builds it.
double local_bound(const BellFunctional& f, const Scenario& s);
double local_bound(const BellFunctional& f);

}  // namespace monogamy
