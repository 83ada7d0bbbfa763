// Derivative-free minimization (Nelder-Mead simplex) with random restarts.
#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace monogamy {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  std::size_t max_evaluations = 4000;
  /// Stop when the spread of simplex values falls below this.
  double value_tol = 1e-13;
  double initial_step = 0.6;
  /// Re-seed a fresh simplex around the best point this many times.
  int rebuilds = 2;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& opts = {});

struct MultiStartOptions {
  int restarts = 50;
  /// Stop early once this many restarts land within `agree_tol` of the best
  /// value found so far (0 disables).
  int agreeing = 0;
  double agree_tol = 1e-9;
  NelderMeadOptions local;
};

/// Minimizes from `restarts` starting points drawn by `sample`; the first
/// entries of `seeds` are used before any random draw.
OptimizeResult multistart_minimize(const Objective& f,
                                   const std::function<std::vector<double>(std::mt19937_64&)>& sample,
                                   std::mt19937_64& rng, const MultiStartOptions& opts = {},
                                   const std::vector<std::vector<double>>& seeds = {});

}  // namespace monogamy
