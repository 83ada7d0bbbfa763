// Dense two-phase primal simplex.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace monogamy::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultFeasibilityTol = 1e-7;

struct Bound {
  double lower = 0.0;
  double upper = kInfinity;
};

struct Row {
  std::vector<double> coeffs;
  double rhs = 0.0;
};

/// maximize objective·x subject to
///   equalities:   coeffs·x == rhs
///   inequalities: coeffs·x <= rhs
///   bounds:       lower <= x <= upper   (empty list means x >= 0)
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<double> objective;  // empty means the zero objective
  std::vector<Row> equalities;
  std::vector<Row> inequalities;
  std::vector<Bound> bounds;

  /// Throws std::invalid_argument on ragged rows or non-finite data.
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

std::string to_string(Status s);

struct Options {
  /// Phase one declares infeasibility when its minimum exceeds this.
  double feasibility_tol = kDefaultFeasibilityTol;
  double pivot_tol = 1e-9;
  double optimality_tol = 1e-9;
  /// 0 picks a limit from the problem size.
  std::size_t max_iterations = 0;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t bland_after = 50;
  /// Size of the random right-hand-side shift used against degeneracy; the
  /// exact values are restored (with dual simplex cleanup) after each phase.
  /// 0 disables it.
  double perturbation = 1e-7;
  /// Stop after phase one (pure feasibility).
  bool phase_one_only = false;
  /// When set, the tableau is dumped as text at the end of each phase.
  std::ostream* trace = nullptr;
};

struct LpOutcome {
  Status status = Status::NumericalFailure;
  std::vector<double> solution;
  double objective = 0.0;
  /// Largest violation of any constraint or bound at `solution`,
  /// re-evaluated on the original program.
  double max_residual = 0.0;
  /// Minimum of the phase-one objective (total artificial infeasibility).
  /// Zero up to tolerance unless the status is Infeasible.
  double infeasibility = 0.0;
  std::size_t iterations = 0;
  std::string diagnostics;

  bool feasible() const { return status == Status::Optimal || status == Status::Unbounded; }
};

LpOutcome solve(const LinearProgram& lp, const Options& opts = {});
LpOutcome solve(const LinearProgram& lp, double tol);

/// Phase one only. A feasible program comes back as Optimal with the zero
/// objective; an infeasible one as Infeasible with `infeasibility` set to
/// the minimized total violation.
LpOutcome feasibility(std::vector<Row> equalities, std::vector<Row> inequalities,
                      std::vector<Bound> bounds, std::size_t variables,
                      double tol = kDefaultFeasibilityTol);

/// Largest constraint or bound violation of `x` on `lp`.
double max_residual(const LinearProgram& lp, std::span<const double> x);

}  // namespace monogamy::lp
