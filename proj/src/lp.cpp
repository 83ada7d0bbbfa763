#include "monogamy/lp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace monogamy::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

void LinearProgram::validate() const {
  auto check_row = [&](const Row& r, const char* what) {
    if (r.coeffs.size() != variables)
      throw std::invalid_argument(std::string(what) + " row has wrong length");
    for (double v : r.coeffs)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite coefficient");
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("non-finite right-hand side");
  };
  if (!objective.empty() && objective.size() != variables)
    throw std::invalid_argument("objective has wrong length");
  for (double v : objective)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite objective coefficient");
  for (const auto& r : equalities) check_row(r, "equality");
  for (const auto& r : inequalities) check_row(r, "inequality");
  if (!bounds.empty() && bounds.size() != variables)
    throw std::invalid_argument("bounds list has wrong length");
  for (const auto& b : bounds)
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower == kInfinity ||
        b.upper == -kInfinity)
      throw std::invalid_argument("invalid bound");
}

double max_residual(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& a) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
  };
  for (const auto& r : lp.equalities) worst = std::max(worst, std::abs(dot(r.coeffs) - r.rhs));
  for (const auto& r : lp.inequalities) worst = std::max(worst, dot(r.coeffs) - r.rhs);
  for (std::size_t j = 0; j < lp.variables; ++j) {
    const Bound b = lp.bounds.empty() ? Bound{} : lp.bounds[j];
    worst = std::max(worst, b.lower - x[j]);
    worst = std::max(worst, x[j] - b.upper);
  }
  return worst;
}

namespace {

enum class RowType { LessEq, GreaterEq, Equal };

// How an original variable maps onto nonnegative standard columns.
struct VarMap {
  enum Kind { Shift, Flip, Split } kind = Shift;
  std::size_t col = 0;
  double offset = 0.0;  // lower bound (Shift) or upper bound (Flip)
};

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Options& opts) : opts_(opts) { build(lp); }

  LpOutcome run(const LinearProgram& lp);

 private:
  void build(const LinearProgram& lp);
  void set_objective(const std::vector<double>& costs);
  // Returns false on iteration limit or numerical breakdown.
  enum class Phase { Optimal, Unbounded, Failed };
  Phase iterate();
  // Dual simplex on the working column until it is nonnegative. Used after
  // the perturbation is removed, when the basis is still dual feasible.
  bool restore_feasibility();
  void perturb();
  void pivot(std::size_t r, std::size_t j);
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  // Working right-hand side (possibly perturbed) and the exact one; both
  // are carried through every pivot.
  std::size_t rhs_col() const { return width_ - 2; }
  std::size_t true_col() const { return width_ - 1; }
  bool is_artificial(std::size_t j) const { return j >= art_begin_ && j < rhs_col(); }
  std::vector<double> original_solution() const;
  void dump(const char* label) const;

  const Options& opts_;
  std::size_t n_orig_ = 0;
  std::size_t n_std_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t m_ = 0;
  std::size_t width_ = 0;
  std::vector<VarMap> vars_;
  std::vector<double> std_costs_;
  std::vector<double> t_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
  std::vector<char> col_live_;
  std::vector<char> row_live_;
  std::vector<std::size_t> nz_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
  std::string failure_;
  std::mt19937_64 rng_{0x5eed};
};

void Tableau::build(const LinearProgram& lp) {
  n_orig_ = lp.variables;
  vars_.resize(n_orig_);
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (std col, limit)
  std::size_t col = 0;
  for (std::size_t j = 0; j < n_orig_; ++j) {
    const Bound b = lp.bounds.empty() ? Bound{} : lp.bounds[j];
    if (std::isfinite(b.lower)) {
      vars_[j] = {VarMap::Shift, col++, b.lower};
      if (std::isfinite(b.upper)) upper_rows.emplace_back(vars_[j].col, b.upper - b.lower);
    } else if (std::isfinite(b.upper)) {
      vars_[j] = {VarMap::Flip, col++, b.upper};
    } else {
      vars_[j] = {VarMap::Split, col, 0.0};
      col += 2;
    }
  }
  n_std_ = col;

  std_costs_.assign(n_std_, 0.0);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) {
    const auto& v = vars_[j];
    switch (v.kind) {
      case VarMap::Shift: std_costs_[v.col] += lp.objective[j]; break;
      case VarMap::Flip: std_costs_[v.col] -= lp.objective[j]; break;
      case VarMap::Split:
        std_costs_[v.col] += lp.objective[j];
        std_costs_[v.col + 1] -= lp.objective[j];
        break;
    }
  }

  struct Pending {
    const Row* row;
    std::size_t upper_col;
    double upper_limit;
    RowType type;
    double sign;
    double rhs;
  };
  std::vector<Pending> rows;
  auto shifted_rhs = [&](const Row& r) {
    double rhs = r.rhs;
    for (std::size_t j = 0; j < n_orig_; ++j) {
      if (r.coeffs[j] == 0.0) continue;
      if (vars_[j].kind != VarMap::Split) rhs -= r.coeffs[j] * vars_[j].offset;
    }
    return rhs;
  };
  for (const auto& r : lp.equalities) rows.push_back({&r, 0, 0.0, RowType::Equal, 1.0, shifted_rhs(r)});
  for (const auto& r : lp.inequalities)
    rows.push_back({&r, 0, 0.0, RowType::LessEq, 1.0, shifted_rhs(r)});
  for (const auto& [c, lim] : upper_rows) rows.push_back({nullptr, c, lim, RowType::LessEq, 1.0, lim});

  std::size_t slacks = 0, arts = 0;
  for (auto& p : rows) {
    if (p.rhs < 0.0) {
      p.sign = -1.0;
      p.rhs = -p.rhs;
      if (p.type == RowType::LessEq) p.type = RowType::GreaterEq;
    }
    if (p.type != RowType::Equal) ++slacks;
    if (p.type != RowType::LessEq) ++arts;
  }

  m_ = rows.size();
  art_begin_ = n_std_ + slacks;
  width_ = art_begin_ + arts + 2;
  t_.assign(m_ * width_, 0.0);
  basis_.assign(m_, 0);
  col_live_.assign(rhs_col(), 1);
  row_live_.assign(m_, 1);

  std::size_t next_slack = n_std_, next_art = art_begin_;
  for (std::size_t i = 0; i < m_; ++i) {
    const auto& p = rows[i];
    double* row = &t_[i * width_];
    if (p.row) {
      for (std::size_t j = 0; j < n_orig_; ++j) {
        const double a = p.row->coeffs[j];
        if (a == 0.0) continue;
        const auto& v = vars_[j];
        switch (v.kind) {
          case VarMap::Shift: row[v.col] += p.sign * a; break;
          case VarMap::Flip: row[v.col] -= p.sign * a; break;
          case VarMap::Split:
            row[v.col] += p.sign * a;
            row[v.col + 1] -= p.sign * a;
            break;
        }
      }
    } else {
      row[p.upper_col] = p.sign;
    }
    row[rhs_col()] = p.rhs;
    row[true_col()] = p.rhs;
    switch (p.type) {
      case RowType::LessEq:
        row[next_slack] = 1.0;
        basis_[i] = next_slack++;
        break;
      case RowType::GreaterEq:
        row[next_slack++] = -1.0;
        row[next_art] = 1.0;
        basis_[i] = next_art++;
        break;
      case RowType::Equal:
        row[next_art] = 1.0;
        basis_[i] = next_art++;
        break;
    }
  }
  nz_.reserve(width_);
  max_iterations_ = opts_.max_iterations ? opts_.max_iterations : 50 * (m_ + width_) + 1000;
}

void Tableau::set_objective(const std::vector<double>& costs) {
  obj_.assign(width_, 0.0);
  for (std::size_t j = 0; j < rhs_col(); ++j) obj_[j] = -costs[j];
  for (std::size_t i = 0; i < m_; ++i) {
    if (!row_live_[i]) continue;
    const double cb = costs[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &t_[i * width_];
    for (std::size_t j = 0; j < width_; ++j) obj_[j] += cb * row[j];
  }
}

void Tableau::pivot(std::size_t r, std::size_t j) {
  double* prow = &t_[r * width_];
  const double inv = 1.0 / prow[j];
  nz_.clear();
  for (std::size_t k = 0; k < width_; ++k) {
    if (prow[k] == 0.0) continue;
    if (k < rhs_col() && !col_live_[k]) continue;
    prow[k] *= inv;
    nz_.push_back(k);
  }
  prow[j] = 1.0;

  auto eliminate = [&](double* row) {
    const double f = row[j];
    if (f == 0.0) return;
    for (std::size_t k : nz_) {
      double v = row[k] - f * prow[k];
      if (std::abs(v) < 1e-14) v = 0.0;
      row[k] = v;
    }
    row[j] = 0.0;
  };
  for (std::size_t i = 0; i < m_; ++i) {
    if (i == r || !row_live_[i]) continue;
    eliminate(&t_[i * width_]);
  }
  eliminate(obj_.data());

  if (is_artificial(basis_[r])) col_live_[basis_[r]] = 0;
  basis_[r] = j;
  ++iterations_;
}

Tableau::Phase Tableau::iterate() {
  std::size_t degenerate_run = 0;
  for (;;) {
    if (iterations_ >= max_iterations_) {
      failure_ = "iteration limit " + std::to_string(max_iterations_) + " reached";
      return Phase::Failed;
    }
    const bool bland = degenerate_run >= opts_.bland_after;

    std::size_t enter = width_;
    double best = -opts_.optimality_tol;
    for (std::size_t j = 0; j < rhs_col(); ++j) {
      if (!col_live_[j]) continue;
      const double rc = obj_[j];
      if (!std::isfinite(rc)) {
        failure_ = "non-finite reduced cost";
        return Phase::Failed;
      }
      if (rc < best) {
        enter = j;
        if (bland) break;
        best = rc;
      }
    }
    if (enter == width_) return Phase::Optimal;

    // Harris two-pass ratio test: bound the step with a small feasibility
    // allowance, then take the largest pivot inside that bound.
    constexpr double kHarris = 1e-9;
    double bound = kInfinity;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_live_[i]) continue;
      const double a = at(i, enter);
      if (a > opts_.pivot_tol) bound = std::min(bound, (std::max(at(i, rhs_col()), 0.0) + kHarris) / a);
    }
    std::size_t leave = m_;
    double best_ratio = kInfinity;
    double best_piv = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_live_[i]) continue;
      const double a = at(i, enter);
      if (a <= opts_.pivot_tol) continue;
      const double ratio = std::max(at(i, rhs_col()), 0.0) / a;
      if (ratio > bound) continue;
      const bool take = leave == m_ || (bland ? basis_[i] < basis_[leave] : a > best_piv);
      if (take) {
        leave = i;
        best_ratio = ratio;
        best_piv = a;
      }
    }
    if (leave == m_) return Phase::Unbounded;

    degenerate_run = best_ratio <= 1e-12 ? degenerate_run + 1 : 0;
    pivot(leave, enter);
    if (!std::isfinite(obj_[rhs_col()])) {
      failure_ = "numerical breakdown after pivot";
      return Phase::Failed;
    }
  }
}

void Tableau::perturb() {
  if (opts_.perturbation <= 0.0) return;
  std::uniform_real_distribution<double> u(1.0, 2.0);
  for (std::size_t i = 0; i < m_; ++i) {
    if (!row_live_[i]) continue;
    at(i, rhs_col()) += opts_.perturbation * u(rng_);
  }
}

bool Tableau::restore_feasibility() {
  for (std::size_t i = 0; i < m_; ++i)
    if (row_live_[i]) at(i, rhs_col()) = at(i, true_col());
  obj_[rhs_col()] = obj_[true_col()];
  constexpr double kPrimalTol = 1e-9;
  for (;;) {
    if (iterations_ >= max_iterations_) {
      failure_ = "iteration limit " + std::to_string(max_iterations_) + " reached in cleanup";
      return false;
    }
    std::size_t r = m_;
    double worst = -kPrimalTol;
    for (std::size_t i = 0; i < m_; ++i)
      if (row_live_[i] && at(i, rhs_col()) < worst) {
        worst = at(i, rhs_col());
        r = i;
      }
    if (r == m_) break;
    std::size_t enter = width_;
    double best = kInfinity, best_piv = 0.0;
    for (std::size_t j = 0; j < rhs_col(); ++j) {
      if (!col_live_[j]) continue;
      const double a = at(r, j);
      if (a >= -opts_.pivot_tol) continue;
      const double ratio = std::max(obj_[j], 0.0) / -a;
      if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && -a > best_piv)) {
        best = std::min(best, ratio);
        best_piv = -a;
        enter = j;
      }
    }
    if (enter == width_) {
      failure_ = "no entering column while restoring feasibility";
      return false;
    }
    pivot(r, enter);
  }
  for (std::size_t i = 0; i < m_; ++i)
    if (row_live_[i]) {
      double& v = at(i, rhs_col());
      if (v < 0.0) v = 0.0;
      at(i, true_col()) = v;
    }
  return true;
}

std::vector<double> Tableau::original_solution() const {
  std::vector<double> xs(rhs_col(), 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    if (row_live_[i]) xs[basis_[i]] = at(i, rhs_col());
  std::vector<double> x(n_orig_);
  for (std::size_t j = 0; j < n_orig_; ++j) {
    const auto& v = vars_[j];
    switch (v.kind) {
      case VarMap::Shift: x[j] = v.offset + xs[v.col]; break;
      case VarMap::Flip: x[j] = v.offset - xs[v.col]; break;
      case VarMap::Split: x[j] = xs[v.col] - xs[v.col + 1]; break;
    }
  }
  return x;
}

void Tableau::dump(const char* label) const {
  if (!opts_.trace) return;
  std::ostream& os = *opts_.trace;
  os << "# tableau " << label << " (" << m_ << " x " << width_ << ")\n";
  os << std::setprecision(6);
  for (std::size_t i = 0; i < m_; ++i) {
    if (!row_live_[i]) continue;
    os << "x" << basis_[i] << " |";
    for (std::size_t j = 0; j < width_; ++j) os << ' ' << at(i, j);
    os << '\n';
  }
  os << "obj |";
  for (double v : obj_) os << ' ' << v;
  os << '\n';
}

LpOutcome Tableau::run(const LinearProgram& lp) {
  LpOutcome out;
  const std::size_t total_cols = rhs_col();

  std::vector<double> phase1(total_cols, 0.0);
  for (std::size_t j = art_begin_; j < total_cols; ++j) phase1[j] = -1.0;
  set_objective(phase1);
  perturb();
  Phase p = iterate();
  if (p != Phase::Failed && !restore_feasibility()) p = Phase::Failed;
  dump("after phase one");
  if (p == Phase::Failed) {
    out.status = Status::NumericalFailure;
    out.diagnostics = "phase one: " + failure_;
    out.solution = original_solution();
    out.iterations = iterations_;
    return out;
  }
  out.infeasibility = std::max(0.0, -obj_[rhs_col()]);
  if (out.infeasibility > opts_.feasibility_tol) {
    out.status = Status::Infeasible;
    out.solution = original_solution();
    out.iterations = iterations_;
    std::ostringstream msg;
    msg << "phase-one minimum " << out.infeasibility << " exceeds tolerance "
        << opts_.feasibility_tol;
    out.diagnostics = msg.str();
    return out;
  }

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are linearly dependent on the others and are dropped.
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < m_; ++i) {
    if (!row_live_[i] || !is_artificial(basis_[i])) continue;
    at(i, rhs_col()) = 0.0;
    at(i, true_col()) = 0.0;
    std::size_t best_j = width_;
    double best_a = 1e-7;
    for (std::size_t j = 0; j < art_begin_; ++j) {
      if (!col_live_[j]) continue;
      const double a = std::abs(at(i, j));
      if (a > best_a) {
        best_a = a;
        best_j = j;
      }
    }
    if (best_j < width_) {
      pivot(i, best_j);
    } else {
      col_live_[basis_[i]] = 0;
      row_live_[i] = 0;
      ++dropped;
    }
  }
  for (std::size_t j = art_begin_; j < total_cols; ++j) col_live_[j] = 0;

  if (!opts_.phase_one_only) {
    std::vector<double> costs(total_cols, 0.0);
    std::copy(std_costs_.begin(), std_costs_.end(), costs.begin());
    set_objective(costs);
    perturb();
    p = iterate();
    if (p == Phase::Optimal && !restore_feasibility()) p = Phase::Failed;
    dump("after phase two");
    if (p == Phase::Failed) {
      out.status = Status::NumericalFailure;
      out.diagnostics = "phase two: " + failure_;
      out.solution = original_solution();
      out.iterations = iterations_;
      return out;
    }
    out.status = p == Phase::Unbounded ? Status::Unbounded : Status::Optimal;
  } else {
    out.status = Status::Optimal;
  }
  if (p == Phase::Unbounded) {
    for (std::size_t i = 0; i < m_; ++i) at(i, rhs_col()) = at(i, true_col());
  }

  out.solution = original_solution();
  out.iterations = iterations_;
  out.max_residual = max_residual(lp, out.solution);
  if (!lp.objective.empty() && !opts_.phase_one_only) {
    double z = 0.0;
    for (std::size_t j = 0; j < n_orig_; ++j) z += lp.objective[j] * out.solution[j];
    out.objective = out.status == Status::Unbounded ? kInfinity : z;
  }
  if (dropped) out.diagnostics = std::to_string(dropped) + " redundant rows dropped";
  if (out.status == Status::Optimal && out.max_residual > 10.0 * opts_.feasibility_tol) {
    std::ostringstream msg;
    msg << "solution residual " << out.max_residual << " exceeds 10*tol";
    out.status = Status::NumericalFailure;
    out.diagnostics = msg.str();
  }
  return out;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp, const Options& opts) {
  lp.validate();
  Tableau t(lp, opts);
  return t.run(lp);
}

LpOutcome solve(const LinearProgram& lp, double tol) {
  Options o;
  o.feasibility_tol = tol;
  return solve(lp, o);
}

LpOutcome feasibility(std::vector<Row> equalities, std::vector<Row> inequalities,
                      std::vector<Bound> bounds, std::size_t variables, double tol) {
  LinearProgram lp;
  lp.variables = variables;
  lp.equalities = std::move(equalities);
  lp.inequalities = std::move(inequalities);
  lp.bounds = std::move(bounds);
  Options o;
  o.feasibility_tol = tol;
  o.phase_one_only = true;
  return solve(lp, o);
}

}  // namespace monogamy::lp
