// Two-party Bell functionals over dichotomic settings.
#pragma once

#include <string>
#include <vector>

#include "monogamy/model.hpp"

namespace monogamy {

/// sum_xy correlators[x][y] <A_x B_y> + sum_x first[x] <A_x> + sum_y second[y] <B_y>
struct BellFunctional {
  std::string name;
  std::vector<std::vector<double>> correlators;
  std::vector<double> first_marginals;
  std::vector<double> second_marginals;

  int settings_first() const { return static_cast<int>(correlators.size()); }
  int settings_second() const {
    return correlators.empty() ? 0 : static_cast<int>(correlators.front().size());
  }
  /// Two-party dichotomic scenario the functional lives on.
  Scenario scenario() const;

  /// AB + AB' + A'B - A'B'
  static BellFunctional chsh();
  /// AB + A'B + A''B + AB' + A'B' + AB'' - A''B' - A'B'' + A + A' - B - B'
  static BellFunctional collins_gisin();
  static BellFunctional zero(int settings_first, int settings_second);
};

/// Value on a two-party behavior.
double bell_value(const Behavior& b, const BellFunctional& f);

/// Value on the (first, second) pair of a multi-party behavior, with every
/// other party held at setting 0. Single-party terms of `first` are taken
/// with `second` at setting 0 and vice versa.
double bell_value(const Behavior& b, const BellFunctional& f, int first, int second);

/// Coefficient vector c over the table with c·table == bell_value(b, f,
/// first, second) for every behavior b on `s`.
std::vector<double> bell_coefficients(const Scenario& s, const BellFunctional& f,
                                      int first, int second);

}  // namespace monogamy
