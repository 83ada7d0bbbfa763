// N-shareability of bipartite behaviors with respect to the second party,
// plus the linear encoding of the no-signalling polytope it relies on.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "monogamy/lp.hpp"
#include "monogamy/model.hpp"

namespace monogamy {

// ---- no-signalling polytope as linear equalities over the table ----

/// One row per context: entries of the context sum to 1.
std::vector<lp::Row> normalization_rows(const Scenario& s);

/// For every party k, every setting x > 0 of k, every context of the other
/// parties and every outcome vector of the other parties:
///   sum_{a_k} P(..a_k..|..x..) - sum_{a_k} P(..a_k..|..0..) = 0.
/// Comparing against setting 0 implies equality for every setting pair.
std::vector<lp::Row> no_signalling_rows(const Scenario& s);

/// Feasible set = no-signalling behaviors on `s`; zero objective.
lp::LinearProgram no_signalling_program(const Scenario& s);

// ---- shareability ----

enum class ShareMode { Unrestricted, NoSignalling };

inline constexpr std::size_t kExtensionVariableCap = 2048;

struct ExtensionSpec {
  Behavior base;  // two parties: a and b
  int clones = 1;
  ShareMode mode = ShareMode::NoSignalling;
  double tol = lp::kDefaultFeasibilityTol;
};

/// Scenario of party a followed by `clones` copies of party b.
Scenario extension_scenario(const Scenario& base, int clones);

struct ExtensionCertificate {
  Behavior extension;
  int clones = 0;
  ShareMode mode = ShareMode::NoSignalling;
  /// max |E(x) - E(sigma x)| over adjacent clone transpositions, which
  /// generate every clone permutation. Each transposition swaps outcome
  /// and setting of the two clones together.
  double symmetry_residual = 0.0;
  /// max over clones i and full contexts of |P(a,b_i|...) - target|.
  double marginal_residual = 0.0;
  /// Largest no-signalling violation of the extension (informational in
  /// unrestricted mode).
  double signalling = 0.0;
};

/// Recomputes every residual of `extension` against `base` independently of
/// how the extension was produced.
ExtensionCertificate verify_extension(const Behavior& base, Behavior extension, int clones,
                                      ShareMode mode);

/// Delta construction
///   P(a,b_1..b_N|A,B_1..B_N) = P(a,b_1|A,B_1..B_N) delta_{b_1 b_2} ... delta_{b_1 b_N}
/// The base is lifted to N+1 settings symmetrically: P(a,b|A,B_1..B_N) :=
/// base(a,b|A, min_i B_i), which equals the base whenever all clones share a
/// setting. Residuals come out exactly zero.
ExtensionCertificate unrestricted_extension(const Behavior& base, int clones);

/// Target two-party distribution of clone marginals in unrestricted mode.
double lifted_base(const Behavior& base, int a, int b, int setting_a,
                   std::span<const int> clone_settings);

struct ExtensionResult {
  std::optional<ExtensionCertificate> certificate;
  /// 0 when feasible, else the phase-one violation.
  double score = 0.0;
  bool feasible() const { return certificate.has_value(); }
};

/// LP feasibility for a symmetric no-signalling (N+1)-party extension whose
/// (a, b_1) marginal is the base. Throws StructuralError if the base is not
/// a two-party no-signalling behavior or the LP exceeds `variable_cap`;
/// throws std::runtime_error on LP breakdown.
ExtensionResult ns_extension(const Behavior& base, int clones,
                             double tol = lp::kDefaultFeasibilityTol,
                             std::size_t variable_cap = kExtensionVariableCap);

struct ShareabilityResult {
  bool shareable = false;
  double score = 0.0;
};

ShareabilityResult is_n_shareable(const Behavior& base, int clones, ShareMode mode,
                                  double tol = lp::kDefaultFeasibilityTol);
ExtensionResult extend(const ExtensionSpec& spec);

/// Discards the last clone of a no-signalling certificate (setting 0) and
/// re-verifies the result as an (N-1)-clone certificate.
ExtensionCertificate drop_last_clone(const Behavior& base, const ExtensionCertificate& cert);

}  // namespace monogamy
