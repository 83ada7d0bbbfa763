// Measurement scenarios and behaviors: conditional probability tables
// P(a_1..a_N | A_1..A_N) with validation, no-signalling tests, marginals
// and correlators.
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monogamy {

/// Raised when a table or argument does not fit the scenario it is paired
/// with. Distinct from a failed validation, which is reported, not thrown.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultTableCap = std::size_t{1} << 22;

/// Parties, their setting counts and their (per-party uniform) outcome
/// counts. Setting and outcome indices are 0-based; party 0 is the most
/// significant digit of both the context and the outcome index.
class Scenario {
 public:
  Scenario() = default;
  Scenario(std::vector<int> settings, std::vector<int> outcomes,
           std::size_t cap = kDefaultTableCap);

  static Scenario uniform(int parties, int settings, int outcomes,
                          std::size_t cap = kDefaultTableCap);

  int parties() const { return static_cast<int>(settings_.size()); }
  int settings(int party) const { return settings_.at(party); }
  int outcomes(int party) const { return outcomes_.at(party); }
  const std::vector<int>& settings() const { return settings_; }
  const std::vector<int>& outcomes() const { return outcomes_; }

  std::size_t context_count() const { return contexts_; }
  std::size_t outcome_count() const { return outcome_vectors_; }
  std::size_t table_size() const { return contexts_ * outcome_vectors_; }

  std::size_t context_index(std::span<const int> settings) const;
  std::vector<int> context(std::size_t index) const;
  std::size_t outcome_index(std::span<const int> outcomes) const;
  std::vector<int> outcome(std::size_t index) const;
  std::size_t entry_index(std::span<const int> settings,
                          std::span<const int> outcomes) const {
    return context_index(settings) * outcome_vectors_ + outcome_index(outcomes);
  }

  bool dichotomic() const;
  /// Scenario made of the given parties, in the given order.
  Scenario subset(std::span<const int> parties) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.settings_ == b.settings_ && a.outcomes_ == b.outcomes_;
  }

 private:
  std::vector<int> settings_;
  std::vector<int> outcomes_;
  std::size_t contexts_ = 0;
  std::size_t outcome_vectors_ = 0;
};

/// Dense table indexed (context-major, outcome-minor). Immutable after
/// construction.
class Behavior {
 public:
  Behavior() = default;
  Behavior(Scenario scenario, std::vector<double> table);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<double>& table() const { return table_; }
  double at(std::size_t context, std::size_t outcome) const {
    return table_[context * scenario_.outcome_count() + outcome];
  }
  double prob(std::span<const int> outcomes, std::span<const int> settings) const {
    return table_[scenario_.entry_index(settings, outcomes)];
  }

 private:
  Scenario scenario_;
  std::vector<double> table_;
};

struct PositivityFailure {
  std::size_t context = 0;
  std::size_t outcome = 0;
  double value = 0.0;
};

struct NormalizationDeviation {
  std::size_t context = 0;
  double sum = 0.0;
  double deviation = 0.0;  // |sum - 1|
};

struct ValidationReport {
  bool valid = true;
  std::vector<PositivityFailure> positivity_failures;
  std::vector<NormalizationDeviation> normalization_deviations;
  double max_normalization_deviation = 0.0;
};

/// Where the largest no-signalling violation sits: the marginal of every
/// party except `discarded_party` changes when that party switches from
/// `setting_a` to `setting_b`.
struct SignallingWitness {
  int discarded_party = -1;
  int setting_a = 0;
  int setting_b = 0;
  std::vector<int> remaining_settings;
  std::vector<int> remaining_outcomes;
};

struct SignallingReport {
  bool is_no_signalling = true;
  double max_violation = 0.0;
  SignallingWitness witness;
};

struct MarginalTable {
  std::vector<int> parties;
  std::vector<int> settings;  // settings of the kept parties
  Scenario scenario;          // scenario of the kept parties
  std::vector<double> probabilities;  // indexed by kept-outcome vector
};

/// Checks table size against the scenario (throws StructuralError) and then
/// positivity and per-context normalization.
ValidationReport validate_table(const Scenario& scenario,
                                std::span<const double> table,
                                double tol = kDefaultTolerance);
ValidationReport validate_behavior(const Behavior& b,
                                   double tol = kDefaultTolerance);

SignallingReport is_no_signalling(const Behavior& b,
                                  double tol = kDefaultTolerance);

/// Sums out every party not in `keep` at the full setting vector `context`.
MarginalTable marginal(const Behavior& b, std::span<const int> keep,
                       std::span<const int> context);

/// Behavior of the parties in `keep` (in that order). Discarded parties are
/// held at setting `discarded_setting`; for no-signalling behaviors the
/// choice is immaterial.
Behavior reduce(const Behavior& b, std::span<const int> keep,
                int discarded_setting = 0);

/// Expectation of the product of signs of all parties' outcomes, with
/// outcome 0 -> +1 and outcome 1 -> -1.
double correlator(const Behavior& b, std::span<const int> settings);

/// Same, restricted to `parties`; the remaining parties are summed out at
/// the given full context.
double correlator(const Behavior& b, std::span<const int> settings,
                  std::span<const int> parties);

inline int outcome_sign(int outcome) { return outcome == 0 ? 1 : -1; }

// Constructors for standard boxes. All outputs validate at 1e-12.

Behavior uniform_box(const Scenario& s);

/// strategy[party][setting] = outcome
Behavior deterministic_box(const Scenario& s,
                           const std::vector<std::vector<int>>& strategy);

/// P(a,b|x,y) = 1/2 if a^b == (x&y) ^ (alpha&x) ^ (beta&y) ^ gamma.
/// The default is the canonical box with CHSH value 4.
Behavior pr_box(int alpha = 0, int beta = 0, int gamma = 0);

/// Parties of the factors are concatenated in order.
Behavior product_box(std::span<const Behavior> factors);

Behavior mixture(std::span<const Behavior> parts, std::span<const double> weights);

/// Two-block partially-local behavior:
///   P = sum_l w_l P_l(a_G1 | A_G1) * Q_l(a_G2 | A_G2)
/// `first` and `second` partition the parties; each term supplies one
/// behavior per block (parties in block order). Blocks may signal
/// internally.
struct BlockTerm {
  Behavior first;
  Behavior second;
};
Behavior partial_local_box(std::span<const int> first, std::span<const int> second,
                           std::span<const BlockTerm> terms,
                           std::span<const double> weights);

}  // namespace monogamy
