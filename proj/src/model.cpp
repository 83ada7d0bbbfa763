#include "monogamy/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace monogamy {

namespace {

std::size_t checked_product(const std::vector<int>& counts, std::size_t cap) {
  std::size_t p = 1;
  for (int c : counts) {
    p *= static_cast<std::size_t>(c);
    if (p > cap) throw StructuralError("scenario table exceeds size cap");
  }
  return p;
}

// Mixed-radix index with the first digit most significant.
std::size_t pack(std::span<const int> digits, const std::vector<int>& radix) {
  if (digits.size() != radix.size())
    throw StructuralError("index vector length does not match party count");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < radix.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= radix[k])
      throw StructuralError("index out of range for party " + std::to_string(k));
    idx = idx * static_cast<std::size_t>(radix[k]) + static_cast<std::size_t>(digits[k]);
  }
  return idx;
}

std::vector<int> unpack(std::size_t index, const std::vector<int>& radix) {
  std::vector<int> digits(radix.size());
  for (std::size_t k = radix.size(); k-- > 0;) {
    digits[k] = static_cast<int>(index % static_cast<std::size_t>(radix[k]));
    index /= static_cast<std::size_t>(radix[k]);
  }
  return digits;
}

void check_weights(std::span<const double> weights, std::size_t n) {
  if (weights.size() != n) throw StructuralError("weight count does not match parts");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw StructuralError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw StructuralError("weights must sum to 1");
}

}  // namespace

Scenario::Scenario(std::vector<int> settings, std::vector<int> outcomes, std::size_t cap)
    : settings_(std::move(settings)), outcomes_(std::move(outcomes)) {
  if (settings_.empty()) throw StructuralError("scenario needs at least one party");
  if (settings_.size() != outcomes_.size())
    throw StructuralError("settings and outcomes lists differ in length");
  for (int s : settings_)
    if (s < 1) throw StructuralError("setting count must be >= 1");
  for (int o : outcomes_)
    if (o < 2) throw StructuralError("outcome count must be >= 2");
  contexts_ = checked_product(settings_, cap);
  outcome_vectors_ = checked_product(outcomes_, cap);
  if (contexts_ * outcome_vectors_ > cap)
    throw StructuralError("scenario table exceeds size cap");
}

Scenario Scenario::uniform(int parties, int settings, int outcomes, std::size_t cap) {
  if (parties < 1) throw StructuralError("scenario needs at least one party");
  return Scenario(std::vector<int>(static_cast<std::size_t>(parties), settings),
                  std::vector<int>(static_cast<std::size_t>(parties), outcomes), cap);
}

std::size_t Scenario::context_index(std::span<const int> settings) const {
  return pack(settings, settings_);
}

std::vector<int> Scenario::context(std::size_t index) const {
  return unpack(index, settings_);
}

std::size_t Scenario::outcome_index(std::span<const int> outcomes) const {
  return pack(outcomes, outcomes_);
}

std::vector<int> Scenario::outcome(std::size_t index) const {
  return unpack(index, outcomes_);
}

bool Scenario::dichotomic() const {
  return std::all_of(outcomes_.begin(), outcomes_.end(), [](int o) { return o == 2; });
}

Scenario Scenario::subset(std::span<const int> parties) const {
  std::vector<int> s, o;
  for (int p : parties) {
    if (p < 0 || p >= this->parties()) throw StructuralError("party index out of range");
    s.push_back(settings_[p]);
    o.push_back(outcomes_[p]);
  }
  return Scenario(std::move(s), std::move(o));
}

Behavior::Behavior(Scenario scenario, std::vector<double> table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (table_.size() != scenario_.table_size())
    throw StructuralError("table has " + std::to_string(table_.size()) +
                          " entries, scenario needs " +
                          std::to_string(scenario_.table_size()));
}

ValidationReport validate_table(const Scenario& scenario, std::span<const double> table,
                                double tol) {
  if (table.size() != scenario.table_size())
    throw StructuralError("table size does not match scenario");
  ValidationReport report;
  const std::size_t nout = scenario.outcome_count();
  for (std::size_t c = 0; c < scenario.context_count(); ++c) {
    double sum = 0.0;
    for (std::size_t o = 0; o < nout; ++o) {
      const double v = table[c * nout + o];
      if (!std::isfinite(v) || v < -tol) report.positivity_failures.push_back({c, o, v});
      sum += v;
    }
    const double dev = std::abs(sum - 1.0);
    report.max_normalization_deviation = std::max(report.max_normalization_deviation, dev);
    if (!(dev <= tol)) report.normalization_deviations.push_back({c, sum, dev});
  }
  report.valid = report.positivity_failures.empty() && report.normalization_deviations.empty();
  return report;
}

ValidationReport validate_behavior(const Behavior& b, double tol) {
  return validate_table(b.scenario(), b.table(), tol);
}

SignallingReport is_no_signalling(const Behavior& b, double tol) {
  const Scenario& s = b.scenario();
  SignallingReport report;
  const int n = s.parties();
  if (n == 1) return report;

  for (int k = 0; k < n; ++k) {
    std::vector<int> rest;
    for (int p = 0; p < n; ++p)
      if (p != k) rest.push_back(p);
    const Scenario rs = s.subset(rest);

    std::vector<int> settings(static_cast<std::size_t>(n)), outcomes(static_cast<std::size_t>(n));
    for (std::size_t rc = 0; rc < rs.context_count(); ++rc) {
      const auto rset = rs.context(rc);
      // marginal over a_k for every setting of party k
      std::vector<std::vector<double>> marg(static_cast<std::size_t>(s.settings(k)),
                                            std::vector<double>(rs.outcome_count(), 0.0));
      for (int sk = 0; sk < s.settings(k); ++sk) {
        for (std::size_t i = 0; i < rest.size(); ++i) settings[rest[i]] = rset[i];
        settings[k] = sk;
        const std::size_t ctx = s.context_index(settings);
        for (std::size_t ro = 0; ro < rs.outcome_count(); ++ro) {
          const auto rout = rs.outcome(ro);
          for (std::size_t i = 0; i < rest.size(); ++i) outcomes[rest[i]] = rout[i];
          double sum = 0.0;
          for (int ak = 0; ak < s.outcomes(k); ++ak) {
            outcomes[k] = ak;
            sum += b.at(ctx, s.outcome_index(outcomes));
          }
          marg[sk][ro] = sum;
        }
      }
      for (int s1 = 0; s1 < s.settings(k); ++s1)
        for (int s2 = s1 + 1; s2 < s.settings(k); ++s2)
          for (std::size_t ro = 0; ro < rs.outcome_count(); ++ro) {
            const double d = std::abs(marg[s1][ro] - marg[s2][ro]);
            if (d > report.max_violation) {
              report.max_violation = d;
              report.witness = {k, s1, s2, rset, rs.outcome(ro)};
            }
          }
    }
  }
  report.is_no_signalling = report.max_violation <= tol;
  return report;
}

MarginalTable marginal(const Behavior& b, std::span<const int> keep,
                       std::span<const int> context) {
  if (keep.empty()) throw StructuralError("marginal needs a nonempty party set");
  const Scenario& s = b.scenario();
  const std::size_t ctx = s.context_index(context);
  MarginalTable m;
  m.parties.assign(keep.begin(), keep.end());
  {
    auto sorted = m.parties;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw StructuralError("duplicate party in marginal");
  }
  m.scenario = s.subset(keep);
  for (int p : keep) m.settings.push_back(context[p]);
  m.probabilities.assign(m.scenario.outcome_count(), 0.0);
  std::vector<int> kept(keep.size());
  for (std::size_t o = 0; o < s.outcome_count(); ++o) {
    const auto out = s.outcome(o);
    for (std::size_t i = 0; i < keep.size(); ++i) kept[i] = out[keep[i]];
    m.probabilities[m.scenario.outcome_index(kept)] += b.at(ctx, o);
  }
  return m;
}

Behavior reduce(const Behavior& b, std::span<const int> keep, int discarded_setting) {
  const Scenario& s = b.scenario();
  Scenario sub = s.subset(keep);
  std::vector<double> table;
  table.reserve(sub.table_size());
  std::vector<int> full(static_cast<std::size_t>(s.parties()), discarded_setting);
  for (std::size_t c = 0; c < sub.context_count(); ++c) {
    const auto sc = sub.context(c);
    for (std::size_t i = 0; i < keep.size(); ++i) full[keep[i]] = sc[i];
    auto m = marginal(b, keep, full);
    table.insert(table.end(), m.probabilities.begin(), m.probabilities.end());
  }
  return Behavior(std::move(sub), std::move(table));
}

double correlator(const Behavior& b, std::span<const int> settings) {
  std::vector<int> all(static_cast<std::size_t>(b.scenario().parties()));
  std::iota(all.begin(), all.end(), 0);
  return correlator(b, settings, all);
}

double correlator(const Behavior& b, std::span<const int> settings,
                  std::span<const int> parties) {
  const Scenario& s = b.scenario();
  for (int p : parties)
    if (p < 0 || p >= s.parties() || s.outcomes(p) != 2)
      throw StructuralError("correlator needs dichotomic parties");
  const std::size_t ctx = s.context_index(settings);
  double e = 0.0;
  for (std::size_t o = 0; o < s.outcome_count(); ++o) {
    const auto out = s.outcome(o);
    int sign = 1;
    for (int p : parties) sign *= outcome_sign(out[p]);
    e += sign * b.at(ctx, o);
  }
  return e;
}

Behavior uniform_box(const Scenario& s) {
  return Behavior(s, std::vector<double>(s.table_size(),
                                         1.0 / static_cast<double>(s.outcome_count())));
}

Behavior deterministic_box(const Scenario& s, const std::vector<std::vector<int>>& strategy) {
  if (strategy.size() != static_cast<std::size_t>(s.parties()))
    throw StructuralError("strategy needs one response table per party");
  for (int p = 0; p < s.parties(); ++p) {
    if (strategy[p].size() != static_cast<std::size_t>(s.settings(p)))
      throw StructuralError("strategy needs one outcome per setting");
    for (int o : strategy[p])
      if (o < 0 || o >= s.outcomes(p)) throw StructuralError("strategy outcome out of range");
  }
  std::vector<double> table(s.table_size(), 0.0);
  std::vector<int> out(static_cast<std::size_t>(s.parties()));
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    for (int p = 0; p < s.parties(); ++p) out[p] = strategy[p][ctx[p]];
    table[c * s.outcome_count() + s.outcome_index(out)] = 1.0;
  }
  return Behavior(s, std::move(table));
}

Behavior pr_box(int alpha, int beta, int gamma) {
  Scenario s = Scenario::uniform(2, 2, 2);
  std::vector<double> table(s.table_size(), 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) {
          const int target = (x & y) ^ (alpha & x) ^ (beta & y) ^ (gamma & 1);
          const int xy[] = {x, y};
          const int ab[] = {a, bb};
          table[s.entry_index(xy, ab)] = ((a ^ bb) == target) ? 0.5 : 0.0;
        }
  return Behavior(std::move(s), std::move(table));
}

Behavior product_box(std::span<const Behavior> factors) {
  if (factors.empty()) throw StructuralError("product needs at least one factor");
  std::vector<int> settings, outcomes;
  for (const auto& f : factors) {
    settings.insert(settings.end(), f.scenario().settings().begin(), f.scenario().settings().end());
    outcomes.insert(outcomes.end(), f.scenario().outcomes().begin(), f.scenario().outcomes().end());
  }
  Scenario s(settings, outcomes);
  std::vector<double> table(s.table_size());
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      const auto out = s.outcome(o);
      double p = 1.0;
      std::size_t offset = 0;
      for (const auto& f : factors) {
        const std::size_t n = static_cast<std::size_t>(f.scenario().parties());
        p *= f.prob(std::span(out).subspan(offset, n), std::span(ctx).subspan(offset, n));
        offset += n;
      }
      table[c * s.outcome_count() + o] = p;
    }
  }
  return Behavior(std::move(s), std::move(table));
}

Behavior mixture(std::span<const Behavior> parts, std::span<const double> weights) {
  if (parts.empty()) throw StructuralError("mixture needs at least one part");
  check_weights(weights, parts.size());
  const Scenario& s = parts.front().scenario();
  std::vector<double> table(s.table_size(), 0.0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i].scenario() == s)) throw StructuralError("mixture parts differ in scenario");
    for (std::size_t e = 0; e < table.size(); ++e) table[e] += weights[i] * parts[i].table()[e];
  }
  return Behavior(s, std::move(table));
}

Behavior partial_local_box(std::span<const int> first, std::span<const int> second,
                           std::span<const BlockTerm> terms, std::span<const double> weights) {
  if (terms.empty()) throw StructuralError("partially-local box needs at least one term");
  check_weights(weights, terms.size());
  if (first.empty() || second.empty()) throw StructuralError("blocks must be nonempty");
  const int n = static_cast<int>(first.size() + second.size());
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int p : first) {
    if (p < 0 || p >= n) throw StructuralError("block party out of range");
    ++seen[p];
  }
  for (int p : second) {
    if (p < 0 || p >= n) throw StructuralError("block party out of range");
    ++seen[p];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw StructuralError("blocks must partition the parties");

  std::vector<int> settings(static_cast<std::size_t>(n)), outcomes(static_cast<std::size_t>(n));
  const Scenario& s1 = terms.front().first.scenario();
  const Scenario& s2 = terms.front().second.scenario();
  if (s1.parties() != static_cast<int>(first.size()) ||
      s2.parties() != static_cast<int>(second.size()))
    throw StructuralError("block behavior party count mismatch");
  for (std::size_t i = 0; i < first.size(); ++i) {
    settings[first[i]] = s1.settings(static_cast<int>(i));
    outcomes[first[i]] = s1.outcomes(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < second.size(); ++i) {
    settings[second[i]] = s2.settings(static_cast<int>(i));
    outcomes[second[i]] = s2.outcomes(static_cast<int>(i));
  }
  Scenario s(settings, outcomes);
  for (const auto& t : terms)
    if (!(t.first.scenario() == s1) || !(t.second.scenario() == s2))
      throw StructuralError("all terms must share block scenarios");

  std::vector<double> table(s.table_size(), 0.0);
  std::vector<int> c1(first.size()), c2(second.size()), o1(first.size()), o2(second.size());
  for (std::size_t c = 0; c < s.context_count(); ++c) {
    const auto ctx = s.context(c);
    for (std::size_t i = 0; i < first.size(); ++i) c1[i] = ctx[first[i]];
    for (std::size_t i = 0; i < second.size(); ++i) c2[i] = ctx[second[i]];
    for (std::size_t o = 0; o < s.outcome_count(); ++o) {
      const auto out = s.outcome(o);
      for (std::size_t i = 0; i < first.size(); ++i) o1[i] = out[first[i]];
      for (std::size_t i = 0; i < second.size(); ++i) o2[i] = out[second[i]];
      double p = 0.0;
      for (std::size_t l = 0; l < terms.size(); ++l)
        p += weights[l] * terms[l].first.prob(o1, c1) * terms[l].second.prob(o2, c2);
      table[c * s.outcome_count() + o] = p;
    }
  }
  return Behavior(std::move(s), std::move(table));
}

}  // namespace monogamy
