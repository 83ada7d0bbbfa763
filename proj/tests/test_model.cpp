#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "monogamy/bell.hpp"
#include "monogamy/model.hpp"
#include "oracles.hpp"

using namespace monogamy;

namespace {

Behavior random_product(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Scenario one = Scenario::uniform(1, 2, 2);
  std::vector<Behavior> parts;
  for (int p = 0; p < 2; ++p) {
    std::vector<double> t;
    for (int x = 0; x < 2; ++x) {
      const double q = u(rng);
      t.push_back(q);
      t.push_back(1.0 - q);
    }
    parts.emplace_back(one, t);
  }
  return product_box(parts);
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("scenario indexing") {
  Scenario s({2, 3}, {2, 4});
  CHECK(s.context_count() == 6);
  CHECK(s.outcome_count() == 8);
  for (std::size_t c = 0; c < s.context_count(); ++c) CHECK(s.context_index(s.context(c)) == c);
  const int ctx[] = {1, 0};
  CHECK(s.context_index(ctx) == 3);  // party 0 most significant
  CHECK_THROWS_AS(Scenario({2}, {1}), StructuralError);
  CHECK_THROWS_AS(Scenario({0}, {2}), StructuralError);
  CHECK_THROWS_AS(Scenario::uniform(30, 2, 2), StructuralError);
}

TEST_CASE("validation") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  CHECK(validate_behavior(uniform_box(s)).valid);

  std::vector<double> t(16, 0.25);
  t[5] = -0.1;
  t[6] = 0.45;
  const auto neg = validate_table(s, t);
  CHECK_FALSE(neg.valid);
  REQUIRE(neg.positivity_failures.size() == 1);
  CHECK(neg.positivity_failures[0].context == 1);
  CHECK(neg.positivity_failures[0].outcome == 1);
  CHECK(neg.positivity_failures[0].value == doctest::Approx(-0.1));

  std::vector<double> big(16, 0.25);
  big[8] = 0.45;
  const auto over = validate_table(s, big);
  CHECK_FALSE(over.valid);
  REQUIRE(over.normalization_deviations.size() == 1);
  CHECK(over.normalization_deviations[0].context == 2);
  CHECK(over.normalization_deviations[0].deviation == doctest::Approx(0.2));
  CHECK(over.max_normalization_deviation == doctest::Approx(0.2));
}

TEST_CASE("no-signalling") {
  const auto pr = pr_box();
  const auto rep = is_no_signalling(pr);
  CHECK(rep.is_no_signalling);
  CHECK(rep.max_violation == 0.0);

  // party 1 outputs party 0's setting
  const Scenario s = Scenario::uniform(2, 2, 2);
  std::vector<double> t(16, 0.0);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int xy[] = {x, y};
      const int ab[] = {0, x};
      t[s.entry_index(xy, ab)] = 1.0;
    }
  const auto sig = is_no_signalling(Behavior(s, t));
  CHECK_FALSE(sig.is_no_signalling);
  CHECK(sig.max_violation == doctest::Approx(1.0));
  CHECK(sig.witness.discarded_party == 0);
  CHECK(sig.witness.setting_a != sig.witness.setting_b);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) CHECK(is_no_signalling(random_product(rng)).is_no_signalling);
}

TEST_CASE("marginals and correlators") {
  const auto pr = pr_box();
  const int keep[] = {0};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto m = marginal(pr, keep, pr.scenario().context(c));
    CHECK(m.probabilities[0] == doctest::Approx(0.5));
    CHECK(m.probabilities[1] == doctest::Approx(0.5));
  }
  const int s11[] = {1, 1};
  const int s00[] = {0, 0};
  CHECK(correlator(pr, s11) == doctest::Approx(-1.0));
  CHECK(correlator(pr, s00) == doctest::Approx(1.0));
  CHECK(correlator(uniform_box(pr.scenario()), s11) == 0.0);

  const Scenario s3 = Scenario::uniform(3, 2, 2);
  const auto det = deterministic_box(s3, {{0, 0}, {0, 0}, {0, 0}});
  const int ctx[] = {1, 0, 1};
  CHECK(correlator(det, ctx) == 1.0);
  const int keep2[] = {1, 2};
  const auto m = marginal(det, keep2, ctx);
  CHECK(m.probabilities[0] == 1.0);

  std::mt19937_64 rng(9);
  const auto a = random_product(rng), b = pr_box();
  const Behavior parts[] = {a, pr_box()};
  for (double w : {0.0, 0.3, 0.77, 1.0}) {
    const double ws[] = {w, 1.0 - w};
    const auto mix = mixture(parts, ws);
    for (std::size_t c = 0; c < 4; ++c) {
      const auto ctxv = mix.scenario().context(c);
      CHECK(correlator(mix, ctxv) ==
            doctest::Approx(w * correlator(a, ctxv) + (1 - w) * correlator(b, ctxv)).epsilon(1e-12));
    }
  }
}

TEST_CASE("named boxes and CHSH") {
  const auto chsh = BellFunctional::chsh();
  const auto pr = pr_box();
  CHECK(bell_value(pr, chsh) == doctest::Approx(4.0));
  CHECK(oracle::chsh_direct(pr) == doctest::Approx(4.0));
  CHECK(bell_value(uniform_box(pr.scenario()), chsh) == 0.0);
  const Behavior parts[] = {pr, uniform_box(pr.scenario())};
  const double w[] = {0.5, 0.5};
  CHECK(bell_value(mixture(parts, w), chsh) == doctest::Approx(2.0));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int g = 0; g < 2; ++g) {
        const auto box = pr_box(a, b, g);
        CHECK(std::abs(bell_value(box, chsh) - oracle::chsh_direct(box)) < 1e-12);
        CHECK(validate_behavior(box, 1e-12).valid);
      }
}

TEST_CASE("partially local boxes") {
  const Scenario s2 = Scenario::uniform(2, 2, 2), s1 = Scenario::uniform(1, 2, 2);
  const int first[] = {0, 1};
  const int second[] = {2};
  {
    const BlockTerm terms[] = {{uniform_box(s2), uniform_box(s1)}};
    const double w[] = {1.0};
    const auto box = partial_local_box(first, second, terms, w);
    for (double v : box.table()) CHECK(v == doctest::Approx(0.125));
  }
  const BlockTerm terms[] = {{pr_box(), uniform_box(s1)}};
  const double w[] = {1.0};
  const auto box = partial_local_box(first, second, terms, w);
  CHECK(validate_behavior(box, 1e-12).valid);
  CHECK(is_no_signalling(box).is_no_signalling);
  const auto red = reduce(box, first, 1);
  for (std::size_t i = 0; i < red.table().size(); ++i)
    CHECK(red.table()[i] == doctest::Approx(pr_box().table()[i]));

  const auto d1 = deterministic_box(s2, {{0, 0}, {1, 1}});
  const auto d2 = deterministic_box(s2, {{1, 0}, {0, 1}});
  const BlockTerm two[] = {{d1, uniform_box(s1)}, {d2, uniform_box(s1)}};
  const double half[] = {0.5, 0.5};
  const BlockTerm t1[] = {{d1, uniform_box(s1)}};
  const BlockTerm t2[] = {{d2, uniform_box(s1)}};
  const auto avg = partial_local_box(first, second, two, half);
  const auto b1 = partial_local_box(first, second, t1, w);
  const auto b2 = partial_local_box(first, second, t2, w);
  for (std::size_t i = 0; i < avg.table().size(); ++i)
    CHECK(avg.table()[i] == doctest::Approx(0.5 * (b1.table()[i] + b2.table()[i])));

  // permuted block order
  const int a[] = {2};
  const int bc[] = {0, 1};
  const BlockTerm swapped[] = {{uniform_box(s1), pr_box()}};
  const auto box2 = partial_local_box(a, bc, swapped, w);
  CHECK(is_no_signalling(box2).is_no_signalling);
}

TEST_CASE("constructor outputs validate and marginals are context free") {
  std::mt19937_64 rng(17);
  const Scenario s3 = Scenario::uniform(3, 2, 2);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 30; ++i) {
    std::vector<std::vector<int>> strat(3, std::vector<int>(2));
    for (auto& r : strat)
      for (auto& v : r) v = bit(rng);
    const auto d = deterministic_box(s3, strat);
    CHECK(validate_behavior(d, 1e-12).valid);
    const Behavior parts[] = {d, uniform_box(s3)};
    const double w[] = {0.4, 0.6};
    const auto mix = mixture(parts, w);
    CHECK(validate_behavior(mix, 1e-12).valid);
    const auto rep = is_no_signalling(mix, 1e-12);
    CHECK(rep.is_no_signalling);
    CHECK(rep.max_violation <= 1e-12);
  }
}

TEST_CASE("errors") {
  const Scenario s = Scenario::uniform(2, 2, 2);
  CHECK_THROWS(Behavior(s, std::vector<double>(15, 0.0)));
  const Behavior parts[] = {pr_box(), uniform_box(Scenario::uniform(3, 2, 2))};
  const double w[] = {0.5, 0.5};
  CHECK_THROWS_AS(mixture(parts, w), StructuralError);
  const Behavior same[] = {pr_box(), pr_box()};
  const double bad[] = {0.5, 0.6};
  CHECK_THROWS(mixture(same, bad));
}

}  // TEST_SUITE
