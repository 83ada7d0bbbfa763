#include <doctest.h>

#include <cmath>
#include <random>

#include "monogamy/bell.hpp"
#include "monogamy/localpoly.hpp"
#include "monogamy/sharing.hpp"
#include "oracles.hpp"

using namespace monogamy;

TEST_SUITE("sharing") {

TEST_CASE("unrestricted extension") {
  const auto pr = pr_box();
  const auto c = unrestricted_extension(pr, 3);
  CHECK(c.marginal_residual == 0.0);
  CHECK(c.symmetry_residual == 0.0);
  CHECK(c.extension.scenario().parties() == 4);
  CHECK(validate_behavior(c.extension, 1e-12).valid);

  const auto u = unrestricted_extension(uniform_box(Scenario::uniform(2, 2, 2)), 2);
  CHECK(u.marginal_residual == 0.0);

  const auto det =
      unrestricted_extension(deterministic_box(Scenario::uniform(2, 2, 2), {{1, 0}, {0, 1}}), 5);
  CHECK(det.marginal_residual == 0.0);
  for (double v : det.extension.table()) CHECK((v == 0.0 || v == 1.0));

  std::mt19937_64 rng(4);
  for (int n = 1; n <= 4; ++n) CHECK(is_n_shareable(pr, n, ShareMode::Unrestricted).shareable);
  for (int i = 0; i < 10; ++i)
    CHECK(is_n_shareable(oracle::random_quantum_violator(rng, 2.0), 1 + i % 4,
                         ShareMode::Unrestricted)
              .shareable);
}

TEST_CASE("no-signalling extension") {
  const auto uni = ns_extension(uniform_box(Scenario::uniform(2, 2, 2)), 4);
  REQUIRE(uni.feasible());
  CHECK(uni.certificate->marginal_residual <= 1e-7);
  CHECK(uni.certificate->symmetry_residual <= 1e-7);

  const auto pr = ns_extension(pr_box(), 2);
  CHECK_FALSE(pr.feasible());
  CHECK(pr.score > 0.0);
  CHECK_FALSE(is_n_shareable(pr_box(), 2, ShareMode::NoSignalling).shareable);

  const double pi = std::acos(-1.0);
  const auto q = oracle::born_behavior({1 / std::sqrt(2.0), 0.0, 0.0, 1 / std::sqrt(2.0)},
                                       {{0.0, pi / 2}, {pi / 4, -pi / 4}});
  CHECK_FALSE(ns_extension(q, 2).feasible());
}

TEST_CASE("local behaviors share") {
  std::mt19937_64 rng(21);
  const auto dets = deterministic_behaviors(Scenario::uniform(2, 2, 2));
  for (int i = 0; i < 5; ++i) {
    const Behavior parts[] = {dets[rng() % 16], dets[rng() % 16], dets[rng() % 16]};
    const double w[] = {0.2, 0.3, 0.5};
    CHECK(is_n_shareable(mixture(parts, w), 3, ShareMode::NoSignalling).shareable);
  }
}

TEST_CASE("shareable implies CHSH bound") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const auto b = oracle::random_two_shareable(rng);
    CHECK(std::abs(bell_value(b, BellFunctional::chsh())) <= 2.0 + 1e-6);
    if (i % 10 == 0) CHECK(ns_extension(b, 2).feasible());
  }
  for (int i = 0; i < 20; ++i) {
    const auto b = oracle::random_quantum_violator(rng, 2.0 + 1e-6);
    CHECK_FALSE(ns_extension(b, 2).feasible());
  }
}

TEST_CASE("dropping a clone keeps a certificate") {
  const auto uni = ns_extension(uniform_box(Scenario::uniform(2, 2, 2)), 3);
  REQUIRE(uni.feasible());
  const auto two = drop_last_clone(uniform_box(Scenario::uniform(2, 2, 2)), *uni.certificate);
  CHECK(two.clones == 2);
  CHECK(two.marginal_residual <= 1e-7);

  std::mt19937_64 rng(41);
  const auto dets = deterministic_behaviors(Scenario::uniform(2, 2, 2));
  const Behavior parts[] = {dets[3], dets[9]};
  const double w[] = {0.35, 0.65};
  const auto base = mixture(parts, w);
  const auto ext = ns_extension(base, 3);
  REQUIRE(ext.feasible());
  auto cert = *ext.certificate;
  while (cert.clones > 1) {
    cert = drop_last_clone(base, cert);
    CHECK(cert.marginal_residual <= 1e-6);
    CHECK(cert.symmetry_residual <= 1e-6);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ns_extension(uniform_box(Scenario::uniform(3, 2, 2)), 2), StructuralError);
  CHECK_THROWS_AS(ns_extension(pr_box(), 0), StructuralError);
  CHECK_THROWS_AS(ns_extension(uniform_box(Scenario::uniform(2, 2, 3)), 8), StructuralError);
}

}  // TEST_SUITE
