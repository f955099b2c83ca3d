#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "advcurate/errors.hpp"
#include "advcurate/validation.hpp"
#include "oracles.hpp"

using namespace advcurate;

TEST_CASE("accuracy") {
  CHECK(accuracy(std::vector<int>{1, 2, 1, 2}, std::vector<int>{1, 2, 2, 2}) == 0.75);
  CHECK(accuracy(std::vector<int>{1}, std::vector<int>{1}) == 1.0);
  CHECK_THROWS_AS(accuracy(std::vector<int>{1, 2}, std::vector<int>{1}), DomainError);
  CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), DomainError);
}

TEST_CASE("average ranks share ties") {
  CHECK(average_ranks(std::vector<double>{3.0, 1.0, 2.0}) == std::vector<double>{3.0, 1.0, 2.0});
  CHECK(average_ranks(std::vector<double>{0.5, 0.5, 0.1, 0.9}) == std::vector<double>{2.5, 2.5, 1.0, 4.0});
}

TEST_CASE("perfect monotone sequences") {
  std::vector<double> down{0.99, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7, 0.65, 0.6, 0.55};
  const auto d = spearman(down);
  CHECK(d.rho == -1.0);
  CHECK(d.p_value == 0.0);
  std::vector<double> up(down.rbegin(), down.rend());
  const auto u = spearman(up);
  CHECK(u.rho == 1.0);
  CHECK(u.p_value == 0.0);
}

TEST_CASE("published rank-correlation pairs") {
  CHECK(std::fabs(spearman_p_value(-0.730, 10) - 0.017) <= 0.001);
  CHECK(std::fabs(spearman_p_value(-0.673, 10) - 0.033) <= 0.001);
  CHECK(spearman_p_value(-0.730, 10) ==
        doctest::Approx(oracle::student_t_p_by_quadrature(-0.730 * std::sqrt(8.0 / (1.0 - 0.730 * 0.730)), 8))
            .epsilon(1e-7));
  CHECK(spearman_p_value(0.0, 10) == doctest::Approx(1.0));
}

TEST_CASE("all-equal accuracies are degenerate") {
  const auto r = spearman(std::vector<double>{0.8, 0.8, 0.8, 0.8});
  CHECK(r.degenerate);
  CHECK(r.rho == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK_THROWS_AS(spearman(std::vector<double>{0.1, 0.2}), DomainError);
}

TEST_CASE("verdicts") {
  CHECK(validity_verdict(-0.730, 0.017) == Verdict::valid_adversarial);
  CHECK(validity_verdict(0.964, 0.000) == Verdict::invalid);
  CHECK(validity_verdict(-0.313, 0.379) == Verdict::invalid);
  CHECK(validity_verdict(0.595, 0.070) == Verdict::invalid);
  CHECK(validity_verdict(-0.5, 0.05) == Verdict::valid_adversarial);
  CHECK(validity_verdict(-0.5, 0.0501) == Verdict::invalid);
  CHECK(to_string(Verdict::valid_adversarial) == "valid_adversarial");
}

TEST_CASE("binomial half-widths") {
  CHECK(binomial_ci_halfwidth(0.5, 100) == doctest::Approx(0.082).epsilon(1e-12));
  CHECK(std::fabs(binomial_ci_halfwidth(0.9, 79) - 0.0554) < 1e-4);
  CHECK(binomial_ci_halfwidth(1.0, 10) == 0.0);
  CHECK_THROWS_AS(binomial_ci_halfwidth(0.5, 0), DomainError);
}

TEST_CASE("rank correlation properties") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + rng() % 20;
    std::vector<double> v(n);
    // Occasional ties through rounding.
    const bool coarse = trial % 3 == 0;
    for (auto& x : v) x = coarse ? std::round(unit(rng) * 4.0) / 4.0 : unit(rng);
    const auto r = spearman(v);
    if (r.degenerate) continue;
    CHECK(r.rho >= -1.0);
    CHECK(r.rho <= 1.0);

    std::vector<double> rev(v.rbegin(), v.rend());
    CHECK(spearman(rev).rho == doctest::Approx(-r.rho).epsilon(1e-12));

    std::vector<double> warped(n);
    for (std::size_t i = 0; i < n; ++i) warped[i] = std::exp(3.0 * v[i]) - 7.0;
    const auto w = spearman(warped);
    CHECK(w.rho == doctest::Approx(r.rho).epsilon(1e-12));
    CHECK(w.p_value == doctest::Approx(r.p_value).epsilon(1e-12));

    const Verdict verdict = validity_verdict(r.rho, r.p_value);
    CHECK((verdict == Verdict::valid_adversarial) == (r.rho < 0.0 && r.p_value <= kDefaultGamma));
  }
}

TEST_CASE("p-value does not increase with |rho|") {
  for (std::size_t n : {4u, 10u, 25u}) {
    double prev = 1.0 + 1e-12;
    for (int k = 0; k <= 200; ++k) {
      const double rho = k / 200.0;
      const double p = spearman_p_value(rho, n);
      CHECK(p <= prev);
      CHECK(spearman_p_value(-rho, n) == p);
      prev = p;
    }
  }
}

TEST_CASE("validate_sequence") {
  // Ten samples; estimates wrong on the tail of the ordering.
  GroundTruth truth{{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}};
  std::vector<std::size_t> ordering{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> est{1, 1, 1, 1, 1, 1, 2, 1, 2, 2};
  std::vector<double> keys{1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};
  const auto seq = curate(ordering, 5, est, keys);
  const auto report = validate_sequence(seq, truth);
  CHECK(report.sizes == std::vector<std::size_t>{2, 4, 6, 8, 10});
  CHECK(report.accuracies == std::vector<double>{1.0, 1.0, 1.0, 0.875, 0.7});
  CHECK(report.rho < 0.0);
  CHECK(report.ci_halfwidths[4] == doctest::Approx(binomial_ci_halfwidth(0.7, 10)));

  // Estimates equal to the truth give constant accuracy: never valid.
  const auto self = validate_sequence(curate(ordering, 5, truth.labels, keys), truth);
  CHECK(self.degenerate);
  CHECK(self.verdict == Verdict::invalid);

  std::vector<std::size_t> reversed(ordering.rbegin(), ordering.rend());
  const auto flipped = validate_sequence(curate(reversed, 5, est, keys), truth);
  CHECK(flipped.rho > 0.0);
  CHECK(flipped.verdict == Verdict::invalid);

  const auto short_seq = validate_sequence(curate(ordering, 2, est, keys), truth);
  CHECK(short_seq.degenerate);
  CHECK(short_seq.verdict == Verdict::invalid);
}
