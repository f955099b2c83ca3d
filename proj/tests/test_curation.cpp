#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "advcurate/curation.hpp"
#include "advcurate/errors.hpp"

using namespace advcurate;

TEST_CASE("ordering by key descending") {
  const std::vector<double> keys{0.9, 0.1, 0.5};
  CHECK(order_samples(keys) == std::vector<std::size_t>{0, 2, 1});

  std::vector<ConfidenceInterval> cis(3);
  cis[0].lower = 0.2;
  cis[1].lower = 0.7;
  cis[2].lower = 0.2;
  CHECK(order_samples(cis) == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("ties keep index order") {
  const std::vector<double> keys{0.5, 0.5, 0.8, 0.5, 0.8};
  CHECK(order_samples(keys) == std::vector<std::size_t>{2, 4, 0, 1, 3});
  CHECK(order_samples(std::vector<double>{}).empty());
}

TEST_CASE("ordering agrees with a sort oracle") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<double> keys(n);
    // Coarse keys force many ties.
    for (auto& k : keys) k = static_cast<double>(rng() % 7) / 7.0;
    std::vector<std::pair<double, std::size_t>> ref;
    for (std::size_t i = 0; i < n; ++i) ref.emplace_back(-keys[i], i);
    std::sort(ref.begin(), ref.end());
    const auto got = order_samples(keys);
    REQUIRE(got.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == ref[i].second);
  }
}

TEST_CASE("prefix sizes") {
  const auto tenths = prefix_sizes(100, 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(tenths[n] == 10 * (n + 1));
  CHECK(prefix_sizes(7, 3) == std::vector<std::size_t>{2, 4, 7});
  CHECK(prefix_sizes(79, 10).back() == 79);
  CHECK(prefix_sizes(79, 10).front() == 7);
  CHECK(prefix_sizes(5, 1) == std::vector<std::size_t>{5});
  CHECK(prefix_sizes(5, 5) == std::vector<std::size_t>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS(prefix_sizes(5, 0), DomainError);
  CHECK_THROWS_AS(prefix_sizes(5, 6), DomainError);
  CHECK_THROWS_AS(prefix_sizes(0, 1), DomainError);
}

TEST_CASE("curate validates its inputs") {
  CHECK_THROWS_AS(curate({0, 0, 1}, 1, {1, 1, 1}, {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(curate({0, 1}, 1, {1, 1, 1}, {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(curate({0, 1, 2}, 4, {1, 1, 1}, {0, 0, 0}), DomainError);
  const auto seq = curate({2, 0, 1}, 3, {1, 2, 1}, {0.1, 0.2, 0.3});
  CHECK(seq.num_datasets() == 3);
  CHECK(std::vector<std::size_t>(seq.dataset(1).begin(), seq.dataset(1).end()) == std::vector<std::size_t>{2});
  CHECK(seq.dataset(3).size() == 3);
  CHECK_THROWS(seq.dataset(0));
  CHECK_THROWS(seq.dataset(4));
}

TEST_CASE("curated sequences nest with non-increasing keys") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t total = 1 + rng() % 200;
    const std::size_t n = 1 + rng() % std::min<std::size_t>(total, 12);
    std::vector<double> keys(total);
    for (auto& k : keys) k = unit(rng);
    std::vector<int> labels(total, 1);
    auto ordering = order_samples(keys);
    const auto seq = curate(ordering, n, labels, keys);

    CHECK(seq.prefix_sizes.back() == total);
    for (std::size_t d = 1; d < n; ++d) {
      CHECK(seq.prefix_sizes[d - 1] <= seq.prefix_sizes[d]);
      const auto a = seq.dataset(d);
      const auto b = seq.dataset(d + 1);
      CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
    CHECK(seq.prefix_sizes.front() >= 1);
    for (std::size_t i = 1; i < total; ++i) {
      CHECK(keys[seq.ordering[i - 1]] >= keys[seq.ordering[i]]);
    }
    // Each prefix holds the largest keys: its smallest key beats every outsider.
    for (std::size_t d = 1; d <= n; ++d) {
      const auto in = seq.dataset(d);
      double lowest = 1.0;
      for (auto i : in) lowest = std::min(lowest, keys[i]);
      std::vector<char> inside(total, 0);
      for (auto i : in) inside[i] = 1;
      for (std::size_t i = 0; i < total; ++i) {
        if (!inside[i]) CHECK(keys[i] <= lowest);
      }
    }
  }
}
