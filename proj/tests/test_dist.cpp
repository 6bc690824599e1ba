#include <stdexcept>
#include <vector>

#include "coflow/dist.hpp"
#include "doctest.h"

using coflow::DiscreteDist;

TEST_CASE("default distribution is the unit size") {
  const DiscreteDist d;
  REQUIRE(d.pmf().size() == 1);
  CHECK(d.pmf()[0].first == 1);
  CHECK(d.pmf()[0].second == doctest::Approx(1.0));
  CHECK(d.mean() == doctest::Approx(1.0));
  CHECK(d.cv_squared() == doctest::Approx(0.0));
  CHECK(d.tail(0) == doctest::Approx(1.0));
  CHECK(d.tail(1) == doctest::Approx(0.0));
}

TEST_CASE("deterministic size has zero variance and flat tail") {
  const auto d = DiscreteDist::deterministic(3);
  CHECK(d.max_size() == 3);
  CHECK(d.mean() == doctest::Approx(3.0));
  CHECK(d.second_moment() == doctest::Approx(9.0));
  CHECK(d.cv_squared() == doctest::Approx(0.0));
  for (int r = 0; r < 3; ++r) CHECK(d.tail(r) == doctest::Approx(1.0));
  CHECK(d.tail(3) == doctest::Approx(0.0));
  CHECK(d.tail(17) == doctest::Approx(0.0));
}

TEST_CASE("two-point moments and tail") {
  const auto d = DiscreteDist::two_point(1, 0.5, 3);
  REQUIRE(d.pmf().size() == 2);
  CHECK(d.pmf()[0] == DiscreteDist::Entry{1, 0.5});
  CHECK(d.pmf()[1] == DiscreteDist::Entry{3, 0.5});
  CHECK(d.mean() == doctest::Approx(2.0));
  CHECK(d.second_moment() == doctest::Approx(5.0));
  CHECK(d.cv_squared() == doctest::Approx(0.25));
  CHECK(d.tail(0) == doctest::Approx(1.0));
  CHECK(d.tail(1) == doctest::Approx(0.5));
  CHECK(d.tail(2) == doctest::Approx(0.5));
  CHECK(d.tail(3) == doctest::Approx(0.0));
}

TEST_CASE("truncated geometric normalizes q^(s-1) weights") {
  const auto d = DiscreteDist::truncated_geometric(0.5, 3);
  REQUIRE(d.pmf().size() == 3);
  CHECK(d.pmf()[0].second == doctest::Approx(4.0 / 7.0));
  CHECK(d.pmf()[1].second == doctest::Approx(2.0 / 7.0));
  CHECK(d.pmf()[2].second == doctest::Approx(1.0 / 7.0));
  CHECK(d.mean() == doctest::Approx(11.0 / 7.0));
  CHECK(d.tail(0) == doctest::Approx(1.0));
  CHECK(d.tail(1) == doctest::Approx(3.0 / 7.0));
  CHECK(d.tail(2) == doctest::Approx(1.0 / 7.0));
}

TEST_CASE("tail sums to the mean") {
  const std::vector<DiscreteDist> dists = {
      DiscreteDist::two_point(2, 0.3, 7),
      DiscreteDist::truncated_geometric(0.8, 9),
      DiscreteDist({{1, 0.2}, {4, 0.5}, {9, 0.3}}),
  };
  for (const auto& d : dists) {
    double sum = 0.0;
    for (int r = 0; r < d.max_size(); ++r) sum += d.tail(r);
    CHECK(sum == doctest::Approx(d.mean()).epsilon(1e-12));
  }
}

TEST_CASE("invalid pmfs are rejected") {
  using E = std::invalid_argument;
  CHECK_THROWS_AS(DiscreteDist(std::vector<DiscreteDist::Entry>{}), E);
  CHECK_THROWS_AS(DiscreteDist({{0, 1.0}}), E);
  CHECK_THROWS_AS(DiscreteDist({{2, 0.5}, {2, 0.5}}), E);
  CHECK_THROWS_AS(DiscreteDist({{3, 0.5}, {2, 0.5}}), E);
  CHECK_THROWS_AS(DiscreteDist({{1, 0.5}}), E);
  CHECK_THROWS_AS(DiscreteDist({{1, -0.5}, {2, 1.5}}), E);
  CHECK_THROWS_AS(DiscreteDist::two_point(3, 0.5, 2), E);
  CHECK_THROWS_AS(DiscreteDist::two_point(1, 0.0, 2), E);
  CHECK_THROWS_AS(DiscreteDist::two_point(1, 1.0, 2), E);
  CHECK_THROWS_AS(DiscreteDist::truncated_geometric(1.0, 3), E);
  CHECK_THROWS_AS(DiscreteDist::truncated_geometric(0.0, 3), E);
  CHECK_THROWS_AS(DiscreteDist::truncated_geometric(0.5, 0), E);
}

TEST_CASE("equality compares the pmf") {
  CHECK(DiscreteDist::deterministic(2) == DiscreteDist({{2, 1.0}}));
  CHECK_FALSE(DiscreteDist::deterministic(2) == DiscreteDist::deterministic(3));
  CHECK_FALSE(DiscreteDist::two_point(1, 0.5, 3) == DiscreteDist::two_point(1, 0.25, 3));
}
