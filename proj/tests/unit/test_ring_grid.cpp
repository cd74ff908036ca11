#include <doctest.h>

#include <limits>
#include <numbers>
#include <set>

#include "ringgyro/errors.hpp"
#include "ringgyro/ring_grid.hpp"

using namespace ringgyro;
constexpr double pi = std::numbers::pi;

TEST_CASE("eight-point grid") {
  const auto g = make_grid(8, 1.0);
  CHECK(g->size() == 8);
  CHECK(g->radius() == 1.0);
  const std::vector<double> expected = {-pi, -3 * pi / 4, -pi / 2, -pi / 4,
                                        0.0, pi / 4,      pi / 2,  3 * pi / 4};
  for (std::size_t j = 0; j < 8; ++j) CHECK(g->theta()[j] == doctest::Approx(expected[j]).epsilon(1e-15));
  CHECK(g->windings() == std::vector<int>{-4, -3, -2, -1, 0, 1, 2, 3});
}

TEST_CASE("uniform spacing and complete winding set") {
  for (std::size_t n : {8u, 64u, 2048u}) {
    const auto g = make_grid(n, 2.5);
    CHECK(g->spacing() == doctest::Approx(2 * pi / n).epsilon(1e-15));
    for (std::size_t j = 0; j + 1 < n; ++j) {
      CHECK(g->theta()[j + 1] - g->theta()[j] == doctest::Approx(2 * pi / n).epsilon(1e-12));
    }
    const std::set<int> w(g->windings().begin(), g->windings().end());
    CHECK(w.size() == n);
    CHECK(*w.begin() == -static_cast<int>(n / 2));
    CHECK(*w.rbegin() == static_cast<int>(n / 2) - 1);
  }
}

TEST_CASE("fft bin windings") {
  const auto g = make_grid(8, 1.0);
  const std::vector<int> expected = {0, 1, 2, 3, -4, -3, -2, -1};
  for (std::size_t k = 0; k < 8; ++k) CHECK(g->fft_winding(k) == expected[k]);
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(make_grid(7, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(0, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(96, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, 0.0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, -1.0), ConfigError);
  CHECK_THROWS_AS(make_grid(64, std::numeric_limits<double>::infinity()), ConfigError);
}

TEST_CASE("grid identity") {
  CHECK(make_grid(64, 1.0)->same_as(*make_grid(64, 1.0)));
  CHECK_FALSE(make_grid(64, 1.0)->same_as(*make_grid(128, 1.0)));
  CHECK_FALSE(make_grid(64, 1.0)->same_as(*make_grid(64, 2.0)));
}

TEST_CASE("wrap_angle") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(-5 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(4 * pi + 0.25) == doctest::Approx(0.25));
}
