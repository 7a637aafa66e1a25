#include <doctest.h>

#include <cmath>

#include "hsplit/roi.hpp"
#include "support.hpp"

using namespace hsplit;

TEST_CASE("circle_from_points") {
  const Dims d{20, 20};
  SUBCASE("3-4-5 triangle") {
    const auto c = circle_from_points({5, 5}, {8, 9}, d);
    CHECK(c.cx == 5);
    CHECK(c.cy == 5);
    CHECK(c.r == doctest::Approx(5.0));
  }
  SUBCASE("axis aligned") {
    CHECK(circle_from_points({5, 5}, {5, 8}, d).r == doctest::Approx(3.0));
  }
  SUBCASE("degenerate") {
    CHECK_THROWS_WITH_AS(circle_from_points({0, 0}, {0, 0}, d),
                         doctest::Contains("degenerate circle"), std::invalid_argument);
  }
  SUBCASE("outside the image") {
    CHECK_THROWS_AS(circle_from_points({20, 5}, {3, 3}, d), std::invalid_argument);
    CHECK_THROWS_AS(circle_from_points({5, 5}, {5, -1}, d), std::invalid_argument);
  }
}

TEST_CASE("circle_mask lattice counts") {
  const Dims d{11, 11};
  CHECK(circle_mask({5, 5, 1.0}, d).popcount() == 5);
  CHECK(circle_mask({5, 5, 3.0}, d).popcount() == 29);
  CHECK(oracle::lattice_disk_count(5, 5, 3.0, 11, 11) == 29);

  const auto corner = circle_mask({0, 0, 4.0}, d);
  CHECK(corner.popcount() < circle_mask({5, 5, 4.0}, d).popcount());
  CHECK(corner.popcount() == oracle::lattice_disk_count(0, 0, 4.0, 11, 11));
}

TEST_CASE("circle_mask properties") {
  const Dims d{41, 37};
  std::size_t prev = 0;
  for (double r = 1.0; r <= 25.0; r += 0.37) {
    const CircleROI roi{20, 18, r};
    const auto m = circle_mask(roi, d);
    CHECK(m.popcount() == oracle::lattice_disk_count(20, 18, r, 41, 37));
    CHECK(m.popcount() >= prev);
    prev = m.popcount();
    for (int y = 0; y < d.height; ++y) {
      for (int x = 0; x < d.width; ++x) {
        if (m.at(x, y)) {
          CHECK(std::hypot(x - 20, y - 18) <= r + 1e-12);
        }
      }
    }
    if (r < 17.0) { // unclipped: symmetric about the center
      for (int y = 0; y < d.height; ++y) {
        for (int x = 0; x < d.width; ++x) {
          const int mx = 40 - x;
          const int my = 36 - y;
          if (d.contains(mx, y)) {
            CHECK(m.at(x, y) == m.at(mx, y));
          }
          if (d.contains(x, my)) {
            CHECK(m.at(x, y) == m.at(x, my));
          }
        }
      }
    }
  }
}
