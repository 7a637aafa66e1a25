#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hsplit/metrics.hpp"
#include "hsplit/phantom.hpp"
#include "hsplit/snake.hpp"
#include "support.hpp"

using namespace hsplit;

namespace {

constexpr double kPi = std::numbers::pi;

// Convex polygon membership by half-planes, edges included.
bool in_convex(const Contour &c, double x, double y) {
  const std::size_t n = c.size();
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = c.points[i];
    const auto &b = c.points[(i + 1) % n];
    const double cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    if (std::abs(cross) < 1e-9) {
      continue;
    }
    const int s = cross > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

} // namespace

TEST_CASE("init_contour") {
  const CircleROI roi{50, 50, 10.0};
  SUBCASE("cardinal points") {
    const auto c = init_contour(roi, 4, true);
    REQUIRE(c.size() == 4);
    const Vec2 expect[4] = {{60, 50}, {50, 60}, {40, 50}, {50, 40}};
    for (int i = 0; i < 4; ++i) {
      CHECK(c.points[i].x == doctest::Approx(expect[i].x));
      CHECK(c.points[i].y == doctest::Approx(expect[i].y));
    }
  }
  SUBCASE("on the circle with equal angular gaps") {
    const auto c = init_contour({17, 23, 7.3}, 100);
    REQUIRE(c.size() == 100);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(std::abs(std::hypot(c.points[i].x - 17, c.points[i].y - 23) - 7.3) < 1e-9);
      const auto &p = c.points[i];
      const auto &q = c.points[(i + 1) % c.size()];
      double gap = std::atan2(q.y - 23, q.x - 17) - std::atan2(p.y - 23, p.x - 17);
      if (gap < 0) {
        gap += 2 * kPi;
      }
      CHECK(gap == doctest::Approx(2 * kPi / 100).epsilon(1e-9));
    }
  }
  SUBCASE("too few points") {
    CHECK_THROWS_AS(init_contour(roi, 7), std::invalid_argument);
  }
}

TEST_CASE("snake_evolve") {
  SnakeParams p;
  SUBCASE("zero iterations is the identity") {
    p.iterations = 0;
    const auto c = init_contour({32, 32, 10}, 40);
    CHECK(snake_evolve(GrayImage(64, 64, 10), c, p) == c);
  }
  SUBCASE("uniform image: contour shrinks monotonically, count preserved") {
    const GrayImage flat(64, 64, 120);
    auto c = init_contour({32, 32, 20}, 60);
    double area = polygon_area(c);
    const double start = area;
    p.iterations = 10;
    for (int round = 0; round < 10; ++round) {
      c = snake_evolve(flat, c, p);
      REQUIRE(c.size() == 60);
      const double a = polygon_area(c);
      CHECK(a <= area + 1e-9);
      area = a;
    }
    CHECK(area < start);
    const auto mid = centroid(c);
    CHECK(mid.x == doctest::Approx(32.0).epsilon(1e-6));
    CHECK(mid.y == doctest::Approx(32.0).epsilon(1e-6));
  }
  SUBCASE("deterministic") {
    PhantomSpec spec;
    spec.width = spec.height = 96;
    spec.lesion = {48, 48, 20, 16, 0.3};
    spec.seed = 2;
    const auto ph = generate_phantom(spec);
    const auto c = init_contour({48, 48, 10}, 100);
    p.iterations = 80;
    CHECK(snake_evolve(ph.image, c, p) == snake_evolve(ph.image, c, p));
  }
  SUBCASE("sharp dark disk from 0.7 R") {
    PhantomSpec spec;
    spec.width = spec.height = 128;
    spec.lesion = {64, 64, 20, 20, 0};
    spec.speckle = 0;
    spec.noise_sigma = 0;
    const auto ph = generate_phantom(spec);
    const auto out = snake_evolve(ph.image, init_contour({64, 64, 14}, 100), p);
    double err = 0;
    for (const auto &q : out.points) {
      err += std::abs(std::hypot(q.x - 64, q.y - 64) - 20.0);
    }
    CHECK(err / out.size() < 2.0);
    CHECK(dsc(contour_to_mask(out, ph.image.dims()), ph.ground_truth) >= 0.9);
  }
  SUBCASE("invalid inputs") {
    const auto c = init_contour({32, 32, 10}, 40);
    SnakeParams bad;
    bad.alpha = 0;
    CHECK_THROWS_AS(snake_evolve(GrayImage(64, 64), c, bad), std::invalid_argument);
    Contour outside = c;
    outside.points[0].x = 70;
    CHECK_THROWS_AS(snake_evolve(GrayImage(64, 64), outside, p), std::invalid_argument);
  }
}

TEST_CASE("edge_energy peaks near 1 on an ideal step") {
  GrayImage img(64, 16, 0);
  for (int y = 0; y < 16; ++y) {
    for (int x = 32; x < 64; ++x) {
      img.at(x, y) = 255;
    }
  }
  for (double s : {1.0, 2.0, 3.0}) {
    const auto e = edge_energy(img, s);
    float peak = 0;
    for (float v : e.data) {
      peak = std::max(peak, v);
    }
    CHECK(peak == doctest::Approx(1.0).epsilon(0.1));
  }
}

TEST_CASE("contour_to_mask") {
  SUBCASE("axis-aligned square") {
    const Contour sq{{{10, 10}, {20, 10}, {20, 20}, {10, 20}}};
    const auto m = contour_to_mask(sq, {32, 32});
    CHECK(m.popcount() == 121);
    CHECK(m.at(10, 10));
    CHECK(m.at(20, 20));
    CHECK_FALSE(m.at(21, 15));
  }
  SUBCASE("circle r=10") {
    const auto m = contour_to_mask(init_contour({32, 32, 10}, 100), {64, 64});
    CHECK(static_cast<double>(m.popcount()) >= 0.9 * kPi * 100);
    CHECK(static_cast<double>(m.popcount()) <= 1.1 * kPi * 100);
  }
  SUBCASE("collinear contour") {
    const Contour line{{{2, 2}, {6, 2}, {10, 2}}};
    const auto m = contour_to_mask(line, {16, 16});
    CHECK(m.popcount() <= 9);
    for (int x = 0; x < 16; ++x) {
      for (int y = 0; y < 16; ++y) {
        if (m.at(x, y)) {
          CHECK(y == 2);
        }
      }
    }
  }
  SUBCASE("random convex polygons against half-plane membership") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(0, 2 * kPi);
    std::uniform_real_distribution<double> rad(3, 14);
    for (int t = 0; t < 30; ++t) {
      std::vector<double> a(9);
      for (auto &v : a) {
        v = ang(rng);
      }
      std::sort(a.begin(), a.end());
      const double r = rad(rng);
      Contour c;
      for (double v : a) {
        c.points.push_back({16.3 + r * std::cos(v), 15.7 + r * std::sin(v)});
      }
      const auto m = contour_to_mask(c, {33, 33});
      for (int y = 0; y < 33; ++y) {
        for (int x = 0; x < 33; ++x) {
          CHECK(m.at(x, y) == in_convex(c, x, y));
        }
      }
    }
  }
  SUBCASE("polygon area and centroid") {
    const Contour sq{{{0, 0}, {4, 0}, {4, 2}, {0, 2}}};
    CHECK(polygon_area(sq) == doctest::Approx(8.0));
    CHECK(centroid(sq).x == doctest::Approx(2.0));
    CHECK(centroid(sq).y == doctest::Approx(1.0));
  }
}
