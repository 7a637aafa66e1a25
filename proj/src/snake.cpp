#include "hsplit/snake.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

double bilinear(const FloatImage &f, double x, double y) {
  const int w = f.width();
  const int h = f.height();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const int x0 = std::min(static_cast<int>(x), w - 1);
  const int y0 = std::min(static_cast<int>(y), h - 1);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = (1.0 - fx) * f.at(x0, y0) + fx * f.at(x1, y0);
  const double bot = (1.0 - fx) * f.at(x0, y1) + fx * f.at(x1, y1);
  return (1.0 - fy) * top + fy * bot;
}

// Cyclic pentadiagonal internal-energy operator for n points.
Eigen::MatrixXd internal_operator(int n, double alpha, double beta) {
  const double a = beta;
  const double b = -alpha - 4.0 * beta;
  const double c = 2.0 * alpha + 6.0 * beta;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) += c;
    m(i, (i + 1) % n) += b;
    m(i, (i + n - 1) % n) += b;
    m(i, (i + 2) % n) += a;
    m(i, (i + n - 2) % n) += a;
  }
  return m;
}

bool point_on_segment(double px, double py, const Vec2 &a, const Vec2 &b) {
  constexpr double kEps = 1e-9;
  const double cross = (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  if (len < kEps) {
    return std::hypot(px - a.x, py - a.y) < kEps;
  }
  if (std::fabs(cross) / len > kEps) {
    return false;
  }
  const double dot = (px - a.x) * (b.x - a.x) + (py - a.y) * (b.y - a.y);
  return dot >= -kEps && dot <= len * len + kEps;
}

} // namespace

double polygon_area(const Contour &c) {
  const std::size_t n = c.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 &p = c.points[i];
    const Vec2 &q = c.points[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return std::fabs(twice) * 0.5;
}

Vec2 centroid(const Contour &c) {
  Vec2 m;
  for (const auto &p : c.points) {
    m.x += p.x;
    m.y += p.y;
  }
  if (!c.points.empty()) {
    m.x /= static_cast<double>(c.size());
    m.y /= static_cast<double>(c.size());
  }
  return m;
}

void SnakeParams::validate() const {
  if (!(alpha > 0 && beta > 0 && gamma > 0 && kappa > 0)) {
    throw std::invalid_argument("snake weights alpha, beta, gamma, kappa must all be > 0");
  }
  if (iterations < 0) {
    throw std::invalid_argument("snake iterations must be >= 0");
  }
  if (n_points < 8) {
    throw std::invalid_argument("snake needs at least 8 points, got " +
                                std::to_string(n_points));
  }
  if (!(blur_sigma > 0)) {
    throw std::invalid_argument("snake blur_sigma must be > 0");
  }
}

Contour init_contour(const CircleROI &roi, int n_points, bool allow_small) {
  if (n_points < (allow_small ? 3 : 8)) {
    throw std::invalid_argument("contour needs at least 8 points, got " +
                                std::to_string(n_points));
  }
  Contour c;
  c.points.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n_points;
    c.points.push_back({roi.cx + roi.r * std::cos(theta), roi.cy + roi.r * std::sin(theta)});
  }
  return c;
}

FloatImage edge_energy(const GrayImage &img, double blur_sigma) {
  FloatImage e = sobel(gaussian_blur(to_float(img), blur_sigma)).magnitude;
  // Sobel responds with 8x the slope; an ideal 255 step blurred by sigma has
  // slope 255 / (sigma sqrt(2 pi)) at its center.
  const float scale = static_cast<float>(blur_sigma * std::sqrt(2.0 * std::numbers::pi) /
                                         (8.0 * 255.0));
  for (auto &v : e.data) {
    v *= scale;
  }
  return e;
}

Contour snake_evolve(const GrayImage &img, const Contour &init, const SnakeParams &params) {
  params.validate();
  if (params.iterations == 0) {
    return init;
  }
  const int n = static_cast<int>(init.size());
  if (n < 3) {
    throw std::invalid_argument("snake contour needs at least 3 points");
  }
  const double max_x = img.width() - 1;
  const double max_y = img.height() - 1;
  for (const auto &p : init.points) {
    if (!(p.x >= 0 && p.y >= 0 && p.x <= max_x && p.y <= max_y)) {
      throw std::invalid_argument("initial contour leaves the image");
    }
  }

  const FloatImage energy = edge_energy(img, params.blur_sigma);
  const GradientField force = sobel(energy);
  // Sobel -> central derivative.
  const double fscale = params.kappa * params.gamma / 8.0;

  const Eigen::MatrixXd system =
      Eigen::MatrixXd::Identity(n, n) + params.gamma * internal_operator(n, params.alpha, params.beta);
  const Eigen::MatrixXd step = system.partialPivLu().inverse();

  Eigen::VectorXd xs(n), ys(n), bx(n), by(n);
  for (int i = 0; i < n; ++i) {
    xs(i) = init.points[static_cast<std::size_t>(i)].x;
    ys(i) = init.points[static_cast<std::size_t>(i)].y;
  }
  for (int it = 0; it < params.iterations; ++it) {
    for (int i = 0; i < n; ++i) {
      bx(i) = xs(i) + fscale * bilinear(force.gx, xs(i), ys(i));
      by(i) = ys(i) + fscale * bilinear(force.gy, xs(i), ys(i));
    }
    xs.noalias() = step * bx;
    ys.noalias() = step * by;
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(xs(i)) || !std::isfinite(ys(i))) {
        throw std::runtime_error("snake diverged at iteration " + std::to_string(it));
      }
      xs(i) = std::clamp(xs(i), 0.0, max_x);
      ys(i) = std::clamp(ys(i), 0.0, max_y);
    }
  }

  Contour out;
  out.points.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.points[static_cast<std::size_t>(i)] = {xs(i), ys(i)};
  }
  return out;
}

BinaryMask contour_to_mask(const Contour &c, Dims dims) {
  BinaryMask mask(dims);
  const std::size_t n = c.size();
  if (n == 0) {
    return mask;
  }
  double minx = c.points[0].x, maxx = minx, miny = c.points[0].y, maxy = miny;
  for (const auto &p : c.points) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(minx)));
  const int x1 = std::min(dims.width - 1, static_cast<int>(std::ceil(maxx)));
  const int y0 = std::max(0, static_cast<int>(std::floor(miny)));
  const int y1 = std::min(dims.height - 1, static_cast<int>(std::ceil(maxy)));

  for (int y = y0; y <= y1; ++y) {
    const double py = y;
    for (int x = x0; x <= x1; ++x) {
      const double px = x;
      bool inside = false;
      bool on_edge = false;
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 &a = c.points[i];
        const Vec2 &b = c.points[j];
        if (point_on_segment(px, py, a, b)) {
          on_edge = true;
          break;
        }
        if ((a.y > py) != (b.y > py)) {
          const double xcross = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
          if (px < xcross) {
            inside = !inside;
          }
        }
      }
      if (inside || on_edge) {
        mask.set(x, y, true);
      }
    }
  }
  return mask;
}

} // namespace hsplit
