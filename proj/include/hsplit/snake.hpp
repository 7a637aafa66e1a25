#pragma once

#include <vector>

#include "hsplit/edges.hpp"
#include "hsplit/image.hpp"
#include "hsplit/roi.hpp"

namespace hsplit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

/// Closed polygon; the last point connects back to the first.
struct Contour {
  std::vector<Vec2> points;

  std::size_t size() const { return points.size(); }
  friend bool operator==(const Contour &, const Contour &) = default;
};

/// Shoelace area (absolute value).
double polygon_area(const Contour &c);
Vec2 centroid(const Contour &c);

struct SnakeParams {
  double alpha = 0.1;       ///< elasticity
  double beta = 0.5;        ///< rigidity
  double gamma = 1.0;       ///< time step
  double kappa = 2.0;       ///< external force weight
  int iterations = 300;
  int n_points = 100;
  double blur_sigma = 2.0;  ///< smoothing before the gradient

  void validate() const;
};

/// n_points equally spaced by angle, starting at angle 0 (the +x axis) and
/// turning toward +y. Throws for n_points < 8 unless `allow_small` is set.
Contour init_contour(const CircleROI &roi, int n_points, bool allow_small = false);

/// Edge-attraction energy: gradient magnitude of the blurred image, scaled so
/// that an ideal 0-to-255 step peaks at 1 regardless of blur_sigma.
FloatImage edge_energy(const GrayImage &img, double blur_sigma);

/// Kass-style snake with the semi-implicit update
///   (I + gamma A) x_{t+1} = x_t + gamma kappa grad(E)(x_t),
/// where A is the cyclic pentadiagonal elasticity/rigidity operator. Points are
/// clamped to the image after every step. Throws std::runtime_error if a
/// coordinate becomes non-finite.
Contour snake_evolve(const GrayImage &img, const Contour &init, const SnakeParams &params);

/// Even-odd rasterization at pixel centers; pixels lying on an edge of the
/// polygon count as inside.
BinaryMask contour_to_mask(const Contour &c, Dims dims);

} // namespace hsplit
