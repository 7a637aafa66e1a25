#pragma once

#include "hsplit/image.hpp"

namespace hsplit {

/// User-initialized circle: a center click and a rim click.
struct CircleROI {
  int cx = 0;
  int cy = 0;
  double r = 0.0;
};

/// Seed clicks as transported by the CLI, manifest and service: (cx, cy, px, py).
struct SeedPoints {
  Point center;
  Point rim;
};

/// Radius is the Euclidean distance between the two clicks. Throws
/// std::invalid_argument for identical points ("degenerate circle") or points
/// outside `dims`.
CircleROI circle_from_points(Point center, Point rim, Dims dims);
inline CircleROI circle_from_points(const SeedPoints &seed, Dims dims) {
  return circle_from_points(seed.center, seed.rim, dims);
}

/// Inclusive disk membership (dx^2 + dy^2 <= r^2), clipped to the image.
BinaryMask circle_mask(const CircleROI &roi, Dims dims);

} // namespace hsplit
