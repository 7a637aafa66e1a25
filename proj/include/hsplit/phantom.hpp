#pragma once

#include <cstdint>

#include "hsplit/image.hpp"
#include "hsplit/roi.hpp"

namespace hsplit {

struct EllipseLesion {
  double cx = 128.0;
  double cy = 128.0;
  double semi_major = 40.0;
  double semi_minor = 30.0;
  double rotation = 0.0; ///< radians, major axis measured from +x toward +y
};

/// Synthetic ultrasound-like phantom: a dark elliptical lesion on a brighter
/// background with multiplicative speckle and additive Gaussian noise.
struct PhantomSpec {
  int width = 256;
  int height = 256;
  EllipseLesion lesion{};
  double lesion_mean = 35.0;
  double background_mean = 120.0;
  double speckle = 0.35;    ///< u ~ U[-1,1] scales the mean by (1 + speckle u)
  /// Spatial correlation length of u in pixels (Gaussian sigma of the
  /// underlying field); 0 draws u independently per pixel. u is a normalized
  /// Gaussian field pushed through the normal CDF, so its marginal is U[-1,1].
  double speckle_grain = 2.0;
  double noise_sigma = 5.0; ///< additive N(0, sigma)
  std::uint64_t seed = 0;

  void validate() const;
};

struct Phantom {
  GrayImage image;
  BinaryMask ground_truth;
};

/// Deterministic for a fixed spec (including seed).
Phantom generate_phantom(const PhantomSpec &spec);

/// Exact rasterized ellipse.
BinaryMask ellipse_mask(const EllipseLesion &lesion, Dims dims);

/// Default-intensity phantom whose lesion geometry (center jitter, axes,
/// rotation) is drawn from `seed`.
PhantomSpec random_phantom_spec(std::uint64_t seed, int size = 256);

/// Seed clicks at the lesion center with the rim click on the +x axis at
/// `rim_fraction` of the minor semi-axis; the circle therefore stays inside
/// the lesion for any rotation.
SeedPoints centered_seed(const PhantomSpec &spec, double rim_fraction = 0.8);

} // namespace hsplit
