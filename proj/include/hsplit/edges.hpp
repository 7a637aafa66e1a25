#pragma once

#include <vector>

#include "hsplit/image.hpp"

namespace hsplit {

/// Single-channel float raster used for intermediate fields.
struct FloatImage {
  Dims dims;
  std::vector<float> data;

  FloatImage() = default;
  explicit FloatImage(Dims d, float fill = 0.0f) : dims(d), data(d.area(), fill) {}

  int width() const { return dims.width; }
  int height() const { return dims.height; }
  float at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * dims.width + x];
  }
  float &at(int x, int y) { return data[static_cast<std::size_t>(y) * dims.width + x]; }
};

FloatImage to_float(const GrayImage &img);

/// Separable Gaussian, radius ceil(3 sigma), edge-replicated borders.
FloatImage gaussian_blur(const FloatImage &img, double sigma);

struct GradientField {
  FloatImage gx;
  FloatImage gy;
  FloatImage magnitude;
};

/// 3x3 Sobel with edge replication.
GradientField sobel(const FloatImage &img);

/// Sobel magnitude sqrt(Gx^2 + Gy^2). Requires at least 3x3.
FloatImage sobel_gradient(const GrayImage &img);

struct EdgeParams {
  double gaussian_sigma = 1.4;
  double low_fraction = 0.05;  ///< of the max suppressed gradient
  double high_fraction = 0.10; ///< of the max suppressed gradient

  void validate() const;
};

/// Canny: Gaussian smoothing, Sobel gradient, non-maximum suppression along
/// the quantized gradient direction, then hysteresis where weak pixels
/// survive when 8-connected to a strong one. Requires at least 5x5.
BinaryMask canny(const GrayImage &img, const EdgeParams &params = {});

} // namespace hsplit
