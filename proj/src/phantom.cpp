#include "hsplit/phantom.hpp"

#include "hsplit/edges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace hsplit {

void PhantomSpec::validate() const {
  if (width < 8 || height < 8) {
    throw std::invalid_argument("phantom must be at least 8x8");
  }
  const auto &l = lesion;
  if (!(l.semi_major > 0 && l.semi_minor > 0)) {
    throw std::invalid_argument("lesion axes must be positive");
  }
  // Axis-aligned half extents of the rotated ellipse.
  const double c = std::cos(l.rotation);
  const double s = std::sin(l.rotation);
  const double hx = std::hypot(l.semi_major * c, l.semi_minor * s);
  const double hy = std::hypot(l.semi_major * s, l.semi_minor * c);
  if (l.cx - hx < 0 || l.cy - hy < 0 || l.cx + hx > width - 1 || l.cy + hy > height - 1) {
    throw std::invalid_argument("lesion extends outside the image");
  }
  if (speckle < 0 || noise_sigma < 0 || speckle_grain < 0) {
    throw std::invalid_argument("noise strengths must be non-negative");
  }
}

BinaryMask ellipse_mask(const EllipseLesion &l, Dims dims) {
  BinaryMask m(dims);
  const double c = std::cos(l.rotation);
  const double s = std::sin(l.rotation);
  const double a2 = l.semi_major * l.semi_major;
  const double b2 = l.semi_minor * l.semi_minor;
  for (int y = 0; y < dims.height; ++y) {
    for (int x = 0; x < dims.width; ++x) {
      const double dx = x - l.cx;
      const double dy = y - l.cy;
      const double u = dx * c + dy * s;
      const double v = -dx * s + dy * c;
      if (u * u / a2 + v * v / b2 <= 1.0) {
        m.set(x, y, true);
      }
    }
  }
  return m;
}

Phantom generate_phantom(const PhantomSpec &spec) {
  spec.validate();
  const Dims dims{spec.width, spec.height};
  BinaryMask gt = ellipse_mask(spec.lesion, dims);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Speckle field: unit-variance Gaussian (optionally smoothed and
  // renormalized) mapped through the normal CDF onto U[-1,1].
  FloatImage field(dims);
  for (auto &v : field.data) {
    v = static_cast<float>(gauss(rng));
  }
  if (spec.speckle_grain > 0) {
    field = gaussian_blur(field, spec.speckle_grain);
    double sum2 = 0.0;
    for (float v : field.data) {
      sum2 += static_cast<double>(v) * v;
    }
    const double rms = std::sqrt(sum2 / static_cast<double>(field.data.size()));
    for (auto &v : field.data) {
      v = static_cast<float>(v / rms);
    }
  }

  GrayImage img(spec.width, spec.height);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double u = std::erf(field.data[i] / std::numbers::sqrt2);
    const double g = gauss(rng);
    const double mean = gt[i] ? spec.lesion_mean : spec.background_mean;
    const double v = mean * (1.0 + spec.speckle * u) + spec.noise_sigma * g;
    img[i] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
  return {std::move(img), std::move(gt)};
}

PhantomSpec random_phantom_spec(std::uint64_t seed, int size) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto draw = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  const double scale = size / 256.0;
  PhantomSpec spec;
  spec.width = size;
  spec.height = size;
  spec.seed = seed;
  spec.lesion.semi_major = draw(30.0, 44.0) * scale;
  spec.lesion.semi_minor = spec.lesion.semi_major * draw(0.75, 1.0);
  spec.lesion.rotation = draw(0.0, std::numbers::pi);
  spec.lesion.cx = size / 2.0 + draw(-20.0, 20.0) * scale;
  spec.lesion.cy = size / 2.0 + draw(-20.0, 20.0) * scale;
  return spec;
}

SeedPoints centered_seed(const PhantomSpec &spec, double rim_fraction) {
  const int cx = static_cast<int>(std::lround(spec.lesion.cx));
  const int cy = static_cast<int>(std::lround(spec.lesion.cy));
  const int r = std::max(1, static_cast<int>(std::lround(rim_fraction * spec.lesion.semi_minor)));
  return SeedPoints{{cx, cy}, {cx + r, cy}};
}

} // namespace hsplit
