#include "hsplit/edges.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

void require_min_size(Dims d, int min_side, const char *op) {
  if (d.width < min_side || d.height < min_side) {
    throw std::invalid_argument(std::string(op) + " needs an image of at least " +
                                std::to_string(min_side) + "x" +
                                std::to_string(min_side) + ", got " +
                                std::to_string(d.width) + "x" +
                                std::to_string(d.height));
  }
}

std::vector<float> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<float> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = static_cast<float>(w);
    sum += w;
  }
  for (auto &w : k) {
    w = static_cast<float>(w / sum);
  }
  return k;
}

} // namespace

FloatImage to_float(const GrayImage &img) {
  FloatImage out(img.dims());
  auto px = img.pixels();
  std::transform(px.begin(), px.end(), out.data.begin(),
                 [](std::uint8_t v) { return static_cast<float>(v); });
  return out;
}

FloatImage gaussian_blur(const FloatImage &img, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("gaussian sigma must be > 0, got " + std::to_string(sigma));
  }
  const auto k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int w = img.width();
  const int h = img.height();

  FloatImage tmp(img.dims);
  std::vector<int> xi(static_cast<std::size_t>(w + 2 * radius));
  for (int x = -radius; x < w + radius; ++x) {
    xi[static_cast<std::size_t>(x + radius)] = std::clamp(x, 0, w - 1);
  }
  for (int y = 0; y < h; ++y) {
    const float *row = img.data.data() + static_cast<std::size_t>(y) * w;
    float *dst = tmp.data.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      float acc = 0.0f;
      for (int t = 0; t < static_cast<int>(k.size()); ++t) {
        acc += k[static_cast<std::size_t>(t)] * row[xi[static_cast<std::size_t>(x + t)]];
      }
      dst[x] = acc;
    }
  }

  FloatImage out(img.dims);
  for (int y = 0; y < h; ++y) {
    float *dst = out.data.data() + static_cast<std::size_t>(y) * w;
    for (int t = 0; t < static_cast<int>(k.size()); ++t) {
      const int sy = std::clamp(y + t - radius, 0, h - 1);
      const float *src = tmp.data.data() + static_cast<std::size_t>(sy) * w;
      const float kt = k[static_cast<std::size_t>(t)];
      for (int x = 0; x < w; ++x) {
        dst[x] += kt * src[x];
      }
    }
  }
  return out;
}

GradientField sobel(const FloatImage &img) {
  const int w = img.width();
  const int h = img.height();
  GradientField g{FloatImage(img.dims), FloatImage(img.dims), FloatImage(img.dims)};
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, w - 1);
      const float gx = (img.at(xp, ym) + 2.0f * img.at(xp, y) + img.at(xp, yp)) -
                       (img.at(xm, ym) + 2.0f * img.at(xm, y) + img.at(xm, yp));
      const float gy = (img.at(xm, yp) + 2.0f * img.at(x, yp) + img.at(xp, yp)) -
                       (img.at(xm, ym) + 2.0f * img.at(x, ym) + img.at(xp, ym));
      g.gx.at(x, y) = gx;
      g.gy.at(x, y) = gy;
      g.magnitude.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

FloatImage sobel_gradient(const GrayImage &img) {
  require_min_size(img.dims(), 3, "sobel_gradient");
  return sobel(to_float(img)).magnitude;
}

void EdgeParams::validate() const {
  if (!(gaussian_sigma > 0.0)) {
    throw std::invalid_argument("canny sigma must be > 0");
  }
  if (!(low_fraction > 0.0 && low_fraction < high_fraction && high_fraction < 1.0)) {
    throw std::invalid_argument("canny thresholds must satisfy 0 < low < high < 1, got low=" +
                                std::to_string(low_fraction) +
                                " high=" + std::to_string(high_fraction));
  }
}

BinaryMask canny(const GrayImage &img, const EdgeParams &params) {
  require_min_size(img.dims(), 5, "canny");
  params.validate();
  const int w = img.width();
  const int h = img.height();
  const GradientField g = sobel(gaussian_blur(to_float(img), params.gaussian_sigma));

  // tan(22.5 deg), tan(67.5 deg)
  constexpr float kTan1 = 0.41421356f;
  constexpr float kTan3 = 2.41421356f;
  FloatImage nms(img.dims());
  float max_mag = 0.0f;
  auto mag = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= w || y >= h) ? 0.0f : g.magnitude.at(x, y);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float m = g.magnitude.at(x, y);
      if (m <= 0.0f) {
        continue;
      }
      const float gx = g.gx.at(x, y);
      const float gy = g.gy.at(x, y);
      const float ax = std::fabs(gx);
      const float ay = std::fabs(gy);
      int dx = 0;
      int dy = 0;
      if (ay <= kTan1 * ax) {
        dx = 1; // horizontal gradient
      } else if (ay >= kTan3 * ax) {
        dy = 1; // vertical gradient
      } else if ((gx > 0) == (gy > 0)) {
        dx = 1;
        dy = 1;
      } else {
        dx = 1;
        dy = -1;
      }
      // Strict on the backward side, non-strict forward: a two-pixel plateau
      // keeps exactly one pixel.
      if (m > mag(x - dx, y - dy) && m >= mag(x + dx, y + dy)) {
        nms.at(x, y) = m;
        max_mag = std::max(max_mag, m);
      }
    }
  }

  BinaryMask edges(img.dims());
  if (max_mag <= 1e-6f) {
    return edges;
  }
  const float high = static_cast<float>(params.high_fraction) * max_mag;
  const float low = static_cast<float>(params.low_fraction) * max_mag;

  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (nms.at(x, y) >= high && !edges.at(x, y)) {
        edges.set(x, y, true);
        stack.push_back(y * w + x);
        while (!stack.empty()) {
          const int p = stack.back();
          stack.pop_back();
          const int px = p % w;
          const int py = p / w;
          for (int ny = std::max(py - 1, 0); ny <= std::min(py + 1, h - 1); ++ny) {
            for (int nx = std::max(px - 1, 0); nx <= std::min(px + 1, w - 1); ++nx) {
              if (!edges.at(nx, ny) && nms.at(nx, ny) >= low) {
                edges.set(nx, ny, true);
                stack.push_back(ny * w + nx);
              }
            }
          }
        }
      }
    }
  }
  return edges;
}

} // namespace hsplit
