#include "hsplit/morph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hsplit {

void WashupParams::validate() const {
  if (!(ewr_factor > 0.0 && ewr_factor <= 1.0)) {
    throw std::invalid_argument("ewr_factor must lie in (0,1], got " +
                                std::to_string(ewr_factor));
  }
}

StructuringElement StructuringElement::square(int size) {
  if (size < 1) {
    throw std::invalid_argument("structuring element size must be >= 1");
  }
  return StructuringElement(size, size,
                            std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 1));
}

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0) {
    throw std::invalid_argument("structuring element must have odd dimensions, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("structuring element buffer size mismatch");
  }
}

bool StructuringElement::at(int dx, int dy) const {
  const int x = dx + width_ / 2;
  const int y = dy + height_ / 2;
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    return false;
  }
  return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
}

BinaryMask washup(const BinaryMask &edge, const CircleROI &roi, const WashupParams &params) {
  params.validate();
  BinaryMask out = edge;
  const double ewr = params.ewr_factor * roi.r;
  const double ewr2 = ewr * ewr;
  const int reach = static_cast<int>(std::ceil(ewr));
  for (int y = std::max(0, roi.cy - reach); y <= std::min(edge.height() - 1, roi.cy + reach); ++y) {
    for (int x = std::max(0, roi.cx - reach); x <= std::min(edge.width() - 1, roi.cx + reach);
         ++x) {
      const double dx = x - roi.cx;
      const double dy = y - roi.cy;
      if (dx * dx + dy * dy <= ewr2) {
        out.set(x, y, false);
      }
    }
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask &mask) {
  const int w = mask.width();
  const int h = mask.height();
  // Flood the background from every border pixel; whatever stays unreached
  // is an enclosed hole.
  std::vector<std::uint8_t> reached(mask.size(), 0);
  std::vector<int> stack;
  auto seed = [&](int x, int y) {
    const std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (!mask[i] && !reached[i]) {
      reached[i] = 1;
      stack.push_back(static_cast<int>(i));
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!stack.empty()) {
    const int p = stack.back();
    stack.pop_back();
    const int x = p % w;
    const int y = p / w;
    if (x > 0) seed(x - 1, y);
    if (x + 1 < w) seed(x + 1, y);
    if (y > 0) seed(x, y - 1);
    if (y + 1 < h) seed(x, y + 1);
  }
  BinaryMask out(mask.dims());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    out.set(i, mask[i] || !reached[i]);
  }
  return out;
}

BinaryMask dilate(const BinaryMask &mask, const StructuringElement &se) {
  const int w = mask.width();
  const int h = mask.height();
  const int rx = se.width() / 2;
  const int ry = se.height() / 2;
  BinaryMask out(mask.dims());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) {
        continue;
      }
      for (int dy = -ry; dy <= ry; ++dy) {
        for (int dx = -rx; dx <= rx; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (se.at(dx, dy) && nx >= 0 && ny >= 0 && nx < w && ny < h) {
            out.set(nx, ny, true);
          }
        }
      }
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask &mask, const StructuringElement &se) {
  const int w = mask.width();
  const int h = mask.height();
  const int rx = se.width() / 2;
  const int ry = se.height() / 2;
  BinaryMask out(mask.dims());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool keep = true;
      for (int dy = -ry; dy <= ry && keep; ++dy) {
        for (int dx = -rx; dx <= rx; ++dx) {
          if (!se.at(dx, dy)) {
            continue;
          }
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h || !mask.at(nx, ny)) {
            keep = false;
            break;
          }
        }
      }
      out.set(x, y, keep);
    }
  }
  return out;
}

BinaryMask morph_close(const BinaryMask &mask, const StructuringElement &se) {
  return erode(dilate(mask, se), se);
}

BinaryMask eehssi(const BinaryMask &edge_hssi, const CircleROI &roi, const WashupParams &wp,
                  const StructuringElement &se) {
  return fill_holes(morph_close(fill_holes(washup(edge_hssi, roi, wp)), se));
}

} // namespace hsplit
