#include "hsplit/image.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

void check_same(Dims a, Dims b, const char *what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.width) + "x" +
                                std::to_string(a.height) + " vs " +
                                std::to_string(b.width) + "x" +
                                std::to_string(b.height) + ")");
  }
}

} // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : dims_{width, height} {
  check_dims(width, height);
  pixels_.assign(dims_.area(), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : dims_{width, height}, pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != dims_.area()) {
    throw std::invalid_argument("pixel buffer has " +
                                std::to_string(pixels_.size()) +
                                " entries, expected " +
                                std::to_string(dims_.area()));
  }
}

BinaryMask::BinaryMask(int width, int height, bool fill)
    : dims_{width, height} {
  check_dims(width, height);
  bits_.assign(dims_.area(), fill ? 1 : 0);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : dims_{width, height}, bits_(std::move(bits)) {
  check_dims(width, height);
  if (bits_.size() != dims_.area()) {
    throw std::invalid_argument("mask buffer has " + std::to_string(bits_.size()) +
                                " entries, expected " +
                                std::to_string(dims_.area()));
  }
  for (auto &b : bits_) {
    b = b ? 1 : 0;
  }
}

std::size_t BinaryMask::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

GrayImage BinaryMask::to_gray() const {
  std::vector<std::uint8_t> px(bits_.size());
  std::transform(bits_.begin(), bits_.end(), px.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
  return GrayImage(dims_.width, dims_.height, std::move(px));
}

BinaryMask BinaryMask::from_gray(const GrayImage &img) {
  std::vector<std::uint8_t> bits(img.size());
  auto src = img.pixels();
  std::transform(src.begin(), src.end(), bits.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v >= 128 ? 1 : 0; });
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

BinaryMask mask_and(const BinaryMask &a, const BinaryMask &b) {
  check_same(a.dims(), b.dims(), "mask_and");
  BinaryMask out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.set(i, a[i] && b[i]);
  }
  return out;
}

BinaryMask mask_or(const BinaryMask &a, const BinaryMask &b) {
  check_same(a.dims(), b.dims(), "mask_or");
  BinaryMask out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.set(i, a[i] || b[i]);
  }
  return out;
}

BinaryMask mask_not(const BinaryMask &a) {
  BinaryMask out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.set(i, !a[i]);
  }
  return out;
}

bool is_subset(const BinaryMask &a, const BinaryMask &b) {
  check_same(a.dims(), b.dims(), "is_subset");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) {
      return false;
    }
  }
  return true;
}

Histogram256 make_histogram(std::span<const std::uint64_t> counts) {
  if (counts.size() != 256) {
    throw std::invalid_argument("histogram needs exactly 256 bins, got " +
                                std::to_string(counts.size()));
  }
  Histogram256 h;
  std::copy(counts.begin(), counts.end(), h.counts.begin());
  h.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return h;
}

Histogram256 masked_histogram(const GrayImage &img, const BinaryMask &mask) {
  check_same(img.dims(), mask.dims(), "masked_histogram");
  Histogram256 h;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (mask[i]) {
      ++h.counts[img[i]];
      ++h.total;
    }
  }
  return h;
}

Histogram256 image_histogram(const GrayImage &img) {
  Histogram256 h;
  for (auto v : img.pixels()) {
    ++h.counts[v];
  }
  h.total = img.size();
  return h;
}

} // namespace hsplit
