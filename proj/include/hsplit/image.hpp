#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hsplit {

struct Dims {
  int width = 0;
  int height = 0;

  std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }
  friend bool operator==(const Dims &, const Dims &) = default;
};

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point &, const Point &) = default;
};

/// 8-bit single-channel raster, row-major.
class GrayImage {
public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  Dims dims() const { return dims_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * dims_.width + x];
  }
  std::uint8_t &at(int x, int y) {
    return pixels_[static_cast<std::size_t>(y) * dims_.width + x];
  }
  std::uint8_t operator[](std::size_t i) const { return pixels_[i]; }
  std::uint8_t &operator[](std::size_t i) { return pixels_[i]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  friend bool operator==(const GrayImage &, const GrayImage &) = default;

private:
  Dims dims_{};
  std::vector<std::uint8_t> pixels_;
};

/// Row-major boolean raster; true marks foreground, edge or object pixels.
/// Stored one byte per pixel (0 or 1).
class BinaryMask {
public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);
  explicit BinaryMask(Dims dims, bool fill = false)
      : BinaryMask(dims.width, dims.height, fill) {}
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  Dims dims() const { return dims_; }
  std::size_t size() const { return bits_.size(); }

  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * dims_.width + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits_[static_cast<std::size_t>(y) * dims_.width + x] = v ? 1 : 0;
  }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

  std::size_t popcount() const;
  bool any() const { return popcount() > 0; }

  std::span<const std::uint8_t> bits() const { return bits_; }

  /// 0 -> 0, foreground -> 255.
  GrayImage to_gray() const;
  /// Foreground where the pixel is >= 128.
  static BinaryMask from_gray(const GrayImage &img);

  friend bool operator==(const BinaryMask &, const BinaryMask &) = default;

private:
  Dims dims_{};
  std::vector<std::uint8_t> bits_;
};

/// Element-wise set operations; operands must share dimensions.
BinaryMask mask_and(const BinaryMask &a, const BinaryMask &b);
BinaryMask mask_or(const BinaryMask &a, const BinaryMask &b);
BinaryMask mask_not(const BinaryMask &a);
/// True iff every foreground pixel of `a` is foreground in `b`.
bool is_subset(const BinaryMask &a, const BinaryMask &b);

struct Histogram256 {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;

  std::uint64_t operator[](int i) const { return counts[static_cast<std::size_t>(i)]; }
  friend bool operator==(const Histogram256 &, const Histogram256 &) = default;
};

/// Builds a histogram from explicit counts; total is their sum.
Histogram256 make_histogram(std::span<const std::uint64_t> counts);

Histogram256 masked_histogram(const GrayImage &img, const BinaryMask &mask);
Histogram256 image_histogram(const GrayImage &img);

} // namespace hsplit
