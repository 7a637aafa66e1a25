#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsplit/image.hpp"

namespace hsplit {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads an 8-bit PNG or binary PGM (P5). Color PNGs are reduced to gray with
/// integer-rounded Rec.601 luminance; alpha is dropped. Anything wider than 8
/// bits per channel is rejected with "unsupported bit depth".
GrayImage load_gray(const std::filesystem::path &path);

/// Writes PGM when the extension is .pgm, PNG otherwise.
void save_gray(const GrayImage &img, const std::filesystem::path &path);

/// Masks are stored as 0/255 gray images and re-thresholded at 128 on load.
BinaryMask load_mask(const std::filesystem::path &path);
void save_mask(const BinaryMask &mask, const std::filesystem::path &path);

std::vector<std::uint8_t> encode_png(const GrayImage &img);
GrayImage decode_png(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_pgm(const GrayImage &img);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

} // namespace hsplit
