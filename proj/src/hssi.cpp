#include "hsplit/hssi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

std::uint8_t scale_round_clamp(int v, double factor) {
  const double scaled = std::floor(static_cast<double>(v) * factor + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

} // namespace

void SplitParams::validate() const {
  if (!(rsf > 1.0) || !std::isfinite(rsf)) {
    throw std::invalid_argument("rsf must be > 1, got " + std::to_string(rsf));
  }
  if (!(lsf >= 0.0 && lsf < 1.0)) {
    throw std::invalid_argument("lsf must lie in [0,1), got " + std::to_string(lsf));
  }
}

Lut256 split_lut(int xl, int xr, const SplitParams &sp) {
  validate_pointers(xl, xr);
  sp.validate();
  Lut256 lut{};
  for (int v = 0; v < 256; ++v) {
    if (v > xr) {
      lut[v] = scale_round_clamp(v, sp.rsf);
    } else if (v < xl) {
      lut[v] = scale_round_clamp(v, sp.lsf);
    } else {
      lut[v] = static_cast<std::uint8_t>(v);
    }
  }
  return lut;
}

GrayImage apply_split(const GrayImage &img, int xl, int xr, const SplitParams &sp) {
  const Lut256 lut = split_lut(xl, xr, sp);
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  std::transform(src.begin(), src.end(), dst.begin(),
                 [&lut](std::uint8_t v) { return lut[v]; });
  return out;
}

} // namespace hsplit
