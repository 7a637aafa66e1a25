#pragma once

#include <array>
#include <cstdint>

#include "hsplit/image.hpp"
#include "hsplit/two_pointer.hpp"

namespace hsplit {

struct SplitParams {
  double rsf = 1.5; ///< right splitting factor, > 1
  double lsf = 0.5; ///< left splitting factor, in [0, 1)

  void validate() const;
};

using Lut256 = std::array<std::uint8_t, 256>;

/// v > xr -> clamp(round(v * rsf)); v < xl -> clamp(round(v * lsf)); else v.
/// Rounding is half-up.
Lut256 split_lut(int xl, int xr, const SplitParams &sp);

/// Histogram split-and-stretch over the whole image.
GrayImage apply_split(const GrayImage &img, int xl, int xr, const SplitParams &sp);
inline GrayImage apply_split(const GrayImage &img, const PointerPair &pp,
                             const SplitParams &sp) {
  return apply_split(img, pp.xl, pp.xr, sp);
}

} // namespace hsplit
