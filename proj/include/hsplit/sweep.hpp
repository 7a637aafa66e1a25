#pragma once

#include <cstddef>
#include <vector>

#include "hsplit/image.hpp"
#include "hsplit/pipeline.hpp"

namespace hsplit {

/// Number of pointer pairs 0 <= xl < xr <= 255.
inline constexpr std::size_t kPointerPairCount = 256 * 255 / 2;

/// Row-major index of (xl, xr) in the xl < xr triangle.
std::size_t pair_index(int xl, int xr);

struct SweepResult {
  int best_xl = 0;
  int best_xr = 1;
  double best_pir = 0.0;
  /// PIR for every pair, ordered by xl then xr (see pair_index).
  std::vector<double> grid;
  /// Pair chosen by the two-pointer rule for the same seed.
  PointerPair default_pair;

  double pir_at(int xl, int xr) const { return grid.at(pair_index(xl, xr)); }
};

/// Exhaustive pointer search: for every pair build the split image, run Canny
/// and score PIR against `gt`. Ties resolve to the smallest xl, then xr.
/// `threads` = 0 uses the hardware concurrency.
SweepResult sweep(const GrayImage &img, const SeedPoints &seed, const BinaryMask &gt,
                  const PipelineConfig &cfg = {}, unsigned threads = 0);

} // namespace hsplit
