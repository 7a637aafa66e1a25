#pragma once

#include <string_view>

#include "hsplit/image.hpp"

namespace hsplit {

enum class HistogramShape { Decaying, Bell };

std::string_view to_string(HistogramShape shape);

struct ThresholdParams {
  /// Right border between dominant and noise populations, as a fraction of the peak.
  double right_threshold = 0.10;
  /// Left border, as a fraction of the peak.
  double left_threshold = 0.25;
  /// Smoothed-peak bin at or below which a histogram counts as decaying.
  int decay_peak_cutoff = 5;

  void validate() const;
};

/// Left/right pointers around the histogram peak.
/// Invariants: 0 <= xl < xr <= 255 and xl <= xp <= xr.
struct PointerPair {
  int xl = 0;
  int xr = 255;
  int xp = 0;
  HistogramShape shape = HistogramShape::Bell;

  friend bool operator==(const PointerPair &, const PointerPair &) = default;
};

/// Decaying iff the argmax of the 3-bin moving average (window clipped at the
/// ends, ties to the lowest bin) is <= decay_peak_cutoff; Bell otherwise.
HistogramShape classify(const Histogram256 &hist, const ThresholdParams &params = {});

/// Argmax of the raw counts, lowest index on ties.
int peak_bin(const Histogram256 &hist);

/// Places the two pointers.
///
/// Decaying: xl = 0, RP slides right from bin 1 and stops at the first bin
/// whose count is strictly below right_threshold * V(xp) (255 if none).
///
/// Bell: RP slides right from xp + 1 with the same rule; LP slides left from
/// xp - 1 and stops at the first bin strictly below left_threshold * V(xp)
/// (0 if none).
///
/// A decaying histogram whose raw peak sits past the first sub-threshold bin
/// cannot be split with xl = 0 without leaving the peak outside the band; it
/// is handled by the Bell rule and tagged Bell.
///
/// Comparisons are made on count / V(xp), so multiplying every count by a
/// positive integer leaves the result unchanged. Throws std::invalid_argument
/// for an empty histogram.
PointerPair place_pointers(const Histogram256 &hist, const ThresholdParams &params = {});

/// Runs one branch regardless of classification. A Decaying request still
/// falls back to the Bell rule when xl = 0 would leave the peak outside.
PointerPair place_pointers_as(const Histogram256 &hist, HistogramShape branch,
                              const ThresholdParams &params = {});

/// Throws std::invalid_argument unless 0 <= xl < xr <= 255.
void validate_pointers(int xl, int xr);

} // namespace hsplit
