#include "hsplit/two_pointer.hpp"

#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

void require_nonempty(const Histogram256 &hist) {
  if (hist.total == 0) {
    throw std::invalid_argument("empty histogram: the ROI contains no pixels");
  }
}

} // namespace

std::string_view to_string(HistogramShape shape) {
  return shape == HistogramShape::Decaying ? "decaying" : "bell";
}

void ThresholdParams::validate() const {
  if (!(right_threshold > 0.0 && right_threshold < 1.0)) {
    throw std::invalid_argument("right_threshold must lie in (0,1), got " +
                                std::to_string(right_threshold));
  }
  if (!(left_threshold > 0.0 && left_threshold < 1.0)) {
    throw std::invalid_argument("left_threshold must lie in (0,1), got " +
                                std::to_string(left_threshold));
  }
  if (decay_peak_cutoff < 0 || decay_peak_cutoff > 255) {
    throw std::invalid_argument("decay_peak_cutoff must be a bin index, got " +
                                std::to_string(decay_peak_cutoff));
  }
}

void validate_pointers(int xl, int xr) {
  if (!(0 <= xl && xl < xr && xr <= 255)) {
    throw std::invalid_argument("invalid pointer pair xl=" + std::to_string(xl) +
                                " xr=" + std::to_string(xr));
  }
}

int peak_bin(const Histogram256 &hist) {
  int best = 0;
  for (int i = 1; i < 256; ++i) {
    if (hist[i] > hist[best]) {
      best = i;
    }
  }
  return best;
}

HistogramShape classify(const Histogram256 &hist, const ThresholdParams &params) {
  require_nonempty(hist);
  params.validate();
  // Window mean sum_i / n_i compared exactly by cross-multiplication.
  std::uint64_t best_sum = 0;
  std::uint64_t best_n = 1;
  int best = 0;
  for (int i = 0; i < 256; ++i) {
    std::uint64_t sum = hist[i];
    std::uint64_t n = 1;
    if (i > 0) {
      sum += hist[i - 1];
      ++n;
    }
    if (i < 255) {
      sum += hist[i + 1];
      ++n;
    }
    if (i == 0 || sum * best_n > best_sum * n) {
      best_sum = sum;
      best_n = n;
      best = i;
    }
  }
  return best <= params.decay_peak_cutoff ? HistogramShape::Decaying
                                          : HistogramShape::Bell;
}

PointerPair place_pointers(const Histogram256 &hist, const ThresholdParams &params) {
  return place_pointers_as(hist, classify(hist, params), params);
}

PointerPair place_pointers_as(const Histogram256 &hist, HistogramShape branch,
                              const ThresholdParams &params) {
  require_nonempty(hist);
  params.validate();

  const int xp = peak_bin(hist);
  const double peak = static_cast<double>(hist[xp]);
  // count / peak is correctly rounded, hence identical for scaled histograms.
  auto below = [&](int i, double fraction) {
    return static_cast<double>(hist[i]) / peak < fraction;
  };
  auto slide_right = [&](int from) {
    for (int j = from; j <= 255; ++j) {
      if (below(j, params.right_threshold)) {
        return j;
      }
    }
    return 255;
  };

  if (branch == HistogramShape::Decaying) {
    const int xr = slide_right(1);
    if (xr >= xp) {
      return PointerPair{0, xr, xp, HistogramShape::Decaying};
    }
  }

  const int xr = slide_right(xp + 1);
  int xl = 0;
  for (int j = xp - 1; j >= 0; --j) {
    if (below(j, params.left_threshold)) {
      xl = j;
      break;
    }
  }
  return PointerPair{xl, xr, xp, HistogramShape::Bell};
}

} // namespace hsplit
