#pragma once

#include <string>

#include "hsplit/image.hpp"

namespace hsplit {

enum class MetricKind { DSC, PIR };

struct MetricValue {
  double value = 0.0;
  MetricKind kind = MetricKind::DSC;

  operator double() const { return value; }
};

/// Dice similarity 2|X n Y| / (|X| + |Y|), in [0, 1].
/// Throws std::invalid_argument on dimension mismatch or when both masks are
/// empty ("undefined DSC").
MetricValue dsc(const BinaryMask &x, const BinaryMask &y);

/// Pixel irregularities ratio: 100 * (edge pixels inside the ground-truth ROI)
/// / |ROI|. Throws std::invalid_argument for an empty ROI.
MetricValue pir(const BinaryMask &edge, const BinaryMask &roi_gt);

/// Fixed 4-decimal rendering used in reports.
std::string format_metric(double v);

} // namespace hsplit
