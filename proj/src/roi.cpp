#include "hsplit/roi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hsplit {

namespace {

std::string fmt_point(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

} // namespace

CircleROI circle_from_points(Point center, Point rim, Dims dims) {
  if (!dims.contains(center.x, center.y)) {
    throw std::invalid_argument("circle center " + fmt_point(center) +
                                " lies outside the image");
  }
  if (!dims.contains(rim.x, rim.y)) {
    throw std::invalid_argument("rim point " + fmt_point(rim) +
                                " lies outside the image");
  }
  if (center == rim) {
    throw std::invalid_argument("degenerate circle: center and rim coincide at " +
                                fmt_point(center));
  }
  const double dx = rim.x - center.x;
  const double dy = rim.y - center.y;
  return CircleROI{center.x, center.y, std::hypot(dx, dy)};
}

BinaryMask circle_mask(const CircleROI &roi, Dims dims) {
  BinaryMask mask(dims);
  const double r2 = roi.r * roi.r;
  const int reach = static_cast<int>(std::ceil(roi.r));
  const int y0 = std::max(0, roi.cy - reach);
  const int y1 = std::min(dims.height - 1, roi.cy + reach);
  const int x0 = std::max(0, roi.cx - reach);
  const int x1 = std::min(dims.width - 1, roi.cx + reach);
  for (int y = y0; y <= y1; ++y) {
    const double dy = y - roi.cy;
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - roi.cx;
      if (dx * dx + dy * dy <= r2) {
        mask.set(x, y, true);
      }
    }
  }
  return mask;
}

} // namespace hsplit
