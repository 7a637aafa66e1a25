#include "hsplit/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace hsplit {

namespace {

void require_same(const BinaryMask &a, const BinaryMask &b, const char *op) {
  if (a.dims() != b.dims()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  }
}

} // namespace

MetricValue dsc(const BinaryMask &x, const BinaryMask &y) {
  require_same(x, y, "dsc");
  std::size_t nx = 0, ny = 0, both = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nx += x[i];
    ny += y[i];
    both += x[i] && y[i];
  }
  if (nx + ny == 0) {
    throw std::invalid_argument("undefined DSC: both masks are empty");
  }
  return {2.0 * static_cast<double>(both) / static_cast<double>(nx + ny), MetricKind::DSC};
}

MetricValue pir(const BinaryMask &edge, const BinaryMask &roi_gt) {
  require_same(edge, roi_gt, "pir");
  std::size_t area = 0, inside = 0;
  for (std::size_t i = 0; i < roi_gt.size(); ++i) {
    if (roi_gt[i]) {
      ++area;
      inside += edge[i];
    }
  }
  if (area == 0) {
    throw std::invalid_argument("undefined PIR: ground-truth ROI is empty");
  }
  return {100.0 * static_cast<double>(inside) / static_cast<double>(area), MetricKind::PIR};
}

std::string format_metric(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

} // namespace hsplit
