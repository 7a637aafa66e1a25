#pragma once

#include <vector>

#include "hsplit/image.hpp"
#include "hsplit/roi.hpp"

namespace hsplit {

struct WashupParams {
  /// Wash radius as a fraction of the circle radius.
  double ewr_factor = 0.8;

  void validate() const;
};

/// Odd-sized boolean neighborhood with its origin at the center.
class StructuringElement {
public:
  /// size x size, all true.
  static StructuringElement square(int size = 3);

  StructuringElement(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int dx, int dy) const; ///< offsets relative to the origin

private:
  int width_ = 3;
  int height_ = 3;
  std::vector<std::uint8_t> bits_;
};

/// Clears edge pixels within ewr_factor * r of the circle center.
BinaryMask washup(const BinaryMask &edge, const CircleROI &roi,
                  const WashupParams &params = {});

/// Background pixels not 4-connected to the border through background become
/// foreground.
BinaryMask fill_holes(const BinaryMask &mask);

/// Minkowski dilation; pixels outside the image contribute nothing.
BinaryMask dilate(const BinaryMask &mask, const StructuringElement &se);
/// Minkowski erosion; pixels outside the image count as background.
BinaryMask erode(const BinaryMask &mask, const StructuringElement &se);

/// erode(dilate(mask)). Idempotent. Extensive except along the border band
/// the element overhangs, where background-padded erosion can strip pixels.
BinaryMask morph_close(const BinaryMask &mask,
                       const StructuringElement &se = StructuringElement::square(3));

/// fill_holes(morph_close(fill_holes(washup(edge_hssi)))).
BinaryMask eehssi(const BinaryMask &edge_hssi, const CircleROI &roi,
                  const WashupParams &wp = {},
                  const StructuringElement &se = StructuringElement::square(3));

} // namespace hsplit
