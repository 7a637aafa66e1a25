#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "hsplit/edges.hpp"
#include "hsplit/hssi.hpp"
#include "hsplit/image.hpp"
#include "hsplit/morph.hpp"
#include "hsplit/roi.hpp"
#include "hsplit/snake.hpp"
#include "hsplit/two_pointer.hpp"

namespace hsplit {

struct PipelineConfig {
  ThresholdParams threshold{};
  SplitParams split{};
  EdgeParams edge{};
  WashupParams washup{};
  SnakeParams snake{};
  int se_size = 3;

  void validate() const;
};

struct PipelineMetrics {
  double dsc_original = 0.0;
  double dsc_hssi = 0.0;
  double pir_original = 0.0;
  double pir_ehssi = 0.0;
  double pir_washed = 0.0;
};

struct PipelineResult {
  CircleROI roi;
  PointerPair pointer_pair;
  GrayImage hssi;
  BinaryMask edge_original;
  BinaryMask ehssi;
  BinaryMask washed;
  BinaryMask eehssi;
  Contour contour_original;
  Contour contour_hssi;
  BinaryMask seg_original;
  BinaryMask seg_hssi;
  std::optional<PipelineMetrics> metrics;
};

/// Failure inside run_pipeline, tagged with the stage that raised it.
/// `invalid_input()` distinguishes precondition violations (bad seed, bad
/// parameters, mismatched ground truth) from internal failures.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, std::string message, bool invalid_input);

  const std::string &stage() const { return stage_; }
  const std::string &detail() const { return detail_; }
  bool invalid_input() const { return invalid_input_; }

private:
  std::string stage_;
  std::string detail_;
  bool invalid_input_;
};

/// circle -> ROI histogram -> pointers -> HSSI -> Canny on original and HSSI
/// -> wash-up / EEHSSI -> snake on both images from the same initial contour
/// -> DSC/PIR when a ground truth is given.
PipelineResult run_pipeline(const GrayImage &img, const SeedPoints &seed,
                            const PipelineConfig &cfg = {},
                            const BinaryMask *ground_truth = nullptr);

} // namespace hsplit
