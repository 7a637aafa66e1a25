#include "hsplit/pipeline.hpp"

#include <utility>

#include "hsplit/metrics.hpp"

namespace hsplit {

namespace {

template <typename F>
auto stage(const char *name, F &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const std::invalid_argument &e) {
    throw StageError(name, e.what(), true);
  } catch (const std::exception &e) {
    throw StageError(name, e.what(), false);
  }
}

} // namespace

StageError::StageError(std::string stage, std::string message, bool invalid_input)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)),
      detail_(std::move(message)), invalid_input_(invalid_input) {}

void PipelineConfig::validate() const {
  threshold.validate();
  split.validate();
  edge.validate();
  washup.validate();
  snake.validate();
  (void)StructuringElement::square(se_size);
  if (se_size % 2 == 0) {
    throw std::invalid_argument("se_size must be odd, got " + std::to_string(se_size));
  }
}

PipelineResult run_pipeline(const GrayImage &img, const SeedPoints &seed,
                            const PipelineConfig &cfg, const BinaryMask *ground_truth) {
  stage("config", [&] {
    cfg.validate();
    if (ground_truth != nullptr && ground_truth->dims() != img.dims()) {
      throw std::invalid_argument("ground truth dimensions differ from the image");
    }
    return 0;
  });

  PipelineResult r;
  r.roi = stage("roi", [&] { return circle_from_points(seed, img.dims()); });
  const BinaryMask circle = stage("roi", [&] { return circle_mask(r.roi, img.dims()); });
  const Histogram256 hist = stage("histogram", [&] { return masked_histogram(img, circle); });
  r.pointer_pair = stage("pointers", [&] { return place_pointers(hist, cfg.threshold); });
  r.hssi = stage("hssi", [&] { return apply_split(img, r.pointer_pair, cfg.split); });

  r.edge_original = stage("edges", [&] { return canny(img, cfg.edge); });
  r.ehssi = stage("edges", [&] { return canny(r.hssi, cfg.edge); });

  stage("morph", [&] {
    const auto se = StructuringElement::square(cfg.se_size);
    r.washed = washup(r.ehssi, r.roi, cfg.washup);
    r.eehssi = eehssi(r.ehssi, r.roi, cfg.washup, se);
    return 0;
  });

  stage("segment", [&] {
    const Contour init = init_contour(r.roi, cfg.snake.n_points);
    r.contour_original = snake_evolve(img, init, cfg.snake);
    r.contour_hssi = snake_evolve(r.hssi, init, cfg.snake);
    r.seg_original = contour_to_mask(r.contour_original, img.dims());
    r.seg_hssi = contour_to_mask(r.contour_hssi, img.dims());
    return 0;
  });

  if (ground_truth != nullptr) {
    r.metrics = stage("metrics", [&] {
      PipelineMetrics m;
      m.dsc_original = dsc(r.seg_original, *ground_truth);
      m.dsc_hssi = dsc(r.seg_hssi, *ground_truth);
      m.pir_original = pir(r.edge_original, *ground_truth);
      m.pir_ehssi = pir(r.ehssi, *ground_truth);
      m.pir_washed = pir(r.washed, *ground_truth);
      return m;
    });
  }
  return r;
}

} // namespace hsplit
