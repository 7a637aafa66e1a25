#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsplit/pipeline.hpp"

namespace hsplit {

/// One line of a JSON-lines manifest:
///   {"id": "...", "image_path": "...", "gt_path": "...", "seed": {"cx":..,"cy":..,"px":..,"py":..}}
/// gt_path is optional. Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::filesystem::path image_path;
  std::optional<std::filesystem::path> gt_path;
  SeedPoints seed;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &path);
void write_manifest(const std::vector<ManifestEntry> &entries, const std::filesystem::path &path);

struct BatchRow {
  std::string id;
  bool ok = false;
  PointerPair pointer_pair;
  std::optional<PipelineMetrics> metrics;
  std::string error;
};

struct BatchSummary {
  std::size_t images = 0;       ///< manifest length
  std::size_t scored = 0;       ///< rows with metrics
  std::size_t failed = 0;
  PipelineMetrics mean;         ///< over scored rows
  std::size_t success_dsc = 0;  ///< dsc_hssi > dsc_original
  std::size_t success_ehssi = 0;  ///< pir_ehssi < pir_original
  std::size_t success_washed = 0; ///< pir_washed < pir_original
};

struct BatchReport {
  std::vector<BatchRow> rows; ///< sorted by id
  BatchSummary summary;
};

/// Runs the pipeline for every entry (independently, in parallel when
/// `threads` != 1) and aggregates. Per-image failures become error rows.
BatchReport run_batch(const std::vector<ManifestEntry> &entries, const PipelineConfig &cfg,
                      unsigned threads = 0);

BatchSummary summarize(const std::vector<BatchRow> &rows);

/// CSV with a fixed header, per-image rows then MEAN and SUCCESS rows;
/// metrics to 4 decimals.
void write_report_csv(const BatchReport &report, std::ostream &out);
std::string report_csv(const BatchReport &report);

/// Writes `count` phantoms drawn with random_phantom_spec(seed + i, size) as
/// phantom_NNN.png / phantom_NNN_gt.png plus manifest.jsonl (centered seeds at
/// `rim_fraction`) into `dir`, creating it if needed. Returns the entries with
/// paths relative to `dir`.
std::vector<ManifestEntry> write_phantom_dataset(const std::filesystem::path &dir, int count,
                                                 std::uint64_t seed, int size = 256,
                                                 double rim_fraction = 0.8);

} // namespace hsplit
