#include "hsplit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hsplit/metrics.hpp"

namespace hsplit {

std::size_t pair_index(int xl, int xr) {
  validate_pointers(xl, xr);
  // Rows xl' < xl contribute 255 - xl' entries each.
  const std::size_t before = static_cast<std::size_t>(xl) * 255 -
                             static_cast<std::size_t>(xl) * (xl - 1) / 2;
  return before + static_cast<std::size_t>(xr - xl - 1);
}

SweepResult sweep(const GrayImage &img, const SeedPoints &seed, const BinaryMask &gt,
                  const PipelineConfig &cfg, unsigned threads) {
  if (gt.dims() != img.dims()) {
    throw std::invalid_argument("sweep: ground truth dimensions differ from the image");
  }
  if (!gt.any()) {
    throw std::invalid_argument("sweep: ground truth is empty");
  }
  cfg.validate();

  SweepResult result;
  {
    const CircleROI roi = circle_from_points(seed, img.dims());
    result.default_pair =
        place_pointers(masked_histogram(img, circle_mask(roi, img.dims())), cfg.threshold);
  }

  // Pairs that split the set of present intensities identically yield the
  // same image; score each distinct split once.
  const Histogram256 hist = image_histogram(img);
  std::array<int, 257> present_below{}; // number of present values < v
  for (int v = 0; v < 256; ++v) {
    present_below[v + 1] = present_below[v] + (hist[v] > 0 ? 1 : 0);
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(kPointerPairCount);
  std::map<std::pair<int, int>, std::size_t> key_of;
  std::vector<std::size_t> unique_of(kPointerPairCount);
  std::vector<std::pair<int, int>> unique_pairs;
  for (int xl = 0; xl < 256; ++xl) {
    for (int xr = xl + 1; xr < 256; ++xr) {
      const std::pair<int, int> key{present_below[xl], present_below[256] - present_below[xr + 1]};
      auto [it, inserted] = key_of.try_emplace(key, unique_pairs.size());
      if (inserted) {
        unique_pairs.emplace_back(xl, xr);
      }
      unique_of[pairs.size()] = it->second;
      pairs.emplace_back(xl, xr);
    }
  }

  std::vector<double> unique_pir(unique_pairs.size());
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(unique_pairs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < unique_pairs.size(); i = next++) {
        const auto [xl, xr] = unique_pairs[i];
        const GrayImage split = apply_split(img, xl, xr, cfg.split);
        unique_pir[i] = pir(canny(split, cfg.edge), gt);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = std::current_exception();
      }
      next = unique_pairs.size();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  result.grid.resize(kPointerPairCount);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    result.grid[i] = unique_pir[unique_of[i]];
  }
  // Grid order is (xl, xr) lexicographic, so the first strict minimum is the
  // smallest-xl, smallest-xr optimum.
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.grid.size(); ++i) {
    if (result.grid[i] < result.grid[best]) {
      best = i;
    }
  }
  result.best_xl = pairs[best].first;
  result.best_xr = pairs[best].second;
  result.best_pir = result.grid[best];
  return result;
}

} // namespace hsplit
