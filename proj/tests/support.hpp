#pragma once

// Reference implementations written directly from the textbook definitions,
// deliberately naive, plus random generators shared by the suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hsplit/image.hpp"
#include "hsplit/morph.hpp"
#include "hsplit/snake.hpp"

namespace oracle {

using hsplit::BinaryMask;
using hsplit::GrayImage;

inline std::size_t lattice_disk_count(int cx, int cy, double r, int w, int h) {
  std::size_t n = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy <= r * r) {
        ++n;
      }
    }
  }
  return n;
}

// Direct 3x3 correlation with the Sobel kernels, clamping reads to the image.
inline double sobel_at(const GrayImage &img, int x, int y) {
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  double gx = 0;
  double gy = 0;
  for (int j = -1; j <= 1; ++j) {
    for (int i = -1; i <= 1; ++i) {
      const int xx = std::clamp(x + i, 0, img.width() - 1);
      const int yy = std::clamp(y + j, 0, img.height() - 1);
      gx += kx[j + 1][i + 1] * img.at(xx, yy);
      gy += ky[j + 1][i + 1] * img.at(xx, yy);
    }
  }
  return std::hypot(gx, gy);
}

// Set definitions: dilation = union of translates, erosion = points whose
// translated element fits (outside counts as background).
inline BinaryMask dilate(const BinaryMask &m, int half) {
  BinaryMask out(m.dims());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.at(x, y)) {
        continue;
      }
      for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
          if (m.dims().contains(x + dx, y + dy)) {
            out.set(x + dx, y + dy, true);
          }
        }
      }
    }
  }
  return out;
}

inline BinaryMask erode(const BinaryMask &m, int half) {
  BinaryMask out(m.dims());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool fits = true;
      for (int dy = -half; dy <= half && fits; ++dy) {
        for (int dx = -half; dx <= half && fits; ++dx) {
          fits = m.dims().contains(x + dx, y + dy) && m.at(x + dx, y + dy);
        }
      }
      out.set(x, y, fits);
    }
  }
  return out;
}

// Hole filling by BFS from every border background pixel.
inline BinaryMask fill_holes(const BinaryMask &m) {
  const int w = m.width();
  const int h = m.height();
  std::vector<char> outside(m.size(), 0);
  std::deque<std::pair<int, int>> q;
  auto push = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) {
      return;
    }
    const std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (m[i] || outside[i]) {
      return;
    }
    outside[i] = 1;
    q.emplace_back(x, y);
  };
  for (int x = 0; x < w; ++x) {
    push(x, 0);
    push(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    push(0, y);
    push(w - 1, y);
  }
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop_front();
    push(x + 1, y);
    push(x - 1, y);
    push(x, y + 1);
    push(x, y - 1);
  }
  BinaryMask out(m.dims());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.set(i, !outside[i]);
  }
  return out;
}

inline std::size_t count_and(const BinaryMask &a, const BinaryMask &b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    n += a[i] && b[i];
  }
  return n;
}

inline double dsc(const BinaryMask &a, const BinaryMask &b) {
  return 2.0 * static_cast<double>(count_and(a, b)) /
         static_cast<double>(a.popcount() + b.popcount());
}

inline double pir(const BinaryMask &edge, const BinaryMask &gt) {
  return 100.0 * static_cast<double>(count_and(edge, gt)) / static_cast<double>(gt.popcount());
}

// Number of 8-connected components of the foreground.
inline int components8(const BinaryMask &m) {
  std::vector<char> seen(m.size(), 0);
  int n = 0;
  for (int y0 = 0; y0 < m.height(); ++y0) {
    for (int x0 = 0; x0 < m.width(); ++x0) {
      const std::size_t i0 = static_cast<std::size_t>(y0) * m.width() + x0;
      if (!m[i0] || seen[i0]) {
        continue;
      }
      ++n;
      std::deque<std::pair<int, int>> q{{x0, y0}};
      seen[i0] = 1;
      while (!q.empty()) {
        auto [x, y] = q.front();
        q.pop_front();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = x + dx;
            const int yy = y + dy;
            if (!m.dims().contains(xx, yy)) {
              continue;
            }
            const std::size_t i = static_cast<std::size_t>(yy) * m.width() + xx;
            if (m[i] && !seen[i]) {
              seen[i] = 1;
              q.emplace_back(xx, yy);
            }
          }
        }
      }
    }
  }
  return n;
}

} // namespace oracle

namespace gen {

inline hsplit::BinaryMask random_mask(std::mt19937_64 &rng, int w, int h, double density) {
  std::bernoulli_distribution b(density);
  hsplit::BinaryMask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m.set(i, b(rng));
  }
  return m;
}

inline hsplit::GrayImage random_image(std::mt19937_64 &rng, int w, int h) {
  std::uniform_int_distribution<int> d(0, 255);
  hsplit::GrayImage img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img[i] = static_cast<std::uint8_t>(d(rng));
  }
  return img;
}

// Blob-like mask: union of random filled disks.
inline hsplit::BinaryMask random_blobs(std::mt19937_64 &rng, int w, int h, int blobs) {
  std::uniform_int_distribution<int> px(0, w - 1);
  std::uniform_int_distribution<int> py(0, h - 1);
  std::uniform_real_distribution<double> pr(1.0, std::min(w, h) / 6.0);
  hsplit::BinaryMask m(w, h);
  for (int k = 0; k < blobs; ++k) {
    const int cx = px(rng);
    const int cy = py(rng);
    const double r = pr(rng);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
          m.set(x, y, true);
        }
      }
    }
  }
  return m;
}

// Mixture of a decaying tail and Gaussian bumps, optionally sparse.
inline hsplit::Histogram256 random_histogram(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 256> v{};
  if (u(rng) < 0.5) {
    const double amp = 50 + 5000 * u(rng);
    const double rate = 0.02 + 0.8 * u(rng);
    for (int i = 0; i < 256; ++i) {
      v[i] += amp * std::exp(-rate * i);
    }
  }
  const int bumps = static_cast<int>(u(rng) * 3.0) + (u(rng) < 0.5 ? 1 : 0);
  for (int k = 0; k < bumps; ++k) {
    const double mu = 255 * u(rng);
    const double sd = 0.5 + 30 * u(rng);
    const double amp = 10 + 3000 * u(rng);
    for (int i = 0; i < 256; ++i) {
      v[i] += amp * std::exp(-0.5 * ((i - mu) / sd) * ((i - mu) / sd));
    }
  }
  std::array<std::uint64_t, 256> counts{};
  std::poisson_distribution<int> noise(2.0);
  const bool noisy = u(rng) < 0.5;
  std::uint64_t total = 0;
  for (int i = 0; i < 256; ++i) {
    counts[i] = static_cast<std::uint64_t>(std::floor(v[i])) + (noisy ? noise(rng) : 0);
    total += counts[i];
  }
  if (total == 0) {
    counts[static_cast<std::size_t>(255 * u(rng))] = 1;
  }
  return hsplit::make_histogram(counts);
}

} // namespace gen

// Scratch directory removed on scope exit.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("hsplit_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
};
