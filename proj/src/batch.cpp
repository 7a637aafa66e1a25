#include "hsplit/batch.hpp"

#include <algorithm>
#include <cstdio>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hsplit/image_io.hpp"
#include "hsplit/metrics.hpp"
#include "hsplit/phantom.hpp"

namespace hsplit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += "\"\"";
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

BatchRow process_entry(const ManifestEntry &e, const PipelineConfig &cfg) {
  BatchRow row;
  row.id = e.id;
  try {
    const GrayImage img = load_gray(e.image_path);
    std::optional<BinaryMask> gt;
    if (e.gt_path) {
      gt = load_mask(*e.gt_path);
    }
    const PipelineResult r = run_pipeline(img, e.seed, cfg, gt ? &*gt : nullptr);
    row.ok = true;
    row.pointer_pair = r.pointer_pair;
    row.metrics = r.metrics;
  } catch (const std::exception &ex) {
    row.ok = false;
    row.error = ex.what();
  }
  return row;
}

} // namespace

std::vector<ManifestEntry> read_manifest(const fs::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest '" + path.string() + "'");
  }
  const fs::path base = path.parent_path();
  auto resolve = [&base](const std::string &p) {
    fs::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  std::vector<ManifestEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const json j = json::parse(line);
      ManifestEntry e;
      e.id = j.at("id").get<std::string>();
      e.image_path = resolve(j.at("image_path").get<std::string>());
      if (j.contains("gt_path") && !j.at("gt_path").is_null()) {
        e.gt_path = resolve(j.at("gt_path").get<std::string>());
      }
      const json &s = j.at("seed");
      e.seed = SeedPoints{{s.at("cx").get<int>(), s.at("cy").get<int>()},
                          {s.at("px").get<int>(), s.at("py").get<int>()}};
      entries.push_back(std::move(e));
    } catch (const json::exception &ex) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": malformed manifest record: " + ex.what());
    }
  }
  return entries;
}

void write_manifest(const std::vector<ManifestEntry> &entries, const fs::path &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open manifest '" + path.string() + "' for writing");
  }
  for (const auto &e : entries) {
    json j;
    j["id"] = e.id;
    j["image_path"] = e.image_path.generic_string();
    if (e.gt_path) {
      j["gt_path"] = e.gt_path->generic_string();
    }
    j["seed"] = {{"cx", e.seed.center.x},
                 {"cy", e.seed.center.y},
                 {"px", e.seed.rim.x},
                 {"py", e.seed.rim.y}};
    out << j.dump() << '\n';
  }
}

BatchSummary summarize(const std::vector<BatchRow> &rows) {
  BatchSummary s;
  s.images = rows.size();
  for (const auto &r : rows) {
    if (!r.ok) {
      ++s.failed;
      continue;
    }
    if (!r.metrics) {
      continue;
    }
    const auto &m = *r.metrics;
    ++s.scored;
    s.mean.dsc_original += m.dsc_original;
    s.mean.dsc_hssi += m.dsc_hssi;
    s.mean.pir_original += m.pir_original;
    s.mean.pir_ehssi += m.pir_ehssi;
    s.mean.pir_washed += m.pir_washed;
    s.success_dsc += m.dsc_hssi > m.dsc_original;
    s.success_ehssi += m.pir_ehssi < m.pir_original;
    s.success_washed += m.pir_washed < m.pir_original;
  }
  if (s.scored > 0) {
    const double n = static_cast<double>(s.scored);
    s.mean.dsc_original /= n;
    s.mean.dsc_hssi /= n;
    s.mean.pir_original /= n;
    s.mean.pir_ehssi /= n;
    s.mean.pir_washed /= n;
  }
  return s;
}

BatchReport run_batch(const std::vector<ManifestEntry> &entries, const PipelineConfig &cfg,
                      unsigned threads) {
  BatchReport report;
  report.rows.resize(entries.size());
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(entries.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      report.rows[i] = process_entry(entries[i], cfg);
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
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const BatchRow &a, const BatchRow &b) { return a.id < b.id; });
  report.summary = summarize(report.rows);
  return report;
}

void write_report_csv(const BatchReport &report, std::ostream &out) {
  out << "id,status,shape,xl,xp,xr,dsc_original,dsc_hssi,pir_original,pir_ehssi,pir_washed,"
         "note\n";
  for (const auto &r : report.rows) {
    out << csv_field(r.id) << ',';
    if (!r.ok) {
      out << "error,,,,,,,,,," << csv_field(r.error) << '\n';
      continue;
    }
    const auto &pp = r.pointer_pair;
    out << "ok," << to_string(pp.shape) << ',' << pp.xl << ',' << pp.xp << ',' << pp.xr << ',';
    if (r.metrics) {
      const auto &m = *r.metrics;
      out << format_metric(m.dsc_original) << ',' << format_metric(m.dsc_hssi) << ','
          << format_metric(m.pir_original) << ',' << format_metric(m.pir_ehssi) << ','
          << format_metric(m.pir_washed) << ",\n";
    } else {
      out << ",,,,,no ground truth\n";
    }
  }
  const auto &s = report.summary;
  const std::string counts = "images=" + std::to_string(s.images) +
                             " scored=" + std::to_string(s.scored) +
                             " failed=" + std::to_string(s.failed);
  out << "MEAN,summary,,,,,";
  if (s.scored > 0) {
    out << format_metric(s.mean.dsc_original) << ',' << format_metric(s.mean.dsc_hssi) << ','
        << format_metric(s.mean.pir_original) << ',' << format_metric(s.mean.pir_ehssi) << ','
        << format_metric(s.mean.pir_washed);
  } else {
    out << ",,,,";
  }
  out << ',' << counts << '\n';
  out << "SUCCESS,summary,,,,,," << s.success_dsc << ",," << s.success_ehssi << ','
      << s.success_washed << ',' << counts << '\n';
}

std::string report_csv(const BatchReport &report) {
  std::ostringstream os;
  write_report_csv(report, os);
  return os.str();
}

std::vector<ManifestEntry> write_phantom_dataset(const fs::path &dir, int count,
                                                 std::uint64_t seed, int size,
                                                 double rim_fraction) {
  if (count < 0) {
    throw std::invalid_argument("phantom count must be non-negative");
  }
  fs::create_directories(dir);
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < count; ++i) {
    const auto spec = random_phantom_spec(seed + static_cast<std::uint64_t>(i), size);
    const auto ph = generate_phantom(spec);
    char name[32];
    std::snprintf(name, sizeof name, "phantom_%03d", i);
    const std::string id = name;
    save_gray(ph.image, dir / (id + ".png"));
    save_mask(ph.ground_truth, dir / (id + "_gt.png"));
    entries.push_back({id, id + ".png", fs::path(id + "_gt.png"), centered_seed(spec, rim_fraction)});
  }
  write_manifest(entries, dir / "manifest.jsonl");
  return entries;
}

} // namespace hsplit
