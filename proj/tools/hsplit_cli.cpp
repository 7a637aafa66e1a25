// hsplit: two-pointer histogram splitting pipeline on the command line.
//
//   hsplit process --image img.png --seed 120,110,140,110 [--gt gt.png] --out stages/
//   hsplit batch   --manifest manifest.jsonl --out report.csv
//   hsplit sweep   --image img.png --gt gt.png --seed ... --out grid.csv
//   hsplit phantom --out data/ --count 50 --seed 1
//   hsplit serve   --dir data/ --listen 127.0.0.1:8080

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsplit/batch.hpp"
#include "hsplit/image_io.hpp"
#include "hsplit/metrics.hpp"
#include "hsplit/phantom.hpp"
#include "hsplit/pipeline.hpp"
#include "hsplit/service.hpp"
#include "hsplit/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void add_config_flags(CLI::App &cmd, hsplit::PipelineConfig &cfg) {
  cmd.add_option("--right-threshold", cfg.threshold.right_threshold,
                 "right pointer stop fraction of the peak")
      ->capture_default_str();
  cmd.add_option("--left-threshold", cfg.threshold.left_threshold,
                 "left pointer stop fraction of the peak")
      ->capture_default_str();
  cmd.add_option("--decay-peak-cutoff", cfg.threshold.decay_peak_cutoff,
                 "smoothed peak bin at or below which the histogram is decaying")
      ->capture_default_str();
  cmd.add_option("--rsf", cfg.split.rsf, "right splitting factor (> 1)")->capture_default_str();
  cmd.add_option("--lsf", cfg.split.lsf, "left splitting factor (< 1)")->capture_default_str();
  cmd.add_option("--canny-sigma", cfg.edge.gaussian_sigma)->capture_default_str();
  cmd.add_option("--canny-low", cfg.edge.low_fraction)->capture_default_str();
  cmd.add_option("--canny-high", cfg.edge.high_fraction)->capture_default_str();
  cmd.add_option("--ewr-factor", cfg.washup.ewr_factor, "wash-up radius / circle radius")
      ->capture_default_str();
  cmd.add_option("--se-size", cfg.se_size, "closing element side (odd)")->capture_default_str();
  cmd.add_option("--alpha", cfg.snake.alpha, "snake elasticity")->capture_default_str();
  cmd.add_option("--beta", cfg.snake.beta, "snake rigidity")->capture_default_str();
  cmd.add_option("--gamma", cfg.snake.gamma, "snake time step")->capture_default_str();
  cmd.add_option("--kappa", cfg.snake.kappa, "snake external force weight")
      ->capture_default_str();
  cmd.add_option("--iterations", cfg.snake.iterations)->capture_default_str();
  cmd.add_option("--n-points", cfg.snake.n_points)->capture_default_str();
  cmd.add_option("--blur-sigma", cfg.snake.blur_sigma, "smoothing for the snake's edge field")
      ->capture_default_str();
}

hsplit::SeedPoints to_seed(const std::vector<int> &v) {
  return hsplit::SeedPoints{{v.at(0), v.at(1)}, {v.at(2), v.at(3)}};
}

json metrics_json(const hsplit::PipelineMetrics &m) {
  return {{"dsc_original", m.dsc_original},
          {"dsc_hssi", m.dsc_hssi},
          {"pir_original", m.pir_original},
          {"pir_ehssi", m.pir_ehssi},
          {"pir_washed", m.pir_washed}};
}

int cmd_process(const fs::path &image, const std::vector<int> &seed,
                const std::optional<fs::path> &gt_path, const fs::path &out,
                const hsplit::PipelineConfig &cfg) {
  const auto img = hsplit::load_gray(image);
  std::optional<hsplit::BinaryMask> gt;
  if (gt_path) {
    gt = hsplit::load_mask(*gt_path);
  }
  const auto r = hsplit::run_pipeline(img, to_seed(seed), cfg, gt ? &*gt : nullptr);

  fs::create_directories(out);
  hsplit::save_gray(img, out / "original.png");
  hsplit::save_gray(r.hssi, out / "hssi.png");
  hsplit::save_mask(r.edge_original, out / "edge_original.png");
  hsplit::save_mask(r.ehssi, out / "ehssi.png");
  hsplit::save_mask(r.washed, out / "washed.png");
  hsplit::save_mask(r.eehssi, out / "eehssi.png");
  hsplit::save_mask(r.seg_original, out / "seg_original.png");
  hsplit::save_mask(r.seg_hssi, out / "seg_hssi.png");

  const auto &pp = r.pointer_pair;
  json summary{{"image", image.string()},
               {"roi", {{"cx", r.roi.cx}, {"cy", r.roi.cy}, {"r", r.roi.r}}},
               {"pointer_pair",
                {{"xl", pp.xl}, {"xp", pp.xp}, {"xr", pp.xr}, {"shape", to_string(pp.shape)}}},
               {"metrics", r.metrics ? metrics_json(*r.metrics) : json(nullptr)}};
  std::ofstream(out / "result.json") << summary.dump(2) << '\n';

  std::cout << "shape=" << to_string(pp.shape) << " xl=" << pp.xl << " xp=" << pp.xp
            << " xr=" << pp.xr << "\n";
  if (r.metrics) {
    const auto &m = *r.metrics;
    std::cout << "DSC original=" << hsplit::format_metric(m.dsc_original)
              << " hssi=" << hsplit::format_metric(m.dsc_hssi) << "\n"
              << "PIR original=" << hsplit::format_metric(m.pir_original)
              << " ehssi=" << hsplit::format_metric(m.pir_ehssi)
              << " washed=" << hsplit::format_metric(m.pir_washed) << "\n";
  }
  std::cout << "stages written to " << out.string() << "\n";
  return 0;
}

int cmd_batch(const fs::path &manifest, const std::optional<fs::path> &out,
              const hsplit::PipelineConfig &cfg, unsigned threads) {
  const auto entries = hsplit::read_manifest(manifest);
  const auto report = hsplit::run_batch(entries, cfg, threads);
  if (out) {
    std::ofstream f(*out, std::ios::trunc);
    if (!f) {
      throw hsplit::IoError("cannot write report '" + out->string() + "'");
    }
    hsplit::write_report_csv(report, f);
  } else {
    hsplit::write_report_csv(report, std::cout);
  }
  const auto &s = report.summary;
  std::cerr << "images=" << s.images << " scored=" << s.scored << " failed=" << s.failed
            << " success(dsc/ehssi/washed)=" << s.success_dsc << "/" << s.success_ehssi << "/"
            << s.success_washed << "\n";
  return 0;
}

int cmd_sweep(const fs::path &image, const fs::path &gt_path, const std::vector<int> &seed,
              const std::optional<fs::path> &out, const hsplit::PipelineConfig &cfg,
              unsigned threads) {
  const auto img = hsplit::load_gray(image);
  const auto gt = hsplit::load_mask(gt_path);
  const auto res = hsplit::sweep(img, to_seed(seed), gt, cfg, threads);
  if (out) {
    std::ofstream f(*out, std::ios::trunc);
    f << "xl,xr,pir\n";
    for (int xl = 0; xl < 256; ++xl) {
      for (int xr = xl + 1; xr < 256; ++xr) {
        f << xl << ',' << xr << ',' << hsplit::format_metric(res.pir_at(xl, xr)) << '\n';
      }
    }
  }
  const auto &dp = res.default_pair;
  std::cout << "grid=" << res.grid.size() << " best xl=" << res.best_xl << " xr=" << res.best_xr
            << " pir=" << hsplit::format_metric(res.best_pir) << "\n"
            << "two-pointer xl=" << dp.xl << " xr=" << dp.xr
            << " pir=" << hsplit::format_metric(res.pir_at(dp.xl, dp.xr)) << "\n";
  return 0;
}

int cmd_phantom(const fs::path &out, int count, std::uint64_t seed, int size, double rim) {
  hsplit::write_phantom_dataset(out, count, seed, size, rim);
  std::cout << "wrote " << count << " phantom(s) and manifest.jsonl to " << out.string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-pointer histogram splitting for edge-map enhancement"};
  app.require_subcommand(1);
  hsplit::PipelineConfig cfg;
  unsigned threads = 0;

  auto *process = app.add_subcommand("process", "run the pipeline on one image, write stage PNGs");
  fs::path p_image, p_out = "stages";
  std::optional<fs::path> p_gt;
  std::vector<int> seed;
  process->add_option("--image", p_image, "8-bit gray PNG or PGM")->required();
  process->add_option("--seed", seed, "cx,cy,px,py: circle center and rim click")
      ->required()
      ->expected(4)
      ->delimiter(',');
  process->add_option("--gt", p_gt, "ground-truth mask (enables DSC/PIR)");
  process->add_option("--out", p_out, "output directory")->capture_default_str();
  add_config_flags(*process, cfg);

  auto *batch = app.add_subcommand("batch", "evaluate a manifest, write a CSV report");
  fs::path b_manifest;
  std::optional<fs::path> b_out;
  batch->add_option("--manifest", b_manifest, "JSON-lines manifest")->required();
  batch->add_option("--out", b_out, "report path (stdout if omitted)");
  batch->add_option("--threads", threads, "worker threads, 0 = all cores");
  add_config_flags(*batch, cfg);

  auto *sweep = app.add_subcommand("sweep", "exhaustive pointer-pair PIR search");
  fs::path s_image, s_gt;
  std::optional<fs::path> s_out;
  sweep->add_option("--image", s_image)->required();
  sweep->add_option("--gt", s_gt)->required();
  sweep->add_option("--seed", seed, "cx,cy,px,py")->required()->expected(4)->delimiter(',');
  sweep->add_option("--out", s_out, "write the full xl,xr,pir grid as CSV");
  sweep->add_option("--threads", threads, "worker threads, 0 = all cores");
  add_config_flags(*sweep, cfg);

  auto *phantom = app.add_subcommand("phantom", "generate a synthetic phantom dataset");
  fs::path ph_out = "phantoms";
  int ph_count = 10;
  std::uint64_t ph_seed = 1;
  int ph_size = 256;
  double ph_rim = 0.8;
  phantom->add_option("--out", ph_out)->capture_default_str();
  phantom->add_option("--count", ph_count)->capture_default_str()->check(CLI::PositiveNumber);
  phantom->add_option("--seed", ph_seed, "base rng seed")->capture_default_str();
  phantom->add_option("--size", ph_size)->capture_default_str()->check(CLI::Range(32, 4096));
  phantom->add_option("--rim-fraction", ph_rim, "seed radius / lesion minor semi-axis")
      ->capture_default_str();

  auto *serve = app.add_subcommand("serve", "start the HTTP service");
  std::optional<fs::path> sv_dir, sv_manifest;
  std::string listen = "127.0.0.1:8080";
  auto *dir_opt = serve->add_option("--dir", sv_dir, "image directory (<id>.png, <id>_gt.png)");
  serve->add_option("--manifest", sv_manifest, "JSON-lines manifest")->excludes(dir_opt);
  serve->add_option("--listen", listen, "host:port")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*process) {
      return cmd_process(p_image, seed, p_gt, p_out, cfg);
    }
    if (*batch) {
      return cmd_batch(b_manifest, b_out, cfg, threads);
    }
    if (*sweep) {
      return cmd_sweep(s_image, s_gt, seed, s_out, cfg, threads);
    }
    if (*phantom) {
      return cmd_phantom(ph_out, ph_count, ph_seed, ph_size, ph_rim);
    }
    if (*serve) {
      if (!sv_dir && !sv_manifest) {
        std::cerr << "serve: one of --dir or --manifest is required\n";
        return 2;
      }
      hsplit::service::Service svc(sv_dir ? hsplit::service::Catalog::from_directory(*sv_dir)
                                          : hsplit::service::Catalog::from_manifest(*sv_manifest));
      hsplit::service::serve(svc, listen);
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
