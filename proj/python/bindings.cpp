#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsplit/edges.hpp"
#include "hsplit/hssi.hpp"
#include "hsplit/image_io.hpp"
#include "hsplit/metrics.hpp"
#include "hsplit/morph.hpp"
#include "hsplit/phantom.hpp"
#include "hsplit/pipeline.hpp"
#include "hsplit/service.hpp"
#include "hsplit/sweep.hpp"
#include "hsplit/two_pointer.hpp"

namespace py = pybind11;
using namespace hsplit;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

void require_2d(const py::buffer_info &info) {
  if (info.ndim != 2) {
    throw std::invalid_argument("expected a 2-D array");
  }
}

GrayImage to_gray(const U8Array &a) {
  const auto info = a.request();
  require_2d(info);
  const auto *p = static_cast<const std::uint8_t *>(info.ptr);
  return GrayImage(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
                   std::vector<std::uint8_t>(p, p + info.size));
}

BinaryMask to_mask(const py::array &a) {
  const auto u8 = U8Array::ensure(a.attr("astype")("bool"));
  const auto info = u8.request();
  require_2d(info);
  const auto *p = static_cast<const std::uint8_t *>(info.ptr);
  return BinaryMask(static_cast<int>(info.shape[1]), static_cast<int>(info.shape[0]),
                    std::vector<std::uint8_t>(p, p + info.size));
}

py::array_t<std::uint8_t> from_gray(const GrayImage &img) {
  py::array_t<std::uint8_t> out({img.height(), img.width()});
  std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
  return out;
}

py::array_t<bool> from_mask(const BinaryMask &m) {
  py::array_t<bool> out({m.height(), m.width()});
  auto *p = out.mutable_data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    p[i] = m[i];
  }
  return out;
}

PipelineConfig make_config(const std::string &params_json) {
  PipelineConfig cfg;
  service::apply_overrides(cfg, params_json);
  cfg.validate();
  return cfg;
}

SeedPoints make_seed(const std::array<int, 4> &s) { return {{s[0], s[1]}, {s[2], s[3]}}; }

py::dict pair_dict(const PointerPair &pp) {
  py::dict d;
  d["xl"] = pp.xl;
  d["xp"] = pp.xp;
  d["xr"] = pp.xr;
  d["shape"] = std::string(to_string(pp.shape));
  return d;
}

Histogram256 to_histogram(const std::vector<std::uint64_t> &counts) {
  if (counts.size() != 256) {
    throw std::invalid_argument("histogram needs 256 bins");
  }
  return make_histogram(counts);
}

} // namespace

PYBIND11_MODULE(_hsplit, m) {
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<StageError>(m, "StageError", PyExc_ValueError);

  m.def("load_gray", [](const std::string &p) { return from_gray(load_gray(p)); });
  m.def("load_mask", [](const std::string &p) { return from_mask(load_mask(p)); });
  m.def("save_gray", [](const U8Array &a, const std::string &p) { save_gray(to_gray(a), p); });
  m.def("save_mask", [](const py::array &a, const std::string &p) { save_mask(to_mask(a), p); });

  m.def("histogram", [](const U8Array &a) {
    const auto h = image_histogram(to_gray(a));
    return std::vector<std::uint64_t>(h.counts.begin(), h.counts.end());
  });
  m.def("classify", [](const std::vector<std::uint64_t> &counts, double right, double left,
                       int cutoff) {
        return std::string(to_string(classify(to_histogram(counts), {right, left, cutoff})));
      },
      py::arg("counts"), py::arg("right_threshold") = 0.10, py::arg("left_threshold") = 0.25,
      py::arg("decay_peak_cutoff") = 5);
  m.def("place_pointers", [](const std::vector<std::uint64_t> &counts, double right, double left,
                             int cutoff) {
        return pair_dict(place_pointers(to_histogram(counts), {right, left, cutoff}));
      },
      py::arg("counts"), py::arg("right_threshold") = 0.10, py::arg("left_threshold") = 0.25,
      py::arg("decay_peak_cutoff") = 5);
  m.def("apply_split", [](const U8Array &a, int xl, int xr, double rsf, double lsf) {
        return from_gray(apply_split(to_gray(a), xl, xr, {rsf, lsf}));
      },
      py::arg("image"), py::arg("xl"), py::arg("xr"), py::arg("rsf") = 1.5, py::arg("lsf") = 0.5);

  m.def("canny", [](const U8Array &a, double sigma, double low, double high) {
        return from_mask(canny(to_gray(a), {sigma, low, high}));
      },
      py::arg("image"), py::arg("sigma") = 1.4, py::arg("low") = 0.05, py::arg("high") = 0.10);
  m.def("fill_holes", [](const py::array &a) { return from_mask(fill_holes(to_mask(a))); });
  m.def("morph_close", [](const py::array &a, int size) {
        return from_mask(morph_close(to_mask(a), StructuringElement::square(size)));
      },
      py::arg("mask"), py::arg("size") = 3);
  m.def("washup", [](const py::array &edge, int cx, int cy, double r, double ewr_factor) {
        return from_mask(washup(to_mask(edge), CircleROI{cx, cy, r}, {ewr_factor}));
      },
      py::arg("edge"), py::arg("cx"), py::arg("cy"), py::arg("r"), py::arg("ewr_factor") = 0.8);

  m.def("dsc", [](const py::array &x, const py::array &y) { return dsc(to_mask(x), to_mask(y)).value; });
  m.def("pir", [](const py::array &e, const py::array &g) { return pir(to_mask(e), to_mask(g)).value; });

  m.def("_run_pipeline",
        [](const U8Array &a, const std::array<int, 4> &seed, const std::string &params,
           const std::optional<py::array> &gt) {
          const auto img = to_gray(a);
          const auto cfg = make_config(params);
          std::optional<BinaryMask> mask;
          if (gt) {
            mask = to_mask(*gt);
          }
          PipelineResult r;
          {
            py::gil_scoped_release release;
            r = run_pipeline(img, make_seed(seed), cfg, mask ? &*mask : nullptr);
          }
          py::dict d;
          d["roi"] = py::make_tuple(r.roi.cx, r.roi.cy, r.roi.r);
          d["pointer_pair"] = pair_dict(r.pointer_pair);
          d["hssi"] = from_gray(r.hssi);
          d["edge_original"] = from_mask(r.edge_original);
          d["ehssi"] = from_mask(r.ehssi);
          d["washed"] = from_mask(r.washed);
          d["eehssi"] = from_mask(r.eehssi);
          d["seg_original"] = from_mask(r.seg_original);
          d["seg_hssi"] = from_mask(r.seg_hssi);
          if (r.metrics) {
            py::dict mm;
            mm["dsc_original"] = r.metrics->dsc_original;
            mm["dsc_hssi"] = r.metrics->dsc_hssi;
            mm["pir_original"] = r.metrics->pir_original;
            mm["pir_ehssi"] = r.metrics->pir_ehssi;
            mm["pir_washed"] = r.metrics->pir_washed;
            d["metrics"] = mm;
          } else {
            d["metrics"] = py::none();
          }
          return d;
        });

  m.def("_sweep", [](const U8Array &a, const std::array<int, 4> &seed, const py::array &gt,
                     const std::string &params, unsigned threads) {
    const auto img = to_gray(a);
    const auto mask = to_mask(gt);
    const auto cfg = make_config(params);
    SweepResult r;
    {
      py::gil_scoped_release release;
      r = sweep(img, make_seed(seed), mask, cfg, threads);
    }
    py::array_t<double> grid(static_cast<py::ssize_t>(r.grid.size()));
    std::copy(r.grid.begin(), r.grid.end(), grid.mutable_data());
    py::dict d;
    d["best_xl"] = r.best_xl;
    d["best_xr"] = r.best_xr;
    d["best_pir"] = r.best_pir;
    d["default_pair"] = pair_dict(r.default_pair);
    d["grid"] = grid;
    return d;
  });

  m.def("phantom", [](std::uint64_t seed, int size, double rim_fraction) {
        const auto spec = random_phantom_spec(seed, size);
        const auto ph = generate_phantom(spec);
        const auto s = centered_seed(spec, rim_fraction);
        return py::make_tuple(from_gray(ph.image), from_mask(ph.ground_truth),
                              py::make_tuple(s.center.x, s.center.y, s.rim.x, s.rim.y));
      },
      py::arg("seed"), py::arg("size") = 256, py::arg("rim_fraction") = 0.8);
}
