#include "hsplit/service.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <iostream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "hsplit/batch.hpp"
#include "hsplit/image_io.hpp"

namespace hsplit::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

Response json_response(int status, const json &j) {
  return Response{status, "application/json", j.dump()};
}

Response error_response(int status, const std::string &message, const std::string &stage = {}) {
  json j{{"error", message}};
  if (!stage.empty()) {
    j["stage"] = stage;
  }
  return json_response(status, j);
}

bool has_image_extension(const fs::path &p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".pgm";
}

std::vector<std::uint8_t> read_bytes(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CatalogEntry load_entry(const std::string &id, const fs::path &image,
                        const std::optional<fs::path> &gt) {
  CatalogEntry e;
  e.id = id;
  e.image = load_gray(image);
  auto bytes = read_bytes(image);
  // PNG sources are served verbatim; anything else is re-encoded.
  const bool is_png = bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P';
  e.png = is_png ? std::move(bytes) : encode_png(e.image);
  if (gt) {
    e.ground_truth = load_mask(*gt);
    if (e.ground_truth->dims() != e.image.dims()) {
      throw std::invalid_argument("ground truth for '" + id + "' has different dimensions");
    }
  }
  return e;
}

std::string png_b64(const GrayImage &img) { return base64_encode(encode_png(img)); }
std::string png_b64(const BinaryMask &m) { return base64_encode(encode_png(m.to_gray())); }

template <typename T>
T get_number(const json &v, const std::string &key) {
  if (!v.is_number()) {
    throw std::invalid_argument("parameter '" + key + "' must be a number");
  }
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("parameter '" + key + "' must be an integer");
    }
  }
  return v.get<T>();
}

} // namespace

Catalog Catalog::from_directory(const fs::path &dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("image directory '" + dir.string() + "' is not readable");
  }
  std::map<std::string, fs::path> images;
  std::map<std::string, fs::path> truths;
  for (const auto &de : fs::directory_iterator(dir)) {
    if (!de.is_regular_file() || !has_image_extension(de.path())) {
      continue;
    }
    const std::string stem = de.path().stem().string();
    if (stem.size() > 3 && stem.ends_with("_gt")) {
      truths[stem.substr(0, stem.size() - 3)] = de.path();
    } else {
      images[stem] = de.path();
    }
  }
  Catalog c;
  for (const auto &[id, path] : images) {
    std::optional<fs::path> gt;
    if (auto it = truths.find(id); it != truths.end()) {
      gt = it->second;
    }
    c.add(load_entry(id, path, gt));
  }
  return c;
}

Catalog Catalog::from_manifest(const fs::path &manifest) {
  Catalog c;
  for (const auto &e : read_manifest(manifest)) {
    c.add(load_entry(e.id, e.image_path, e.gt_path));
  }
  return c;
}

void Catalog::add(CatalogEntry entry) {
  const std::string id = entry.id;
  if (!entries_.emplace(id, std::move(entry)).second) {
    throw std::invalid_argument("duplicate image id '" + id + "'");
  }
}

const CatalogEntry *Catalog::find(const std::string &id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<const CatalogEntry *> Catalog::entries() const {
  std::vector<const CatalogEntry *> out;
  out.reserve(entries_.size());
  for (const auto &[id, e] : entries_) {
    out.push_back(&e);
  }
  return out;
}

Response Service::list_images() const {
  json arr = json::array();
  for (const auto *e : catalog_.entries()) {
    arr.push_back({{"id", e->id},
                   {"width", e->image.width()},
                   {"height", e->image.height()},
                   {"has_ground_truth", e->ground_truth.has_value()}});
  }
  return json_response(200, json{{"images", arr}});
}

Response Service::get_image(const std::string &id) const {
  const auto *e = catalog_.find(id);
  if (e == nullptr) {
    return error_response(404, "unknown image id '" + id + "'");
  }
  return Response{200, "image/png", std::string(e->png.begin(), e->png.end())};
}

void apply_overrides(PipelineConfig &cfg, const std::string &params_json) {
  json p;
  try {
    p = json::parse(params_json);
  } catch (const json::exception &ex) {
    throw std::invalid_argument(std::string("malformed params: ") + ex.what());
  }
  if (p.is_null()) {
    return;
  }
  if (!p.is_object()) {
    throw std::invalid_argument("params must be an object");
  }
  for (const auto &[key, v] : p.items()) {
    if (key == "right_threshold") cfg.threshold.right_threshold = get_number<double>(v, key);
    else if (key == "left_threshold") cfg.threshold.left_threshold = get_number<double>(v, key);
    else if (key == "decay_peak_cutoff") cfg.threshold.decay_peak_cutoff = get_number<int>(v, key);
    else if (key == "rsf") cfg.split.rsf = get_number<double>(v, key);
    else if (key == "lsf") cfg.split.lsf = get_number<double>(v, key);
    else if (key == "canny_sigma") cfg.edge.gaussian_sigma = get_number<double>(v, key);
    else if (key == "canny_low") cfg.edge.low_fraction = get_number<double>(v, key);
    else if (key == "canny_high") cfg.edge.high_fraction = get_number<double>(v, key);
    else if (key == "ewr_factor") cfg.washup.ewr_factor = get_number<double>(v, key);
    else if (key == "se_size") cfg.se_size = get_number<int>(v, key);
    else if (key == "alpha") cfg.snake.alpha = get_number<double>(v, key);
    else if (key == "beta") cfg.snake.beta = get_number<double>(v, key);
    else if (key == "gamma") cfg.snake.gamma = get_number<double>(v, key);
    else if (key == "kappa") cfg.snake.kappa = get_number<double>(v, key);
    else if (key == "iterations") cfg.snake.iterations = get_number<int>(v, key);
    else if (key == "n_points") cfg.snake.n_points = get_number<int>(v, key);
    else if (key == "blur_sigma") cfg.snake.blur_sigma = get_number<double>(v, key);
    else throw std::invalid_argument("unknown parameter '" + key + "'");
  }
}

Response Service::process(const std::string &id, const std::string &body) const {
  const auto *e = catalog_.find(id);
  if (e == nullptr) {
    return error_response(404, "unknown image id '" + id + "'");
  }
  PipelineConfig cfg;
  SeedPoints seed;
  try {
    const json req = json::parse(body);
    const json &s = req.at("seed");
    seed = SeedPoints{{s.at("cx").get<int>(), s.at("cy").get<int>()},
                      {s.at("px").get<int>(), s.at("py").get<int>()}};
    if (req.contains("params")) {
      apply_overrides(cfg, req.at("params").dump());
    }
  } catch (const json::exception &ex) {
    return error_response(400, std::string("malformed request: ") + ex.what(), "request");
  } catch (const std::invalid_argument &ex) {
    return error_response(400, ex.what(), "request");
  }

  PipelineResult r;
  try {
    r = run_pipeline(e->image, seed, cfg, e->ground_truth ? &*e->ground_truth : nullptr);
  } catch (const StageError &ex) {
    return error_response(ex.invalid_input() ? 400 : 500, ex.detail(), ex.stage());
  } catch (const std::exception &ex) {
    return error_response(500, ex.what(), "pipeline");
  }

  json out;
  out["id"] = id;
  out["roi"] = {{"cx", r.roi.cx}, {"cy", r.roi.cy}, {"r", r.roi.r}};
  out["pointer_pair"] = {{"xl", r.pointer_pair.xl},
                         {"xp", r.pointer_pair.xp},
                         {"xr", r.pointer_pair.xr},
                         {"shape", std::string(to_string(r.pointer_pair.shape))}};
  out["stages"] = {{"hssi", png_b64(r.hssi)},
                   {"edge_original", png_b64(r.edge_original)},
                   {"ehssi", png_b64(r.ehssi)},
                   {"washed", png_b64(r.washed)},
                   {"eehssi", png_b64(r.eehssi)},
                   {"seg_original", png_b64(r.seg_original)},
                   {"seg_hssi", png_b64(r.seg_hssi)}};
  if (r.metrics) {
    const auto &m = *r.metrics;
    out["metrics"] = {{"dsc_original", m.dsc_original},
                      {"dsc_hssi", m.dsc_hssi},
                      {"pir_original", m.pir_original},
                      {"pir_ehssi", m.pir_ehssi},
                      {"pir_washed", m.pir_washed}};
  } else {
    out["metrics"] = nullptr;
  }
  return json_response(200, out);
}

std::string base64_encode(const std::vector<std::uint8_t> &bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += kB64[(v >> 6) & 63];
    out += kB64[v & 63];
  }
  if (i + 1 == bytes.size()) {
    const std::uint32_t v = bytes[i] << 16;
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += kB64[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string &text) {
  std::array<int, 256> rev{};
  rev.fill(-1);
  for (int i = 0; i < 64; ++i) {
    rev[static_cast<unsigned char>(kB64[i])] = i;
  }
  std::vector<std::uint8_t> out;
  std::uint32_t acc = 0;
  int bits = 0;
  for (char c : text) {
    if (c == '=') {
      break;
    }
    const int v = rev[static_cast<unsigned char>(c)];
    if (v < 0) {
      throw std::invalid_argument("invalid base64 character");
    }
    acc = (acc << 6) | static_cast<std::uint32_t>(v);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xff));
    }
  }
  return out;
}

struct HttpServer::Impl {
  const Service &svc;
  httplib::Server server;
  explicit Impl(const Service &s) : svc(s) {}
};

namespace {

void reply(httplib::Response &res, const Response &r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

} // namespace

HttpServer::HttpServer(const Service &svc) : impl_(std::make_unique<Impl>(svc)) {
  auto &srv = impl_->server;
  const Service *s = &impl_->svc;
  srv.Get("/api/images", [s](const httplib::Request &, httplib::Response &res) {
    reply(res, s->list_images());
  });
  srv.Get(R"(/api/images/([^/]+)/png)", [s](const httplib::Request &req, httplib::Response &res) {
    reply(res, s->get_image(req.matches[1]));
  });
  srv.Post(R"(/api/images/([^/]+)/process)",
           [s](const httplib::Request &req, httplib::Response &res) {
             reply(res, s->process(req.matches[1], req.body));
           });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string &host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) {
      throw std::runtime_error("cannot bind " + host);
    }
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

std::pair<std::string, int> parse_listen(const std::string &listen) {
  const auto colon = listen.rfind(':');
  std::string host = "127.0.0.1";
  std::string port_text = listen;
  if (colon != std::string::npos) {
    host = listen.substr(0, colon);
    port_text = listen.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    const int port = std::stoi(port_text, &used);
    if (used != port_text.size() || port < 0 || port > 65535) {
      throw std::invalid_argument("range");
    }
    return {host, port};
  } catch (const std::exception &) {
    throw std::invalid_argument("invalid --listen value '" + listen + "', expected host:port");
  }
}

void serve(const Service &svc, const std::string &listen) {
  const auto [host, port] = parse_listen(listen);
  HttpServer server(svc);
  const int bound = server.bind(host, port);
  std::cerr << "serving " << svc.catalog().entries().size() << " image(s) on http://" << host
            << ":" << bound << "\n";
  server.run();
}

} // namespace hsplit::service
