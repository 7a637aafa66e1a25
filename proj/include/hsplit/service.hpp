#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsplit/image.hpp"
#include "hsplit/pipeline.hpp"

namespace hsplit::service {

struct CatalogEntry {
  std::string id;
  GrayImage image;
  std::vector<std::uint8_t> png; ///< payload served by GET /api/images/{id}/png
  std::optional<BinaryMask> ground_truth;
};

/// Immutable after construction.
class Catalog {
public:
  Catalog() = default;

  /// Every *.png / *.pgm in `dir`; files named <id>_gt.<ext> are the ground
  /// truth for <id>.
  static Catalog from_directory(const std::filesystem::path &dir);
  /// Images and optional ground truths named by a JSON-lines manifest.
  static Catalog from_manifest(const std::filesystem::path &manifest);

  void add(CatalogEntry entry);
  const CatalogEntry *find(const std::string &id) const;
  /// Sorted by id.
  std::vector<const CatalogEntry *> entries() const;

private:
  std::map<std::string, CatalogEntry> entries_;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Request handlers, independent of the HTTP transport. Stateless apart from
/// the catalog, so handlers may run concurrently.
class Service {
public:
  explicit Service(Catalog catalog) : catalog_(std::move(catalog)) {}

  /// GET /api/images
  Response list_images() const;
  /// GET /api/images/{id}/png
  Response get_image(const std::string &id) const;
  /// POST /api/images/{id}/process with body
  ///   {"seed": {"cx":..,"cy":..,"px":..,"py":..}, "params": {...}}
  Response process(const std::string &id, const std::string &body) const;

  const Catalog &catalog() const { return catalog_; }

private:
  Catalog catalog_;
};

/// Applies JSON overrides (right_threshold, rsf, canny_sigma, alpha, ...) to a
/// config. Unknown keys and ill-typed values throw std::invalid_argument.
void apply_overrides(PipelineConfig &cfg, const std::string &params_json);

std::string base64_encode(const std::vector<std::uint8_t> &bytes);
std::vector<std::uint8_t> base64_decode(const std::string &text);

/// HTTP transport over a Service. The Service must outlive the server.
class HttpServer {
public:
  explicit HttpServer(const Service &svc);
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  /// Binds host:port (port 0 picks a free port) and returns the bound port.
  int bind(const std::string &host, int port);
  /// Serves until stop() is called.
  void run();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Splits "host:port" (a bare port means 127.0.0.1).
std::pair<std::string, int> parse_listen(const std::string &listen);

/// Binds `listen` and blocks.
void serve(const Service &svc, const std::string &listen);

} // namespace hsplit::service
