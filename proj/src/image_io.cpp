#include "hsplit/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

namespace hsplit {

namespace fs = std::filesystem;

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_error_fn(png_structp png, png_const_charp msg) {
  auto *err = static_cast<std::string *>(png_get_error_ptr(png));
  if (err != nullptr) {
    *err = msg;
  }
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

void png_read_fn(png_structp png, png_bytep out, png_size_t len) {
  auto *cur = static_cast<ReadCursor *>(png_get_io_ptr(png));
  if (cur->pos + len > cur->bytes.size()) {
    png_error(png, "truncated PNG data");
  }
  std::memcpy(out, cur->bytes.data() + cur->pos, len);
  cur->pos += len;
}

void png_write_fn(png_structp png, png_bytep data, png_size_t len) {
  auto *out = static_cast<std::vector<std::uint8_t> *>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void png_flush_fn(png_structp) {}

// Everything that touches setjmp lives in these two functions; no
// non-trivially-destructible locals may be created between setjmp and the
// libpng calls that can longjmp.
bool decode_png_raw(std::span<const std::uint8_t> bytes, std::string &err,
                    int &width, int &height, int &channels, int &bit_depth,
                    std::vector<std::uint8_t> &raw) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           png_error_fn, png_warning_fn);
  if (png == nullptr) {
    err = "png_create_read_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    err = "png_create_info_struct failed";
    return false;
  }
  ReadCursor cursor{bytes, 0};
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, &cursor, png_read_fn);
  png_read_info(png, info);

  bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    err = "unsupported bit depth (" + std::to_string(bit_depth) + " bits per channel)";
    return false;
  }
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  }
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_tRNS_to_alpha(png);
  }
  png_read_update_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  channels = png_get_channels(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  raw.resize(rowbytes * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = raw.data() + rowbytes * static_cast<std::size_t>(y);
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool encode_png_raw(const GrayImage &img, std::string &err,
                    std::vector<std::uint8_t> &out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                            png_error_fn, png_warning_fn);
  if (png == nullptr) {
    err = "png_create_write_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    err = "png_create_info_struct failed";
    return false;
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &out, png_write_fn, png_flush_fn);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  auto px = img.pixels();
  for (int y = 0; y < img.height(); ++y) {
    rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(
        px.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()));
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

std::vector<std::uint8_t> read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path &path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

bool is_pgm_path(const fs::path &path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pgm";
}

// PGM header token reader: skips whitespace and '#' comments.
bool next_token(std::span<const std::uint8_t> bytes, std::size_t &pos, std::string &tok) {
  tok.clear();
  while (pos < bytes.size()) {
    const char c = static_cast<char>(bytes[pos]);
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') {
        ++pos;
      }
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#') {
    tok.push_back(static_cast<char>(bytes[pos++]));
  }
  return !tok.empty();
}

int parse_header_int(const std::string &tok, const char *field) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
      })) {
    throw IoError(std::string("malformed PGM header field ") + field + ": '" + tok + "'");
  }
  return std::stoi(tok);
}

} // namespace

std::vector<std::uint8_t> encode_png(const GrayImage &img) {
  std::string err;
  std::vector<std::uint8_t> out;
  if (!encode_png_raw(img, err, out)) {
    throw IoError("PNG encode failed: " + err);
  }
  return out;
}

GrayImage decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kPngSignature, 8) != 0) {
    throw IoError("not a PNG stream");
  }
  std::string err;
  int width = 0, height = 0, channels = 0, depth = 0;
  std::vector<std::uint8_t> raw;
  if (!decode_png_raw(bytes, err, width, height, channels, depth, raw)) {
    throw IoError(err.empty() ? std::string("PNG decode failed") : err);
  }
  std::vector<std::uint8_t> gray(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const std::uint8_t *p = raw.data() + i * static_cast<std::size_t>(channels);
    switch (channels) {
    case 1:
    case 2: // gray + alpha
      gray[i] = p[0];
      break;
    default: // RGB or RGBA
      gray[i] = luma601(p[0], p[1], p[2]);
      break;
    }
  }
  return GrayImage(width, height, std::move(gray));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage &img) {
  const std::string header = "P5\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  auto px = img.pixels();
  out.insert(out.end(), px.begin(), px.end());
  return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  std::string tok;
  if (!next_token(bytes, pos, tok) || tok != "P5") {
    throw IoError("not a binary PGM (P5) stream");
  }
  next_token(bytes, pos, tok);
  const int width = parse_header_int(tok, "width");
  next_token(bytes, pos, tok);
  const int height = parse_header_int(tok, "height");
  next_token(bytes, pos, tok);
  const int maxval = parse_header_int(tok, "maxval");
  if (maxval < 1 || maxval > 255) {
    throw IoError("unsupported bit depth (PGM maxval " + std::to_string(maxval) + ")");
  }
  if (width < 1 || height < 1) {
    throw IoError("PGM has empty dimensions");
  }
  ++pos; // single whitespace byte after maxval
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (pos + n > bytes.size()) {
    throw IoError("truncated PGM pixel data");
  }
  std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                               bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return GrayImage(width, height, std::move(px));
}

GrayImage load_gray(const fs::path &path) {
  const auto bytes = read_file(path);
  try {
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
      return decode_pgm(bytes);
    }
    return decode_png(bytes);
  } catch (const IoError &e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void save_gray(const GrayImage &img, const fs::path &path) {
  if (is_pgm_path(path)) {
    write_file(path, encode_pgm(img));
  } else {
    write_file(path, encode_png(img));
  }
}

BinaryMask load_mask(const fs::path &path) {
  return BinaryMask::from_gray(load_gray(path));
}

void save_mask(const BinaryMask &mask, const fs::path &path) {
  save_gray(mask.to_gray(), path);
}

} // namespace hsplit
