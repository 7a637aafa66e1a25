#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include <png.h>

#include "hsplit/image.hpp"
#include "hsplit/image_io.hpp"
#include "support.hpp"

using namespace hsplit;

namespace {

// Writes a PNG with arbitrary color type / bit depth straight through libpng.
void write_png_raw(const std::filesystem::path &path, int w, int h, int color_type, int depth,
                   const std::vector<std::uint8_t> &rowbytes) {
  FILE *fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    FAIL("libpng write failed");
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, w, h, depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = rowbytes.size() / static_cast<std::size_t>(h);
  for (int y = 0; y < h; ++y) {
    png_write_row(png, rowbytes.data() + stride * static_cast<std::size_t>(y));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

} // namespace

TEST_CASE("GrayImage validates dimensions and buffer") {
  CHECK_THROWS_AS(GrayImage(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), std::invalid_argument);
  GrayImage img(3, 2, 9);
  CHECK(img.size() == 6);
  img.at(2, 1) = 200;
  CHECK(img[5] == 200);
}

TEST_CASE("masked_histogram counts") {
  const GrayImage img(2, 2, {0, 0, 255, 7});
  SUBCASE("all-true mask") {
    const auto h = masked_histogram(img, BinaryMask(2, 2, true));
    CHECK(h[0] == 2);
    CHECK(h[7] == 1);
    CHECK(h[255] == 1);
    CHECK(h.total == 4);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}) == 4);
  }
  SUBCASE("all-false mask") {
    const auto h = masked_histogram(img, BinaryMask(2, 2, false));
    CHECK(h.total == 0);
    for (auto c : h.counts) {
      CHECK(c == 0);
    }
  }
  SUBCASE("uniform image with 100 selected pixels") {
    const GrayImage flat(20, 10, 30);
    BinaryMask m(20, 10);
    for (int x = 0; x < 10; ++x) {
      for (int y = 0; y < 10; ++y) {
        m.set(x, y, true);
      }
    }
    const auto h = masked_histogram(flat, m);
    CHECK(h[30] == 100);
    CHECK(h.total == 100);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(masked_histogram(img, BinaryMask(3, 2)), std::invalid_argument);
  }
}

TEST_CASE("masked_histogram sums to popcount and ignores pixel order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = gen::random_image(rng, 17, 13);
    const auto m = gen::random_mask(rng, 17, 13, 0.4);
    const auto h = masked_histogram(img, m);
    CHECK(h.total == m.popcount());
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}) == m.popcount());

    std::vector<std::uint8_t> px(img.pixels().begin(), img.pixels().end());
    std::shuffle(px.begin(), px.end(), rng);
    const GrayImage perm(17, 13, std::move(px));
    CHECK(image_histogram(perm) == image_histogram(img));
  }
}

TEST_CASE("PGM and PNG round-trips") {
  TempDir dir("io");
  SUBCASE("2x2 PGM") {
    const GrayImage img(2, 2, {0, 128, 255, 7});
    save_gray(img, dir.path / "a.pgm");
    std::ifstream in(dir.path / "a.pgm", std::ios::binary);
    std::string magic(2, '\0');
    in.read(magic.data(), 2);
    CHECK(magic == "P5");
    CHECK(load_gray(dir.path / "a.pgm") == img);
  }
  SUBCASE("1x1 PNG") {
    const GrayImage img(1, 1, 42);
    save_gray(img, dir.path / "one.png");
    const auto back = load_gray(dir.path / "one.png");
    CHECK(back.width() == 1);
    CHECK(back[0] == 42);
  }
  SUBCASE("random images in both formats") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
      const auto img = gen::random_image(rng, 1 + i * 7, 1 + i * 3);
      save_gray(img, dir.path / "r.png");
      save_gray(img, dir.path / "r.pgm");
      CHECK(load_gray(dir.path / "r.png") == img);
      CHECK(load_gray(dir.path / "r.pgm") == img);
      CHECK(decode_png(encode_png(img)) == img);
    }
  }
  SUBCASE("mask as 0/255") {
    std::mt19937_64 rng(6);
    const auto m = gen::random_mask(rng, 31, 9, 0.5);
    save_mask(m, dir.path / "m.png");
    const auto g = load_gray(dir.path / "m.png");
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK((g[i] == 0 || g[i] == 255));
    }
    CHECK(load_mask(dir.path / "m.png") == m);
  }
}

TEST_CASE("PNG decoding of other layouts") {
  TempDir dir("png");
  SUBCASE("16-bit gray is rejected") {
    write_png_raw(dir.path / "deep.png", 2, 1, PNG_COLOR_TYPE_GRAY, 16, {0, 1, 255, 255});
    try {
      load_gray(dir.path / "deep.png");
      FAIL("expected an error");
    } catch (const IoError &e) {
      CHECK(std::string(e.what()).find("unsupported bit depth") != std::string::npos);
    }
  }
  SUBCASE("RGB reduces with rounded Rec.601 luma") {
    write_png_raw(dir.path / "rgb.png", 3, 1, PNG_COLOR_TYPE_RGB, 8,
                  {255, 0, 0, 0, 255, 0, 10, 20, 30});
    const auto img = load_gray(dir.path / "rgb.png");
    CHECK(img[0] == 76);  // 0.299 * 255 = 76.245
    CHECK(img[1] == 150); // 0.587 * 255 = 149.685
    CHECK(img[2] == 18);  // 2.99 + 11.74 + 3.42 = 18.15
  }
  SUBCASE("PGM with maxval above 255 is rejected") {
    const std::string pgm = "P5\n1 1\n65535\n\x01\x02";
    CHECK_THROWS_WITH_AS(
        decode_pgm(std::span(reinterpret_cast<const std::uint8_t *>(pgm.data()), pgm.size())),
        doctest::Contains("unsupported bit depth"), IoError);
  }
}

TEST_CASE("I/O errors carry the path") {
  const std::filesystem::path missing = "/nonexistent-hsplit-dir/x.png";
  CHECK_THROWS_WITH_AS(save_gray(GrayImage(1, 1), missing),
                       doctest::Contains("nonexistent-hsplit-dir"), IoError);
  CHECK_THROWS_WITH_AS(load_gray(missing), doctest::Contains("nonexistent-hsplit-dir"), IoError);
}

TEST_CASE("mask set operations") {
  const BinaryMask a(2, 2, {1, 1, 0, 0});
  const BinaryMask b(2, 2, {0, 1, 1, 0});
  CHECK(mask_and(a, b) == BinaryMask(2, 2, {0, 1, 0, 0}));
  CHECK(mask_or(a, b) == BinaryMask(2, 2, {1, 1, 1, 0}));
  CHECK(mask_not(a) == BinaryMask(2, 2, {0, 0, 1, 1}));
  CHECK(is_subset(mask_and(a, b), a));
  CHECK_FALSE(is_subset(a, b));
  CHECK_THROWS_AS(mask_and(a, BinaryMask(3, 2)), std::invalid_argument);
}
