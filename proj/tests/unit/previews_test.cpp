#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rdm/error.hpp"
#include "rdm/extract/fixtures.hpp"
#include "rdm/previews/ebsd.hpp"
#include "rdm/previews/ipf.hpp"
#include "rdm/previews/png.hpp"
#include "rdm/previews/thumbnail.hpp"
#include "rdm/service/demo_files.hpp"

using namespace rdm;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rdm::Error");
  return ErrorCode::Io;
}

constexpr double kPi = std::numbers::pi;
constexpr Rgb8 kRed{255, 0, 0}, kGreen{0, 255, 0}, kBlue{0, 0, 255};

RgbImage noise_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RgbImage img(w, h);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
  return img;
}

EulerOrientation random_orientation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // Uniform on SO(3): cos(Phi) uniform in [-1, 1].
  return {2 * kPi * u(rng), std::acos(2 * u(rng) - 1), 2 * kPi * u(rng)};
}

}  // namespace

TEST_SUITE("previews") {

TEST_CASE("png round trip and text chunks") {
  const auto img = noise_image(37, 23, 1);
  const auto png = encode_png(img, {{"Title", "noise"}, {"Note", "x"}});
  CHECK(is_png(png));
  CHECK(decode_png(png) == img);
  CHECK(read_png_text(png) == PngText{{"Title", "noise"}, {"Note", "x"}});
  CHECK(encode_png(img) == encode_png(img));
  CHECK_FALSE(is_png(to_bytes("GIF89a")));
  auto damaged = png;
  damaged[damaged.size() / 2] ^= 0xFF;
  CHECK(code_of([&] { decode_png(damaged); }) == ErrorCode::Parse);
  CHECK(code_of([] { decode_png(to_bytes("not a png at all")); }) == ErrorCode::Parse);
  const RgbImage one(1, 1, {1, 2, 3});
  CHECK(decode_png(encode_png(one)).at(0, 0) == Rgb8{1, 2, 3});
}

TEST_CASE("ipf corners are pure primaries") {
  CHECK(euler_to_ipf_color({0, 0, 0}) == kRed);
  CHECK(euler_to_ipf_color({0, kPi / 4, 0}) == kGreen);
  CHECK(euler_to_ipf_color({0, std::acos(1 / std::sqrt(3.0)), kPi / 4}) == kBlue);
  CHECK(ipf_color({0, 0, 1}) == kRed);
  CHECK(ipf_color({1, 0, 1}) == kGreen);
  CHECK(ipf_color({1, 1, 1}) == kBlue);
  CHECK(ipf_color({0, 0, -3}) == kRed);
  CHECK(ipf_color({-1, 1, -1}) == kBlue);
}

TEST_CASE("sample Z direction of a hand-rotated orientation") {
  // Phi = 45 degrees tilts sample Z onto a <011>-type crystal direction.
  const auto v = sample_z_in_crystal({0, kPi / 4, 0});
  CHECK(std::abs(v[0]) == doctest::Approx(0).epsilon(1e-15));
  CHECK(std::abs(v[1]) == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(v[2]) == doctest::Approx(std::sqrt(0.5)));
  const auto t = to_standard_triangle({-0.3, 0.9, 0.1});
  CHECK(t[0] <= t[1]);
  CHECK(t[1] <= t[2]);
  CHECK(t[2] == doctest::Approx(0.9));
}

TEST_CASE("cubic group has 24 distinct proper rotations") {
  const auto rots = cubic_rotations();
  REQUIRE(rots.size() == 24);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(rots[0][i][j] == (i == j ? 1.0 : 0.0));
  for (const auto& r : rots) {
    const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                       r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                       r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
    CHECK(det == 1.0);
  }
  for (std::size_t a = 0; a < rots.size(); ++a)
    for (std::size_t b = a + 1; b < rots.size(); ++b) CHECK(rots[a] != rots[b]);
  // Closed under composition.
  for (const auto& a : rots)
    for (const auto& b : rots)
      CHECK(std::find(rots.begin(), rots.end(), multiply(a, b)) != rots.end());
}

TEST_CASE("euler angles survive matrix conversion") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto o = random_orientation(rng);
    const auto g = orientation_matrix(o);
    const auto back = orientation_matrix(euler_from_matrix(g));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) CHECK(back[r][c] == doctest::Approx(g[r][c]).epsilon(1e-9));
  }
}

TEST_CASE("colour is invariant under the 24 cubic rotations") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto o = random_orientation(rng);
    const auto base = euler_to_ipf_color(o);
    for (const auto& s : cubic_rotations()) {
      const auto rotated = euler_from_matrix(multiply(s, orientation_matrix(o)));
      CHECK(euler_to_ipf_color(rotated) == base);
    }
  }
}

TEST_CASE("ang parsing") {
  const auto two_by_two =
      "# NCOLS 2\n# NROWS 2\n# STEP 0.5e-6\n"
      "0 0 0 0 0 1 1\n0 0.7853981633974483 0 1 0 1 1\n0 0 0 0 1 0 1\n1 1 1 1 1 0.5 1\n";
  const auto map = parse_ang(two_by_two);
  CHECK(map.n_cols == 2);
  CHECK(map.n_rows == 2);
  CHECK(map.step == 0.5e-6);
  CHECK(map.cells.size() == 4);
  CHECK(parse_ang(write_ang(map)) == map);

  CHECK(code_of([] { parse_ang(""); }) == ErrorCode::Header);
  CHECK(code_of([] { parse_ang("# NCOLS 2\n# STEP 1\n0 0 0 0 0 1 1\n"); }) == ErrorCode::Header);
  CHECK(code_of([] {
          parse_ang("# NCOLS 2\n# NROWS 2\n# STEP 1\n0 0 0 0 0 1 1\n0 0 0 0 0 1 1\n0 0 0 0 0 1 1\n");
        }) == ErrorCode::Shape);
  try {
    parse_ang("# NCOLS 1\n# NROWS 1\n# STEP 1\n0 0 zero 0 0 1 1\n");
    FAIL("expected SYNTAX");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("ipf map is pointwise") {
  const auto map = parse_ang(
      "# NCOLS 2\n# NROWS 2\n# STEP 1\n"
      "0 0 0 0 0 1 1\n0 0.7853981633974483 0 1 0 1 1\n0 0 0 0 1 0 1\n0 0 0 1 1 1 1\n");
  const auto img = ipf_z_map(map);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.at(0, 0) == kRed);
  CHECK(img.at(0, 1) == kGreen);
  CHECK(img.at(1, 0) == Rgb8{0, 0, 0});
  CHECK(img.at(1, 1) == kRed);

  auto demo = demo_ebsd_map(5, 16, 12, 5);
  const auto before = ipf_z_map(demo);
  std::swap(demo.cells[3], demo.cells[40]);
  const auto after = ipf_z_map(demo);
  for (std::size_t r = 0; r < demo.n_rows; ++r)
    for (std::size_t c = 0; c < demo.n_cols; ++c) {
      const auto idx = r * demo.n_cols + c;
      const auto src = idx == 3 ? 40 : idx == 40 ? 3 : idx;
      CHECK(after.at(r, c) == before.at(src / demo.n_cols, src % demo.n_cols));
    }
}

TEST_CASE("thumbnails never upscale") {
  CHECK(thumbnail(RgbImage(1024, 768)).width == 256);
  CHECK(thumbnail(RgbImage(1024, 768)).height == 192);
  const auto small = noise_image(100, 50, 3);
  CHECK(thumbnail(small) == small);
  const auto sq = thumbnail(RgbImage(512, 512));
  CHECK(sq.width == 256);
  CHECK(sq.height == 256);
  CHECK(thumbnail(RgbImage(2000, 3)).height == 1);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 30; ++i) {
    const std::size_t w = 1 + rng() % 900, h = 1 + rng() % 900, m = 1 + rng() % 300;
    const auto t = thumbnail(RgbImage(w, h), m);
    CHECK(std::max(t.width, t.height) <= m);
    CHECK(t.width <= w);
    CHECK(t.height <= h);
    CHECK(t.pixels.size() == 3 * t.width * t.height);
  }
  // Box filter averages uniform blocks exactly.
  RgbImage checker(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) checker.put(r, c, (r + c) % 2 ? Rgb8{200, 0, 0} : Rgb8{0, 0, 100});
  const auto t = thumbnail(checker, 2);
  CHECK(t.at(0, 0) == Rgb8{100, 0, 50});
}

TEST_CASE("previews for registered files") {
  const auto m = demo_sem_metadata();
  const auto va = make_preview(write_vendor(VendorFormat::VendorA, m), "SEM_IMAGE", VendorFormat::VendorA);
  REQUIRE(va);
  const auto img = decode_png(*va);
  CHECK(std::max(img.width, img.height) <= kThumbnailSize);

  const auto ang = to_bytes(write_ang(demo_ebsd_map(1)));
  const auto ebsd = make_preview(ang, "EBSD_MAP", VendorFormat::Unknown);
  REQUIRE(ebsd);
  CHECK(decode_png(*ebsd).width == 64);

  const auto png = encode_png(noise_image(600, 300, 4));
  const auto plain = make_preview(png, "OTHER", VendorFormat::Unknown);
  REQUIRE(plain);
  CHECK(decode_png(*plain).width == 256);
  CHECK(decode_png(*plain).height == 128);

  CHECK_FALSE(make_preview(to_bytes("time_s,displacement_nm,load_mN\n"), "LOAD_DISPLACEMENT",
                           VendorFormat::Unknown));
  CHECK_FALSE(make_preview(write_vendor(VendorFormat::VendorC, m), "SEM_IMAGE", VendorFormat::VendorC));
}

}  // TEST_SUITE
