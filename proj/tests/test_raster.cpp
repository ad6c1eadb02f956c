#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "dlab/raster.hpp"
#include "oracles.hpp"

using namespace dlab;
using namespace dlab::raster;

namespace {

using Complex = std::complex<double>;
const Window unit{-1, 1, -1, 1};

// Hue in [0, 6) of an RGB triple, or -1 for greys.
double hue_of(const Rgb& c) {
  const double r = c[0], g = c[1], b = c[2];
  const double mx = std::max({r, g, b}), mn = std::min({r, g, b});
  if (mx == mn) return -1;
  double h;
  if (mx == r) h = std::fmod((g - b) / (mx - mn) + 6, 6);
  else if (mx == g) h = (b - r) / (mx - mn) + 2;
  else h = (r - g) / (mx - mn) + 4;
  return h;
}

iterate::BasinImage basin_stub(std::vector<std::int32_t> idx, std::vector<std::uint32_t> iters, std::size_t roots,
                              std::size_t max_iter) {
  iterate::BasinImage b;
  b.width = idx.size();
  b.height = 1;
  b.window = unit;
  b.root_count = roots;
  b.max_iter = max_iter;
  b.root_index = std::move(idx);
  b.iter_count = std::move(iters);
  b.roots.assign(roots, 0.0);
  return b;
}

}  // namespace

TEST(DensityGrid, AccumulateExamples) {
  DensityGrid g(4, 4, unit);
  accumulate(g, Complex(0.01, 0.01));
  EXPECT_EQ(g.at(2, 2), 1u);
  accumulate(g, Complex(5, 0));
  EXPECT_EQ(g.dropped, 1u);
  const std::vector<Complex> same(7, Complex(-0.9, 0.9));
  accumulate(g, same);
  EXPECT_EQ(g.at(0, 3), 7u);
  EXPECT_EQ(g.total_in_window(), 8u);
  EXPECT_EQ(g.max_count(), 7u);
}

TEST(DensityGrid, EdgeTies) {
  DensityGrid g(4, 4, unit);
  accumulate(g, Complex(1, 1));     // upper edges to the last bin
  accumulate(g, Complex(-1, -1));   // lower edges are inside
  accumulate(g, Complex(0.5, 0));   // interior bin boundary goes up
  EXPECT_EQ(g.at(3, 3), 1u);
  EXPECT_EQ(g.at(0, 0), 1u);
  EXPECT_EQ(g.at(3, 2), 1u);
  EXPECT_EQ(g.dropped, 0u);
  accumulate(g, Complex(std::nextafter(1.0, 2.0), 0));
  EXPECT_EQ(g.dropped, 1u);
  accumulate(g, Complex(NAN, 0));
  EXPECT_EQ(g.dropped, 2u);
}

TEST(DensityGrid, ConservationAndMerge) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 0.8);
  std::vector<Complex> pts(5000);
  for (auto& z : pts) z = {n(rng), n(rng)};
  DensityGrid whole(17, 9, unit), a(17, 9, unit), b(17, 9, unit);
  accumulate(whole, pts);
  EXPECT_EQ(whole.total_in_window() + whole.dropped, pts.size());
  accumulate(a, std::span(pts).first(1234));
  accumulate(b, std::span(pts).subspan(1234));
  merge(a, b);
  EXPECT_EQ(a, whole);
  DensityGrid other(3, 3, unit);
  EXPECT_THROW(merge(a, other), InvalidArgument);
}

TEST(DensityGrid, Rotation) {
  DensityGrid g(3, 2, unit);
  g.at(0, 0) = 5;
  g.at(2, 1) = 1;
  const auto r = g.rotated_180();
  EXPECT_EQ(r.at(2, 1), 5u);
  EXPECT_EQ(r.at(0, 0), 1u);
  EXPECT_EQ(r.rotated_180(), g);
}

TEST(DensityGrid, RejectsBadShape) {
  EXPECT_THROW(DensityGrid(0, 3, unit), InvalidArgument);
  EXPECT_THROW(DensityGrid(3, 3, Window{1, 1, 0, 1}), InvalidArgument);
}

TEST(Colorize, DensityExtremes) {
  DensityGrid g(3, 1, unit);
  g.at(0, 0) = 0;
  g.at(1, 0) = 3;
  g.at(2, 0) = 1000;
  const auto img = colorize_density(g);
  EXPECT_EQ(img.at(0, 0), (Rgb{0, 0, 0}));
  EXPECT_EQ(img.at(2, 0), (Rgb{255, 255, 255}));
  g.at(2, 0) = 5;  // still the maximum
  EXPECT_EQ(colorize_density(g).at(2, 0), (Rgb{255, 255, 255}));
  const auto lin = colorize_density(g, DensityScheme::hot_linear);
  EXPECT_EQ(lin.at(2, 0), (Rgb{255, 255, 255}));
}

TEST(Colorize, AllZeroIsBlack) {
  const DensityGrid g(5, 4, unit);
  for (const auto& p : colorize_density(g).pixels) EXPECT_EQ(p, (Rgb{0, 0, 0}));
}

TEST(Colorize, TopRowIsMaxImaginary) {
  DensityGrid g(1, 2, unit);
  g.at(0, 1) = 1;  // upper half of the window
  const auto img = colorize_density(g);
  EXPECT_EQ(img.at(0, 0), (Rgb{255, 255, 255}));
  EXPECT_EQ(img.at(0, 1), (Rgb{0, 0, 0}));
}

TEST(Colorize, HotRampIsMonotone) {
  int previous = -1;
  for (int k = 0; k <= 1000; ++k) {
    const Rgb c = hot_ramp(k / 1000.0);
    const int sum = c[0] + c[1] + c[2];
    EXPECT_GE(sum, previous);
    previous = sum;
  }
  EXPECT_EQ(hot_ramp(0), (Rgb{0, 0, 0}));
  EXPECT_EQ(hot_ramp(1), (Rgb{255, 255, 255}));
}

TEST(Colorize, DensityIsMonotoneInCount) {
  DensityGrid g(200, 1, unit);
  for (std::size_t i = 0; i < 200; ++i) g.at(i, 0) = i * i;
  const auto img = colorize_density(g);
  for (std::size_t i = 1; i < 200; ++i) {
    const auto& a = img.at(i - 1, 0);
    const auto& b = img.at(i, 0);
    EXPECT_GE(b[0] + b[1] + b[2], a[0] + a[1] + a[2]) << i;
  }
}

TEST(Colorize, Basins) {
  const auto img = colorize_basins(basin_stub({-1, 0, 0, 1}, {3, 0, 50, 2}, 2, 50));
  EXPECT_EQ(img.at(0, 0), (Rgb{0, 0, 0}));
  EXPECT_NEAR(hue_of(img.at(1, 0)), hue_of(img.at(2, 0)), 0.05);
  const auto& bright = img.at(1, 0);
  const auto& dim = img.at(2, 0);
  EXPECT_GT(bright[0] + bright[1] + bright[2], dim[0] + dim[1] + dim[2]);
  EXPECT_NE(dim, (Rgb{0, 0, 0}));
}

TEST(Colorize, DistinctRootsGetDistinctHues) {
  for (std::size_t roots = 1; roots <= 12; ++roots)
    for (std::uint32_t seed : {0u, 1u, 7u}) {
      std::vector<std::int32_t> idx(roots);
      for (std::size_t k = 0; k < roots; ++k) idx[k] = static_cast<std::int32_t>(k);
      const auto img = colorize_basins(basin_stub(idx, std::vector<std::uint32_t>(roots, 0), roots, 10), seed);
      std::set<Rgb> colors(img.pixels.begin(), img.pixels.end());
      EXPECT_EQ(colors.size(), roots) << roots << " seed " << seed;
    }
}

TEST(Ppm, ExactBytes) {
  RgbImage white(1, 1);
  white.at(0, 0) = {255, 255, 255};
  EXPECT_EQ(ppm_bytes(white), std::string("P6\n1 1\n255\n\xff\xff\xff", 14));
  RgbImage bw(2, 1);
  bw.at(1, 0) = {255, 255, 255};
  EXPECT_EQ(ppm_bytes(bw), std::string("P6\n2 1\n255\n\x00\x00\x00\xff\xff\xff", 17));
}

TEST(Ppm, RoundTripThroughFile) {
  RgbImage img(7, 5);
  for (std::size_t k = 0; k < img.pixels.size(); ++k)
    img.pixels[k] = {static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(3 * k), static_cast<std::uint8_t>(255 - k)};
  const std::string path = std::string(DLAB_TEST_TMP) + "/roundtrip.ppm";
  write_ppm(img, path);
  const auto back = oracle::read_ppm(path);
  EXPECT_EQ(back.width, 7u);
  EXPECT_EQ(back.height, 5u);
  for (std::size_t k = 0; k < img.pixels.size(); ++k)
    for (int c = 0; c < 3; ++c) ASSERT_EQ(back.rgb[3 * k + c], img.pixels[k][c]);
  EXPECT_EQ(std::filesystem::file_size(path), std::string("P6\n7 5\n255\n").size() + 3 * 35);
}

TEST(Ppm, UnwritablePathThrows) {
  EXPECT_THROW(write_ppm(RgbImage(1, 1), "/nonexistent-dir/x.ppm"), IoError);
}

TEST(DensityCsv, NonzeroBinsOnly) {
  DensityGrid g(2, 2, unit);
  g.at(0, 0) = 2;
  g.at(1, 1) = 1;
  std::ostringstream os;
  write_density_csv(g, os);
  EXPECT_EQ(os.str(), "re,im,count\n-0.5,-0.5,2\n0.5,0.5,1\n");
}
