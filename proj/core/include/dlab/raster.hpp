#pragma once

// 2-D histograms over the complex plane, colormaps and PPM output.

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dlab/iterate.hpp"
#include "dlab/window.hpp"

namespace dlab::raster {

using Rgb = std::array<std::uint8_t, 3>;

// counts are row-major with row 0 at y_min; bin (ix, iy) covers
// [x_min + ix dx, x_min + (ix+1) dx) x [y_min + iy dy, y_min + (iy+1) dy),
// except that the last bin in each direction also owns its upper edge.
struct DensityGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  Window window;
  std::vector<std::uint64_t> counts;
  std::uint64_t dropped = 0;

  DensityGrid() = default;
  // Throws InvalidArgument for zero bins or an invalid window.
  DensityGrid(std::size_t width, std::size_t height, const Window& window);

  std::uint64_t& at(std::size_t ix, std::size_t iy) { return counts[iy * width + ix]; }
  std::uint64_t at(std::size_t ix, std::size_t iy) const { return counts[iy * width + ix]; }

  std::uint64_t total_in_window() const;
  std::uint64_t max_count() const;

  // Bin index of a point, or false when it lies outside the window.
  bool bin_of(std::complex<double> z, std::size_t& ix, std::size_t& iy) const;

  // The grid rotated by 180 degrees about the window center.
  DensityGrid rotated_180() const;

  friend bool operator==(const DensityGrid&, const DensityGrid&) = default;
};

void accumulate(DensityGrid& grid, std::span<const std::complex<double>> points);
void accumulate(DensityGrid& grid, std::complex<double> point);

// Adds counts and dropped of `part` into `into`; shapes must match.
void merge(DensityGrid& into, const DensityGrid& part);

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;  // row-major, top row first

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, Rgb{0, 0, 0}) {}

  Rgb& at(std::size_t i, std::size_t j) { return pixels[j * width + i]; }
  const Rgb& at(std::size_t i, std::size_t j) const { return pixels[j * width + i]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

enum class DensityScheme { hot_log, hot_linear };

// Black -> red -> yellow -> white ramp for t in [0, 1].
Rgb hot_ramp(double t);

// Intensity log(1 + c) / log(1 + max) (or c / max for hot_linear) through
// hot_ramp. Image row 0 is the top of the window.
RgbImage colorize_density(const DensityGrid& grid, DensityScheme scheme = DensityScheme::hot_log);

// Hue from root index (evenly spaced, rotated by the seed), brightness
// falling with iteration count; unconverged pixels are black.
RgbImage colorize_basins(const iterate::BasinImage& basins, std::uint32_t palette_seed = 0);

// Escape-time counts: points that never escaped (count == max_iter) are
// black, the rest follow hot_ramp on a log scale.
RgbImage colorize_escape(std::span<const std::uint32_t> counts, std::size_t width, std::size_t height,
                         std::uint32_t max_iter);

// Binary PPM: "P6\n<w> <h>\n255\n" followed by 3 w h bytes.
void write_ppm(const RgbImage& image, std::ostream& out);
void write_ppm(const RgbImage& image, const std::filesystem::path& path);
std::string ppm_bytes(const RgbImage& image);

// "re,im,count" per nonzero bin, bin centers, bottom row first.
void write_density_csv(const DensityGrid& grid, std::ostream& out);

}  // namespace dlab::raster
