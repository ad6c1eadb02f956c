#include "dlab/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace dlab::raster {

namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

Rgb hsv(double hue, double saturation, double value) {
  hue = hue - std::floor(hue);
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double p = value * (1.0 - saturation);
  const double q = value * (1.0 - saturation * f);
  const double t = value * (1.0 - saturation * (1.0 - f));
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = value, g = t, b = p; break;
    case 1: r = q, g = value, b = p; break;
    case 2: r = p, g = value, b = t; break;
    case 3: r = p, g = q, b = value; break;
    case 4: r = t, g = p, b = value; break;
    default: r = value, g = p, b = q; break;
  }
  return {to_byte(r), to_byte(g), to_byte(b)};
}

std::size_t bin_index(double v, double lo, double hi, std::size_t bins) {
  const double delta = (hi - lo) / static_cast<double>(bins);
  const auto k = static_cast<std::size_t>(std::floor((v - lo) / delta));
  return std::min(k, bins - 1);
}

}  // namespace

DensityGrid::DensityGrid(std::size_t w, std::size_t h, const Window& win)
    : width(w), height(h), window(win), counts(w * h, 0) {
  if (w == 0 || h == 0) throw InvalidArgument("density grid needs at least one bin per axis");
  win.validate();
}

std::uint64_t DensityGrid::total_in_window() const {
  std::uint64_t s = 0;
  for (std::uint64_t c : counts) s += c;
  return s;
}

std::uint64_t DensityGrid::max_count() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

bool DensityGrid::bin_of(std::complex<double> z, std::size_t& ix, std::size_t& iy) const {
  const double x = z.real();
  const double y = z.imag();
  if (!(x >= window.x_min && x <= window.x_max && y >= window.y_min && y <= window.y_max)) return false;
  ix = bin_index(x, window.x_min, window.x_max, width);
  iy = bin_index(y, window.y_min, window.y_max, height);
  return true;
}

DensityGrid DensityGrid::rotated_180() const {
  DensityGrid r = *this;
  std::reverse(r.counts.begin(), r.counts.end());
  return r;
}

void accumulate(DensityGrid& grid, std::complex<double> point) {
  std::size_t ix = 0, iy = 0;
  if (grid.bin_of(point, ix, iy))
    ++grid.at(ix, iy);
  else
    ++grid.dropped;
}

void accumulate(DensityGrid& grid, std::span<const std::complex<double>> points) {
  for (const auto& z : points) accumulate(grid, z);
}

void merge(DensityGrid& into, const DensityGrid& part) {
  if (into.width != part.width || into.height != part.height || !(into.window == part.window))
    throw InvalidArgument("merging density grids of different shape");
  for (std::size_t k = 0; k < into.counts.size(); ++k) into.counts[k] += part.counts[k];
  into.dropped += part.dropped;
}

Rgb hot_ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double r = std::min(1.0, 3.0 * t);
  const double g = std::clamp(3.0 * t - 1.0, 0.0, 1.0);
  const double b = std::clamp(3.0 * t - 2.0, 0.0, 1.0);
  return {to_byte(r), to_byte(g), to_byte(b)};
}

RgbImage colorize_density(const DensityGrid& grid, DensityScheme scheme) {
  RgbImage image(grid.width, grid.height);
  const std::uint64_t max_count = grid.max_count();
  if (max_count == 0) return image;
  const double log_max = std::log1p(static_cast<double>(max_count));
  for (std::size_t iy = 0; iy < grid.height; ++iy) {
    for (std::size_t ix = 0; ix < grid.width; ++ix) {
      const std::uint64_t c = grid.at(ix, iy);
      Rgb color{0, 0, 0};
      if (c == max_count) {
        color = {255, 255, 255};
      } else if (c > 0) {
        const double t = scheme == DensityScheme::hot_log
                             ? std::log1p(static_cast<double>(c)) / log_max
                             : static_cast<double>(c) / static_cast<double>(max_count);
        color = hot_ramp(t);
      }
      image.at(ix, grid.height - 1 - iy) = color;
    }
  }
  return image;
}

RgbImage colorize_basins(const iterate::BasinImage& basins, std::uint32_t palette_seed) {
  RgbImage image(basins.width, basins.height);
  const double rotation = std::fmod(static_cast<double>(palette_seed) * 0.6180339887498949, 1.0);
  const double roots = static_cast<double>(std::max<std::size_t>(1, basins.root_count));
  const double max_iter = static_cast<double>(std::max<std::size_t>(1, basins.max_iter));
  for (std::size_t k = 0; k < basins.root_index.size(); ++k) {
    const std::int32_t r = basins.root_index[k];
    if (r < 0) continue;
    const double hue = static_cast<double>(r) / roots + rotation;
    // Floor keeps slow-converging pixels distinguishable from unconverged black.
    const double value = std::max(0.15, 1.0 - static_cast<double>(basins.iter_count[k]) / max_iter);
    image.pixels[k] = hsv(hue, 0.85, value);
  }
  return image;
}

RgbImage colorize_escape(std::span<const std::uint32_t> counts, std::size_t width, std::size_t height,
                         std::uint32_t max_iter) {
  if (counts.size() != width * height) throw InvalidArgument("escape grid size mismatch");
  RgbImage image(width, height);
  const double log_max = std::log1p(static_cast<double>(std::max<std::uint32_t>(1, max_iter)));
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] >= max_iter) continue;
    image.pixels[k] = hot_ramp(std::log1p(static_cast<double>(counts[k])) / log_max);
  }
  return image;
}

void write_ppm(const RgbImage& image, std::ostream& out) {
  if (image.pixels.size() != image.width * image.height) throw InvalidArgument("image pixel count mismatch");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size() * 3));
  if (!out) throw IoError("failed writing PPM stream");
}

void write_ppm(const RgbImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_ppm(image, out);
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string ppm_bytes(const RgbImage& image) {
  std::ostringstream os(std::ios::binary);
  write_ppm(image, os);
  return os.str();
}

void write_density_csv(const DensityGrid& grid, std::ostream& out) {
  const double dx = grid.window.width() / static_cast<double>(grid.width);
  const double dy = grid.window.height() / static_cast<double>(grid.height);
  out << "re,im,count\n";
  for (std::size_t iy = 0; iy < grid.height; ++iy)
    for (std::size_t ix = 0; ix < grid.width; ++ix)
      if (const std::uint64_t c = grid.at(ix, iy); c > 0)
        out << grid.window.x_min + (static_cast<double>(ix) + 0.5) * dx << ','
            << grid.window.y_min + (static_cast<double>(iy) + 0.5) * dy << ',' << c << '\n';
}

}  // namespace dlab::raster
