#pragma once

#include <complex>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

// Axis-aligned rectangle in the complex plane.
struct Window {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool valid() const { return x_max > x_min && y_max > y_min; }

  // Throws InvalidArgument for a degenerate or inverted window.
  void validate() const {
    if (!valid())
      throw InvalidArgument("window must span positive area (x_min < x_max, y_min < y_max)");
  }

  // Center of pixel (i, j) of a w-by-h raster; row 0 is the top (largest
  // imaginary part).
  std::complex<double> pixel_center(std::size_t i, std::size_t j, std::size_t w, std::size_t h) const {
    const double dx = width() / static_cast<double>(w);
    const double dy = height() / static_cast<double>(h);
    return {x_min + (static_cast<double>(i) + 0.5) * dx, y_max - (static_cast<double>(j) + 0.5) * dy};
  }

  friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace dlab
