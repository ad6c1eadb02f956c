#include "dlab/iterate.hpp"

#include <cmath>
#include <limits>

#include "dlab/parallel.hpp"

namespace dlab::iterate {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::optional<Complex> checked(Complex z) {
  if (!finite(z)) return std::nullopt;
  return z;
}

std::optional<std::size_t> nearest_within(Complex z, std::span<const Complex> roots, double tol) {
  std::optional<std::size_t> best;
  double best_dist = tol;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double d = std::abs(z - roots[i]);
    if (d <= best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(IterationKind kind) {
  switch (kind) {
    case IterationKind::newton: return "newton";
    case IterationKind::halley: return "halley";
    case IterationKind::householder: return "householder";
    case IterationKind::schroeder: return "schroeder";
    case IterationKind::secant: return "secant";
  }
  return "unknown";
}

IterationKind parse_iteration_kind(std::string_view name) {
  for (IterationKind k : {IterationKind::newton, IterationKind::halley, IterationKind::householder,
                          IterationKind::schroeder, IterationKind::secant})
    if (name == to_string(k)) return k;
  throw InvalidArgument("unknown iteration kind '" + std::string(name) + "'");
}

Complex IterationMethod::secant_start(Complex z0) const {
  if (secant_offset) {
    if (*secant_offset == 0.0) throw InvalidArgument("secant offset must be nonzero");
    return z0 + *secant_offset;
  }
  return z0 + 1e-3 * (1.0 + std::abs(z0));
}

Evaluator polynomial_evaluator(const poly::ComplexPolynomial& p) {
  return [p](Complex z) { return poly::eval_derivs(p, z, 2); };
}

std::optional<Complex> step(IterationKind kind, const Evaluator& f, Complex z, Complex previous) {
  const poly::Derivatives d = f(z);
  const Complex zero{};
  switch (kind) {
    case IterationKind::newton: {
      if (d.d1 == zero) return std::nullopt;
      return checked(z - d.value / d.d1);
    }
    case IterationKind::halley: {
      const Complex denom = 2.0 * d.d1 * d.d1 - d.value * d.d2;
      if (denom == zero) return std::nullopt;
      return checked(z - 2.0 * d.value * d.d1 / denom);
    }
    case IterationKind::householder: {
      if (d.d1 == zero) return std::nullopt;
      const Complex ratio = d.value / d.d1;
      return checked(z - ratio * (1.0 + d.value * d.d2 / (2.0 * d.d1 * d.d1)));
    }
    case IterationKind::schroeder: {
      const Complex denom = d.d1 * d.d1 - d.value * d.d2;
      if (denom == zero) return std::nullopt;
      return checked(z - d.value * d.d1 / denom);
    }
    case IterationKind::secant: {
      const Complex f_prev = f(previous).value;
      const Complex df = d.value - f_prev;
      if (df == zero) {
        // Both points are already roots or coincide on a level set.
        if (d.value == zero) return z;
        return std::nullopt;
      }
      return checked(z - d.value * (z - previous) / df);
    }
  }
  return std::nullopt;
}

IterationOutcome iterate_to_root(const IterationMethod& method, const Evaluator& f, Complex z0,
                                 std::span<const Complex> roots, double tol, std::size_t max_iter) {
  if (auto hit = nearest_within(z0, roots, tol)) return {hit, 0};
  Complex z = z0;
  Complex previous = method.kind == IterationKind::secant ? method.secant_start(z0) : Complex{};
  for (std::size_t n = 1; n <= max_iter; ++n) {
    const std::optional<Complex> next = step(method.kind, f, z, previous);
    if (!next) return {std::nullopt, n};
    previous = z;
    z = *next;
    if (auto hit = nearest_within(z, roots, tol)) return {hit, n};
  }
  return {std::nullopt, max_iter};
}

double BasinImage::converged_fraction() const {
  if (root_index.empty()) return 0.0;
  std::size_t converged = 0;
  for (std::int32_t r : root_index) converged += r >= 0 ? 1 : 0;
  return static_cast<double>(converged) / static_cast<double>(root_index.size());
}

std::vector<Complex> classification_roots(const poly::ComplexPolynomial& p) {
  poly::RootSet found = poly::aberth_roots(p, 1e-14, 1000);
  std::vector<Complex> roots;
  roots.reserve(found.roots.size());
  for (const Complex& r : found.roots) roots.push_back(poly::polish_root(p, r).root);
  // A multiple root shows up as a cluster; classify against one representative.
  std::vector<Complex> distinct;
  for (const auto& cluster : poly::cluster_roots(roots, 1e-6)) {
    Complex mean{};
    for (std::size_t i : cluster) mean += roots[i];
    distinct.push_back(mean / static_cast<double>(cluster.size()));
  }
  return distinct;
}

BasinImage render_basins(const poly::ComplexPolynomial& p, const IterationMethod& method, const Window& window,
                         std::size_t width, std::size_t height, const BasinOptions& options) {
  window.validate();
  if (p.degree() < 1) throw InvalidArgument("render_basins requires a nonconstant polynomial");
  if (width == 0 || height == 0) throw InvalidArgument("render_basins requires a nonempty raster");
  if (!(options.tol > 0)) throw InvalidArgument("render_basins requires tol > 0");

  BasinImage image;
  image.width = width;
  image.height = height;
  image.window = window;
  image.max_iter = options.max_iter;
  image.roots = classification_roots(p);
  image.root_count = image.roots.size();
  image.root_index.assign(width * height, -1);
  image.iter_count.assign(width * height, 0);

  const Evaluator f = polynomial_evaluator(p);
  parallel_for_ranges(width * height, options.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) {
      const Complex z0 = window.pixel_center(k % width, k / width, width, height);
      const IterationOutcome out = iterate_to_root(method, f, z0, image.roots, options.tol, options.max_iter);
      image.root_index[k] = out.root_index ? static_cast<std::int32_t>(*out.root_index) : -1;
      image.iter_count[k] = static_cast<std::uint32_t>(out.iterations);
    }
  });
  return image;
}

HalleyComparison halley_equivalence_check(const poly::ComplexPolynomial& p, Complex z) {
  const poly::Derivatives d = poly::eval_derivs(p, z, 2);
  const Complex zero{};
  if (d.d1 == zero) throw DivisionByZero("halley_equivalence_check: f'(z) = 0");
  const Complex denom = 2.0 * d.d1 * d.d1 - d.value * d.d2;
  if (denom == zero) throw DivisionByZero("halley_equivalence_check: Halley denominator vanishes");
  const Complex halley = z - 2.0 * d.value * d.d1 / denom;
  if (d.value == zero) return {halley, z};
  // g = f / sqrt(f') has logarithmic derivative f'/f - f''/(2 f').
  const Complex log_derivative = d.d1 / d.value - d.d2 / (2.0 * d.d1);
  if (log_derivative == zero) throw DivisionByZero("halley_equivalence_check: g'(z) = 0");
  return {halley, z - 1.0 / log_derivative};
}

}  // namespace dlab::iterate
