// One PASS/FAIL line per acceptance criterion, with runtimes against their
// budgets. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "dlab/bohemian.hpp"
#include "dlab/exact.hpp"
#include "dlab/iterate.hpp"
#include "dlab/mandelbrot.hpp"
#include "dlab/raster.hpp"
#include "oracles.hpp"

using namespace dlab;
using exact::BigInt;
using exact::Rational;
using Complex = std::complex<double>;

namespace {

// FNV-1a of the 400x400 basin PPM, frozen from the first verified run.
constexpr std::uint64_t basins_golden = 0x639b4f704f94585full;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

unsigned worker_count() { return std::clamp(std::thread::hardware_concurrency(), 1u, 8u); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Rational q(const char* s) { return Rational::parse(s); }

double nearest(const std::vector<Complex>& set, Complex z) {
  double best = INFINITY;
  for (const auto& w : set) best = std::min(best, std::abs(w - z));
  return best;
}

Outcome sqrt_sequence() {
  Outcome o;
  const auto seq = exact::newton_sqrt_sequence(2, Rational(1), 4);
  const std::vector<Rational> want{q("1"), q("3/2"), q("17/12"), q("577/408"), q("665857/470832")};
  const std::vector<Rational> squares{q("1"), q("9/4"), q("289/144"), q("332929/166464"),
                                      q("443365544449/221682772224")};
  o.require(seq == want, "sequence 1, 3/2, 17/12, 577/408, 665857/470832");
  bool sq = seq.size() == squares.size();
  for (std::size_t k = 0; sq && k < seq.size(); ++k) sq = seq[k] * seq[k] == squares[k];
  o.require(sq, "squares");
  return o;
}

Outcome continued_fractions() {
  Outcome o;
  const auto seq = exact::newton_sqrt_sequence(2, Rational(1), 10);
  for (unsigned k = 1; k <= 10; ++k) {
    std::vector<BigInt> terms{BigInt(1)};
    terms.resize((std::size_t{1} << k), BigInt(2));
    o.require(exact::to_continued_fraction(seq[k]) == exact::ContinuedFraction(terms),
              "k=" + std::to_string(k));
  }
  o.note("x_10 has " + std::to_string(seq[10].den().get_str().size()) + "-digit denominator");
  return o;
}

Outcome closed_form() {
  Outcome o;
  int cases = 0, failures = 0;
  for (long a = 1; a <= 5; ++a)
    for (long b = 1; b <= 5; ++b)
      for (long m : {2, 3, 5, 6, 7}) {
        const auto seq = exact::newton_sqrt_sequence(m, Rational(BigInt(a), BigInt(b)), 8);
        for (unsigned n = 0; n <= 8; ++n, ++cases)
          if (exact::closed_form_iterate(a, b, m, n) != seq[n]) ++failures;
      }
  o.require(failures == 0, std::to_string(failures) + " mismatches");
  o.note(std::to_string(cases) + " cases, " + std::to_string(failures) + " failures");
  return o;
}

Outcome determinants() {
  using dlab::GaussianRational;
  Outcome o;
  const auto pop = bohemian::Population::parse("-1,0,1");
  std::uint64_t assignments = 0, comparisons = 0, failures = 0;
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto fam = bohemian::BohemianFamily::hessenberg_toeplitz(m);
    const bohemian::Enumerator en(fam, pop);
    for (std::uint64_t k = 0; k < en.size(); ++k, ++assignments) {
      const auto a = bohemian::build_exact_matrix(fam, pop, en.assignment(k));
      std::vector<std::vector<GaussianRational>> rows(m, std::vector<GaussianRational>(m));
      std::vector<GaussianRational> t(m);
      for (std::size_t i = 0; i < m; ++i) {
        t[i] = a(0, i);
        for (std::size_t j = 0; j < m; ++j) rows[i][j] = a(i, j);
      }
      const GaussianRational truth = oracle::cofactor_det(rows);
      // recurrence, exact elimination, and the charpoly's constant term
      failures += bohemian::det_hessenberg_toeplitz<GaussianRational>(t) != truth;
      failures += bohemian::exact_determinant(a) != truth;
      failures += bohemian::charpoly_hessenberg_toeplitz(t).coeff(0) != truth;
      comparisons += 3;
    }
  }
  o.require(failures == 0, std::to_string(failures) + " determinant mismatches");
  o.require(assignments == 1092 && comparisons == 3276, "case count");
  o.note(std::to_string(assignments) + " assignments, " + std::to_string(comparisons) + " comparisons");

  using oracle::MPoly;
  std::vector<MPoly> t;
  for (int k = 1; k <= 5; ++k) t.push_back(MPoly::var(k));
  auto det = [&](std::size_t m) { return bohemian::det_hessenberg_toeplitz<MPoly>(std::span(t).first(m)); };
  // t1^3 + 2 t1 t2 + t3, and so on.
  o.require(det(3) == MPoly::monomial(1, {3}) + MPoly::monomial(2, {1, 1}) + MPoly::monomial(1, {0, 0, 1}), "m=3");
  o.require(det(4) == MPoly::monomial(1, {4}) + MPoly::monomial(3, {2, 1}) + MPoly::monomial(2, {1, 0, 1}) +
                          MPoly::monomial(1, {0, 2}) + MPoly::monomial(1, {0, 0, 0, 1}),
            "m=4");
  o.require(det(5) == MPoly::monomial(1, {5}) + MPoly::monomial(4, {3, 1}) + MPoly::monomial(3, {2, 0, 1}) +
                          MPoly::monomial(3, {1, 2}) + MPoly::monomial(2, {1, 0, 0, 1}) +
                          MPoly::monomial(2, {0, 1, 1}) + MPoly::monomial(1, {0, 0, 0, 0, 1}),
            "m=5");
  o.note("symbolic m=3,4,5 checked");
  return o;
}

Outcome dimension_two() {
  Outcome o;
  const auto s = bohemian::family_statistics(bohemian::BohemianFamily::hessenberg_toeplitz(2),
                                             bohemian::Population::parse("-1,0,1"));
  o.require(s.matrix_count == 9, "matrix_count");
  o.require(s.distinct_charpoly_count == 9, "distinct_charpoly_count");
  o.require(s.singular_count == 3, "singular_count");
  o.require(s.multiple_eigenvalue_matrix_count == 3, "multiple-eigenvalue count");
  o.note("9/9/" + std::to_string(s.singular_count) + "/" + std::to_string(s.multiple_eigenvalue_matrix_count));
  return o;
}

// Eigenvalues of -A are those of A: match each lambda with an unused -mu.
bool negation_symmetric(std::span<const Complex> eig, double tol) {
  std::vector<char> used(eig.size(), 0);
  for (std::size_t i = 0; i < eig.size(); ++i) {
    std::size_t best = eig.size();
    double d = INFINITY;
    for (std::size_t j = 0; j < eig.size(); ++j)
      if (!used[j] && std::abs(eig[i] + eig[j]) < d) d = std::abs(eig[i] + eig[j]), best = j;
    if (d > tol) return false;
    used[best] = 1;
  }
  return true;
}

Outcome skew_density() {
  Outcome o;
  const auto fam = bohemian::BohemianFamily::skew_pentadiagonal(10);
  const auto pop = bohemian::Population::parse("1,i");
  const Window window{-3.25, 3.25, -3.25, 3.25};
  bohemian::SpectrumOptions opts;
  opts.threads = worker_count();

  const auto grid = bohemian::density_plot(fam, pop, window, 1024, 1024, opts);
  const std::uint64_t total = grid.total_in_window() + grid.dropped;
  o.require(total == 1'310'720, "eigenvalue count " + std::to_string(total));

  // Second pass: a 1% sample for the per-matrix invariants, and every
  // eigenvalue close enough to a bin edge that rounding could move it.
  const bohemian::Enumerator en(fam, pop);
  std::vector<char> sampled(en.size(), 0);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::uint64_t> pick(0, en.size() - 1);
  for (std::uint64_t k = 0; k < en.size() / 100; ++k) sampled[pick(rng)] = 1;
  const double bin = window.width() / 1024.0;
  const double edge_tol = 1e-6;
  std::vector<std::uint64_t> near_edge(opts.threads, 0), bad_trace(opts.threads, 0), bad_neg(opts.threads, 0),
      bad_det(opts.threads, 0), checked(opts.threads, 0);
  std::vector<raster::DensityGrid> clean(opts.threads, raster::DensityGrid(1024, 1024, window));
  bohemian::for_each_spectrum(
      fam, pop, opts,
      [&](std::uint64_t index, const bohemian::ComplexMatrix& a, std::span<const Complex> eig, std::size_t w) {
        for (const Complex& z : eig) {
          const auto close = [&](double v, double lo) {
            const double f = (v - lo) / bin;
            return std::abs(f - std::round(f)) * bin < edge_tol;
          };
          if (close(z.real(), window.x_min) || close(z.imag(), window.y_min))
            ++near_edge[w];
          else
            raster::accumulate(clean[w], z);
        }
        if (!sampled[index]) return;
        ++checked[w];
        Complex trace{}, sum{};
        for (std::size_t i = 0; i < a.n; ++i) trace += a(i, i);
        for (const Complex& z : eig) sum += z;
        if (std::abs(sum - trace) > 1e-8 * linalg::frobenius_norm(a)) ++bad_trace[w];
        if (!negation_symmetric(eig, 1e-6)) ++bad_neg[w];
        const auto det = bohemian::exact_determinant(bohemian::build_exact_matrix(fam, pop, en.assignment(index)));
        if (!det.is_zero()) {
          Complex prod = 1;
          for (const Complex& z : eig) prod *= z;
          const Complex want = det.to_complex();
          if (std::abs(prod - want) > 1e-6 * std::abs(want)) ++bad_det[w];
        }
      });
  auto sum = [](const std::vector<std::uint64_t>& v) { return std::accumulate(v.begin(), v.end(), std::uint64_t{0}); };
  o.require(sum(bad_trace) == 0, std::to_string(sum(bad_trace)) + " trace violations");
  o.require(sum(bad_neg) == 0, std::to_string(sum(bad_neg)) + " negation violations");
  o.require(sum(bad_det) == 0, std::to_string(sum(bad_det)) + " det violations");

  for (std::size_t w = 1; w < clean.size(); ++w) raster::merge(clean[0], clean[w]);
  o.require(clean[0] == clean[0].rotated_180(), "grid without edge-ambiguous eigenvalues equals its rotation");
  const auto rot = grid.rotated_180();
  std::uint64_t l1 = 0, differing = 0;
  for (std::size_t k = 0; k < grid.counts.size(); ++k) {
    const auto d = grid.counts[k] > rot.counts[k] ? grid.counts[k] - rot.counts[k] : rot.counts[k] - grid.counts[k];
    l1 += d;
    differing += d != 0;
  }
  // Moving one eigenvalue to a neighbouring bin changes the grid-minus-
  // rotation difference in at most four cells.
  const std::uint64_t ambiguous = sum(near_edge);
  o.require(l1 <= 4 * ambiguous, "rotation L1 " + std::to_string(l1) + " > 4 * " + std::to_string(ambiguous));
  o.note("in=" + std::to_string(grid.total_in_window()) + " dropped=" + std::to_string(grid.dropped) +
         " sample=" + std::to_string(sum(checked)) + " clean grid symmetric, full-grid rotation L1=" + std::to_string(l1) + " over " +
         std::to_string(differing) + " bins, edge-ambiguous eigenvalues=" + std::to_string(ambiguous) +
         " threads=" + std::to_string(opts.threads));
  return o;
}

Outcome degree8_basins(double& seconds) {
  Outcome o;
  const poly::ComplexPolynomial p({0, 1, 1, 2, 4, 5, 5, 3, 1});
  const Window window{-1.8, 1.0, -1.4, 1.4};
  const auto t0 = std::chrono::steady_clock::now();
  const auto basins = iterate::render_basins(p, {}, window, 400, 400);
  const std::string bytes = raster::ppm_bytes(raster::colorize_basins(basins));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  o.require(basins.roots.size() == 8, "8 roots");
  o.require(nearest(basins.roots, 0.0) <= 1e-8, "root 0");
  o.require(nearest(basins.roots, -1.0) <= 1e-8, "root -1");
  std::vector<char> seen(basins.roots.size(), 0);
  for (auto r : basins.root_index)
    if (r >= 0) seen[r] = 1;
  o.require(std::all_of(seen.begin(), seen.end(), [](char c) { return c; }), "every root has a basin");
  const double conv = basins.converged_fraction();
  o.require(conv >= 0.99, "converged fraction " + fmt("%.4f", conv));

  iterate::BasinOptions many;
  many.threads = worker_count();
  const std::string again = raster::ppm_bytes(raster::colorize_basins(iterate::render_basins(p, {}, window, 400, 400, many)));
  o.require(again == bytes, "PPM identical across runs and thread counts");
  const std::uint64_t hash = oracle::fnv1a(bytes);
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  o.require(hash == basins_golden, std::string("golden hash, got ") + hex);
  o.require(seconds < 10.0, "runtime");

  std::ofstream(DLAB_ACCEPTANCE_DIR "/basins_degree8.ppm", std::ios::binary) << bytes;
  o.note("converged=" + fmt("%.4f", conv) + " hash=" + hex);
  return o;
}

Outcome halley() {
  Outcome o;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> u(-1, 1);
  int failures = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<Complex> c(3 + t % 9);
    for (auto& x : c) x = {u(rng), u(rng)};
    const Complex z{2 * u(rng), 2 * u(rng)};
    const auto r = iterate::halley_equivalence_check(poly::ComplexPolynomial(c), z);
    const double scale = std::max({std::abs(z), std::abs(r.halley - z), 1e-300});
    const double rel = std::abs(r.halley - r.newton_on_g) / scale;
    worst = std::max(worst, rel);
    failures += rel > 1e-12;
  }
  o.require(failures == 0, std::to_string(failures) + " of 100");
  o.note("worst relative error " + fmt("%.2e", worst));
  return o;
}

Outcome mandelbrot_coefficients() {
  Outcome o;
  o.require(mandelbrot::coefficients(3) == std::vector<BigInt>{0, 1, 1, 2, 1}, "coefficients(3)");
  BigInt b = 0;
  for (unsigned n = 0; n <= 10; ++n) {
    o.require(mandelbrot::condition_number_exact(n, Rational(1)) == Rational(b), "B_" + std::to_string(n) + "(1)");
    b = b * b + 1;
  }
  std::string peaks;
  for (unsigned n = 1; n <= 12; ++n) {
    const auto r = mandelbrot::unimodality_check(n);
    o.require(r.unimodal, "unimodal n=" + std::to_string(n));
    if (r.peak_count > 1) peaks += " n=" + std::to_string(n) + ":" + std::to_string(r.peak_count);
  }
  o.note("B_10(1) has " + std::to_string(mandelbrot::condition_number_exact(10, Rational(1)).num().get_str().size()) +
         " digits" + (peaks.empty() ? "" : "; tied maxima at" + peaks));
  return o;
}

Outcome z11_zeros() {
  Outcome o;
  mandelbrot::ZeroOptions opts;
  opts.threads = worker_count();
  const auto z = mandelbrot::zeros(11, opts);
  o.require(z.roots.size() == 1024, "1024 zeros, got " + std::to_string(z.roots.size()));
  o.require(z.max_residual() <= 1e-8, "residual " + fmt("%.2e", z.max_residual()));
  double radius = 0, asym = 0;
  for (const auto& r : z.roots) {
    radius = std::max(radius, std::abs(r));
    asym = std::max(asym, nearest(z.roots, std::conj(r)));
  }
  o.require(radius <= 2.0, "|c| <= 2");
  o.require(asym <= 1e-8, "conjugate symmetry");
  o.require(nearest(z.roots, 0.0) <= 1e-8, "contains 0");
  std::ofstream csv(DLAB_ACCEPTANCE_DIR "/zeros_z11.csv");
  csv << "re,im\n";
  csv.precision(17);
  for (const auto& r : z.roots) csv << r.real() << ',' << r.imag() << '\n';
  o.require(static_cast<bool>(csv), "CSV written");
  o.note("max residual " + fmt("%.2e", z.max_residual()) + ", max |c| " + fmt("%.6f", radius) +
         ", conjugate mismatch " + fmt("%.1e", asym));
  return o;
}

Outcome escape() {
  Outcome o;
  // Independent orbit check that c = 0 and c = -1 stay bounded.
  for (double c : {0.0, -1.0}) {
    Complex w{};
    bool bounded = true;
    for (int k = 0; k < 500; ++k) bounded = bounded && std::abs(w = w * w + c) <= 2.0;
    o.require(bounded && mandelbrot::escape_time(c, 500) == 500, "c=" + fmt("%g", c) + " does not escape");
  }
  const auto e = mandelbrot::escape_time(1.0, 500);
  o.require(e <= 5, "c=1 escapes within 5");
  o.note("c=1 escapes at iteration " + std::to_string(e));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome(double&)> run;
  };
  auto timed = [](Outcome (*f)()) { return [f](double&) { return f(); }; };
  double basin_seconds = 0;
  const std::vector<Criterion> all{
      {1, "exact Newton sequence for sqrt(2)", 1, timed(sqrt_sequence)},
      {2, "continued fractions k=1..10", 5, timed(continued_fractions)},
      {3, "closed-form iterate over the grid", 0, timed(closed_form)},
      {4, "determinant recurrence vs cofactor expansion", 10, timed(determinants)},
      {5, "dimension-2 family statistics", 0, timed(dimension_two)},
      {6, "skew-pentadiagonal 10x10 density plot", 300, timed(skew_density)},
      {7, "Newton basins of the degree-8 polynomial", 10, [&](double&) { return degree8_basins(basin_seconds); }},
      {8, "Halley step as Newton on f/sqrt(f')", 0, timed(halley)},
      {9, "Mandelbrot coefficients, condition, unimodality", 60, timed(mandelbrot_coefficients)},
      {10, "zeros of z_11", 120, timed(z11_zeros)},
      {11, "escape-time spot checks", 0, timed(escape)},
  };
  int failed = 0;
  for (const auto& c : all) {
    double unused = 0;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.run(unused);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && s > c.budget && c.id != 7) o.require(false, "runtime over budget");
    std::string time = fmt("%.2fs", s);
    if (c.budget > 0) time += fmt(" (budget %gs)", c.budget);
    if (c.id == 7) time += fmt(", single-thread render %.2fs", basin_seconds);
    std::printf("%s criterion %d: %s [%s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, time.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
