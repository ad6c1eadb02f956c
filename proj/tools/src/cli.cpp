#include "dlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlab/bohemian.hpp"
#include "dlab/mandelbrot.hpp"
#include "dlab/oeis.hpp"
#include "dlab/parallel.hpp"
#include "dlab/polyroot.hpp"
#include "dlab/raster.hpp"

namespace dlab::cli {

namespace {

constexpr const char* exit_code_text =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error\n"
    "  3  invalid input (bad value, division by zero)\n"
    "  4  iteration did not converge\n"
    "  5  file I/O error\n"
    "  6  network or OEIS response error\n"
    "  7  size or cost cap exceeded\n";

// Results that exceed this many eigenvalues need --force-csv.
constexpr std::uint64_t csv_eigenvalue_limit = 2'000'000;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_stdout(const OutputPath& p) { return !p || *p == "-"; }

// Opens `path` for writing, or hands back `fallback` for stdout.
class Sink {
 public:
  Sink(const OutputPath& path, std::ostream& fallback) {
    if (is_stdout(path)) {
      stream_ = &fallback;
      return;
    }
    file_.open(*path, std::ios::binary);
    if (!file_) throw IoError("cannot open '" + *path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }
  void close(const OutputPath& path) {
    stream_->flush();
    if (!*stream_) throw IoError("write failed for '" + path.value_or("-") + "'");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

// Summary goes to `out`, unless an artifact already claims stdout.
std::ostream& summary_stream(bool artifact_on_stdout, std::ostream& out, std::ostream& err) {
  return artifact_on_stdout ? err : out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_complex(std::complex<double> z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << ',' << z.imag();
  return os.str();
}

void check_positive(double v, const std::string& flag) {
  if (!(v > 0)) throw UsageError(flag + " must be positive");
}

void check_positive(std::uint64_t v, const std::string& flag) {
  if (v == 0) throw UsageError(flag + " must be positive");
}

// Wraps a parser so that its InvalidArgument surfaces as a usage error.
template <typename F>
auto flag_value(const std::string& flag, F&& parse) {
  try {
    return parse();
  } catch (const InvalidArgument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

// ---------------------------------------------------------------- run

int run_sqrt_demo(const SqrtDemoConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto seq = exact::newton_sqrt_sequence(c.m, c.x0, c.n);
  Sink sink(c.out, out);
  *sink << "k,x,x_squared,residual,continued_fraction\n";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto& x = seq[k];
    *sink << k << ',' << x.to_fraction_string() << ',' << (x * x).to_fraction_string() << ','
          << exact::residual(x, c.m).to_fraction_string() << ",\"";
    if (x.sign() > 0) *sink << exact::to_continued_fraction(x).to_string();
    *sink << "\"\n";
  }
  sink.close(c.out);
  summary_stream(is_stdout(c.out), out, err)
      << "sqrt-demo m=" << c.m.get_str() << " iterates=" << seq.size()
      << " final_residual_den_digits=" << exact::residual(seq.back(), c.m).den().get_str().size()
      << " seconds=" << seconds_since(t0) << '\n';
  return exit_ok;
}

int run_fractal(const FractalConfig& c, unsigned threads, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const poly::ComplexPolynomial p(c.coeffs);
  iterate::BasinOptions opts;
  opts.tol = c.tol;
  opts.max_iter = c.max_iter;
  opts.threads = threads;
  const auto basins = iterate::render_basins(p, c.method, c.window, c.width, c.height, opts);
  raster::write_ppm(raster::colorize_basins(basins, c.palette_seed), c.out);

  const std::string csv_path = c.roots_csv.empty() ? c.out + ".roots.csv" : c.roots_csv;
  Sink sink(csv_path, out);
  *sink << "index,re,im\n";
  for (std::size_t k = 0; k < basins.roots.size(); ++k) *sink << k << ',' << fmt_complex(basins.roots[k]) << '\n';
  sink.close(csv_path);

  out << "fractal kind=" << iterate::to_string(c.method.kind) << " size=" << c.width << 'x' << c.height
      << " roots=" << basins.roots.size() << " converged=" << std::setprecision(6)
      << basins.converged_fraction() << " out=" << c.out << " seconds=" << seconds_since(t0) << '\n';
  return exit_ok;
}

int run_roots(const RootsConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const poly::ComplexPolynomial p(c.coeffs);
  const auto rs = poly::aberth_roots(p, c.tol, c.max_iter);
  Sink sink(c.out, out);
  *sink << "re,im,residual\n" << std::setprecision(17);
  for (std::size_t k = 0; k < rs.roots.size(); ++k)
    *sink << fmt_complex(rs.roots[k]) << ',' << rs.residuals[k] << '\n';
  sink.close(c.out);
  summary_stream(is_stdout(c.out), out, err)
      << "roots degree=" << p.degree() << " iterations=" << rs.iterations << " max_residual=" << std::setprecision(3)
      << rs.max_residual() << " seconds=" << seconds_since(t0) << '\n';
  return exit_ok;
}

bohemian::BohemianFamily make_family(const BohemianConfig& c) {
  using F = BohemianConfig::Family;
  switch (c.family) {
    case F::toeplitz:
      return bohemian::BohemianFamily::hessenberg_toeplitz(c.dim);
    case F::skewpenta:
      return bohemian::BohemianFamily::skew_pentadiagonal(c.dim);
    case F::custom: {
      std::ifstream in(c.pattern_file);
      if (!in) throw IoError("cannot read pattern file '" + c.pattern_file + "'");
      std::ostringstream text;
      text << in.rdbuf();
      return bohemian::BohemianFamily::parse_pattern(text.str());
    }
  }
  throw InvalidArgument("unknown family");
}

int run_bohemian(const BohemianConfig& c, unsigned threads, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto family = make_family(c);
  const auto population = bohemian::Population::parse(c.population);
  const exact::BigInt size = bohemian::family_size(family, population);
  bool on_stdout = false;
  std::ostringstream summary;
  summary << "bohemian family=" << family.name() << " population=" << population.to_string()
          << " matrices=" << size.get_str();

  if (c.stats) {
    const auto stats = c.stats_sample ? bohemian::family_statistics_sampled(family, population, c.stats_sample, c.seed)
                                      : bohemian::family_statistics(family, population);
    Sink sink(c.stats, out);
    *sink << bohemian::format_statistics(stats);
    sink.close(c.stats);
    on_stdout |= is_stdout(c.stats);
    summary << " distinct_charpolys=" << stats.distinct_charpoly_count << " singular=" << stats.singular_count;
  }

  bohemian::SpectrumOptions sopts;
  sopts.threads = threads;
  if (c.out) {
    const auto grid = bohemian::density_plot(family, population, c.window, c.bins_w, c.bins_h, sopts);
    const auto image = raster::colorize_density(grid);
    if (is_stdout(c.out)) {
      raster::write_ppm(image, out);
      on_stdout = true;
    } else {
      raster::write_ppm(image, *c.out);
    }
    summary << " eigenvalues_in=" << grid.total_in_window() << " dropped=" << grid.dropped
            << " max_bin=" << grid.max_count();
  }

  if (c.csv) {
    const bohemian::Enumerator en(family, population);
    const std::uint64_t n = family.dimension();
    if (!c.force_csv && en.size() * n > csv_eigenvalue_limit)
      throw CapExceeded("eigenvalue CSV would hold " + std::to_string(en.size() * n) + " rows (limit " +
                        std::to_string(csv_eigenvalue_limit) + "); pass --force-csv to write it anyway");
    // Filled by index so the file does not depend on the thread count.
    std::vector<bohemian::Complex> eigs(en.size() * n);
    bohemian::for_each_spectrum(family, population, sopts,
                                [&](std::uint64_t index, const bohemian::ComplexMatrix&,
                                    std::span<const bohemian::Complex> values, std::size_t) {
                                  std::copy(values.begin(), values.end(), eigs.begin() + index * n);
                                });
    Sink sink(c.csv, out);
    *sink << "matrix,re,im\n";
    for (std::uint64_t k = 0; k < eigs.size(); ++k) *sink << k / n << ',' << fmt_complex(eigs[k]) << '\n';
    sink.close(c.csv);
    on_stdout |= is_stdout(c.csv);
    summary << " csv_rows=" << eigs.size();
  }
  summary << " seconds=" << std::setprecision(4) << seconds_since(t0) << '\n';
  summary_stream(on_stdout, out, err) << summary.str();
  return exit_ok;
}

int run_mandelbrot(const MandelbrotConfig& c, unsigned threads, std::ostream& out, std::ostream& err) {
  using A = MandelbrotConfig::Action;
  const auto t0 = std::chrono::steady_clock::now();
  Sink sink(c.out, out);
  std::ostringstream summary;
  switch (c.action) {
    case A::zeros: {
      mandelbrot::ZeroOptions zo;
      zo.tol = c.tol;
      zo.threads = threads;
      poly::RootSet rs = mandelbrot::zeros(c.n, zo);
      std::size_t total = rs.roots.size();
      std::size_t ambiguous = 0;
      if (c.exact_period) {
        auto subset = mandelbrot::exact_period_subset(c.n, rs, zo);
        ambiguous = subset.ambiguous.size();
        rs = std::move(subset.exact_period);
      }
      *sink << "re,im,residual\n";
      for (std::size_t k = 0; k < rs.roots.size(); ++k)
        *sink << fmt_complex(rs.roots[k]) << ',' << std::setprecision(6) << rs.residuals[k] << '\n';
      summary << "mandelbrot zeros n=" << c.n << " found=" << total;
      if (c.exact_period) summary << " exact_period=" << rs.roots.size() << " ambiguous=" << ambiguous;
      summary << " max_residual=" << std::setprecision(3) << rs.max_residual();
      break;
    }
    case A::render: {
      const auto grid = mandelbrot::escape_time_render(c.window, c.width, c.height, c.max_iter, c.escape_radius,
                                                       threads);
      raster::write_ppm(raster::colorize_escape(grid.counts, grid.width, grid.height, grid.max_iter), *sink);
      const auto inside = std::count(grid.counts.begin(), grid.counts.end(), grid.max_iter);
      summary << "mandelbrot render size=" << c.width << 'x' << c.height << " max_iter=" << c.max_iter
              << " bounded_pixels=" << inside;
      break;
    }
    case A::coeffs: {
      const auto a = mandelbrot::coefficients(c.n);
      for (const auto& x : a) *sink << x.get_str() << '\n';
      summary << "mandelbrot coeffs n=" << c.n << " count=" << a.size();
      break;
    }
    case A::condition: {
      const auto r = exact::Rational::parse(c.radius);
      if (r.sign() < 0) throw InvalidArgument("--radius must be non-negative");
      const auto b = mandelbrot::condition_number_exact(c.n, r);
      *sink << b.to_string() << '\n';
      summary << "mandelbrot condition n=" << c.n << " radius=" << r.to_string() << " B=" << std::setprecision(6)
              << static_cast<double>(mandelbrot::condition_number(c.n, static_cast<long double>(r.to_double())));
      break;
    }
  }
  sink.close(c.out);
  summary << " seconds=" << std::setprecision(4) << seconds_since(t0) << '\n';
  summary_stream(is_stdout(c.out), out, err) << summary.str();
  return exit_ok;
}

int run_oeis(const OeisConfig& c, std::ostream& out) {
  oeis::Transport transport;
  if (!c.fixture.empty()) {
    transport = [path = c.fixture](const std::string&, const std::string&) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw IoError("cannot read fixture '" + path + "'");
      std::ostringstream body;
      body << in.rdbuf();
      return body.str();
    };
  } else {
    transport = oeis::https_transport(c.timeout_seconds);
  }
  const auto result = oeis::lookup(c.terms, transport);
  for (const auto& m : result.matches) out << m.id << '\t' << m.name << '\n';
  if (result.matches.empty()) out << "no matches\n";
  return exit_ok;
}

// -------------------------------------------------------- parse helpers

exact::BigInt parse_bigint(const std::string& text, const std::string& flag) {
  const auto r = flag_value(flag, [&] { return exact::Rational::parse(text); });
  if (!r.is_integer()) throw UsageError(flag + ": expected an integer, got '" + text + "'");
  return r.num();
}

}  // namespace

Window parse_window(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4)
    throw InvalidArgument("malformed window '" + text + "': expected x_min,x_max,y_min,y_max");
  double v[4];
  for (int k = 0; k < 4; ++k) {
    const auto d = to_double(parts[k]);
    if (!d) throw InvalidArgument("malformed window '" + text + "': '" + parts[k] + "' is not a number");
    v[k] = *d;
  }
  const Window w{v[0], v[1], v[2], v[3]};
  if (!w.valid()) throw InvalidArgument("malformed window '" + text + "': need x_min < x_max and y_min < y_max");
  return w;
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
  const auto x = text.find_first_of("xX");
  const auto bad = [&] { return InvalidArgument("malformed size '" + text + "': expected WxH"); };
  if (x == std::string::npos) throw bad();
  const auto number = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v == 0) throw bad();
    return v;
  };
  return {number(std::string_view(text).substr(0, x)), number(std::string_view(text).substr(x + 1))};
}

std::complex<double> parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  const auto bad = [&] { return InvalidArgument("malformed complex number '" + raw + "'"); };
  if (text.empty()) throw bad();
  if (text.find(',') != std::string::npos) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw bad();
    const auto re = to_double(parts[0]);
    const auto im = to_double(parts[1]);
    if (!re || !im) throw bad();
    return {*re, *im};
  }
  if (text.back() != 'i' && text.back() != 'j') {
    const auto re = to_double(text);
    if (!re) throw bad();
    return {*re, 0.0};
  }
  const std::string body = text.substr(0, text.size() - 1);
  // Split before the last sign that is not an exponent sign.
  std::size_t cut = 0;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const std::string re_text = body.substr(0, cut);
  std::string im_text = body.substr(cut);
  if (im_text.empty() || im_text == "+") im_text = "1";
  else if (im_text == "-") im_text = "-1";
  const auto im = to_double(im_text);
  const auto re = re_text.empty() ? std::optional<double>(0.0) : to_double(re_text);
  if (!re || !im) throw bad();
  return {*re, *im};
}

std::vector<std::complex<double>> parse_coefficients(const std::string& text) {
  std::vector<std::complex<double>> coeffs;
  for (const auto& token : split(text, ',')) {
    if (token.empty()) throw InvalidArgument("empty coefficient in '" + text + "'");
    coeffs.push_back(parse_complex(token));
  }
  return coeffs;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Computational discovery toolkit: exact Newton iterates, basin fractals, Bohemian "
               "eigenvalues and Mandelbrot polynomials.",
               "dlab"};
  app.footer(exit_code_text);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  app.add_option("--threads", config.threads, "worker threads, 0 = all cores (default 1)")
      ->envname("DLAB_THREADS")
      ->check(CLI::NonNegativeNumber);

  // sqrt-demo
  SqrtDemoConfig sq;
  std::string sq_m = "2", sq_x0 = "1";
  auto* sqrt_cmd = app.add_subcommand("sqrt-demo", "exact Newton iterates for sqrt(m) with continued fractions");
  sqrt_cmd->add_option("--m", sq_m, "positive integer m (default 2)");
  sqrt_cmd->add_option("--x0", sq_x0, "positive rational start, p or p/q (default 1)");
  sqrt_cmd->add_option("--n", sq.n, "number of Newton steps (default 5)");
  sqrt_cmd->add_option("--out", sq.out, "CSV path, - for stdout (default stdout)");

  // fractal
  FractalConfig fr;
  std::string fr_poly, fr_kind = "newton", fr_window, fr_size;
  std::optional<double> fr_offset;
  auto* fractal_cmd = app.add_subcommand("fractal", "basin-of-attraction image of an iteration");
  fractal_cmd->add_option("--poly", fr_poly, "coefficients a0,a1,...,ad, each a+bi")->required();
  fractal_cmd->add_option("--kind", fr_kind, "newton|halley|householder|schroeder|secant");
  fractal_cmd->add_option("--secant-offset", fr_offset, "secant second start z0+h");
  fractal_cmd->add_option("--window", fr_window, "x_min,x_max,y_min,y_max (default -1.8,1.0,-1.4,1.4)");
  fractal_cmd->add_option("--size", fr_size, "WxH (default 400x400)");
  fractal_cmd->add_option("--tol", fr.tol, "distance to a root counted as converged (default 1e-8)");
  fractal_cmd->add_option("--max-iter", fr.max_iter, "iteration budget per pixel (default 100)");
  fractal_cmd->add_option("--out", fr.out, "PPM path (default fractal.ppm)");
  fractal_cmd->add_option("--roots-csv", fr.roots_csv, "roots sidecar (default <out>.roots.csv)");
  fractal_cmd->add_option("--palette-seed", fr.palette_seed, "hue rotation seed");

  // roots
  RootsConfig ro;
  std::string ro_poly;
  auto* roots_cmd = app.add_subcommand("roots", "all roots of a polynomial by Ehrlich-Aberth iteration");
  roots_cmd->add_option("--poly", ro_poly, "coefficients a0,a1,...,ad, each a+bi")->required();
  roots_cmd->add_option("--tol", ro.tol, "correction tolerance (default 1e-12)");
  roots_cmd->add_option("--max-iter", ro.max_iter, "sweep budget (default 500)");
  roots_cmd->add_option("--out", ro.out, "CSV path, - for stdout (default stdout)");

  // bohemian
  BohemianConfig bo;
  std::string bo_family = "skewpenta", bo_window, bo_bins;
  auto* boh_cmd = app.add_subcommand("bohemian", "eigenvalue density and statistics of a Bohemian family");
  boh_cmd->add_option("--family", bo_family, "toeplitz|skewpenta|custom (default skewpenta)");
  boh_cmd->add_option("--pattern", bo.pattern_file, "pattern file for --family custom");
  boh_cmd->add_option("--dim", bo.dim, "matrix dimension (default 10)");
  boh_cmd->add_option("--population", bo.population, "entry values, e.g. 1,i (default 1,i)");
  boh_cmd->add_option("--window", bo_window, "x_min,x_max,y_min,y_max (default -3.25,3.25,-3.25,3.25)");
  boh_cmd->add_option("--bins", bo_bins, "histogram WxH (default 1024x1024)");
  boh_cmd->add_option("--out", bo.out, "density PPM (default density.ppm if no other output)");
  boh_cmd->add_option("--stats", bo.stats, "statistics as key: value lines");
  boh_cmd->add_option("--csv", bo.csv, "every eigenvalue as CSV");
  boh_cmd->add_flag("--force-csv", bo.force_csv, "write the CSV even when it is very large");
  boh_cmd->add_option("--stats-sample", bo.stats_sample, "estimate statistics from this many random members");
  boh_cmd->add_option("--seed", bo.seed, "sampling seed (default 1)");

  // mandelbrot
  MandelbrotConfig ma;
  std::optional<unsigned> ma_zeros, ma_coeffs, ma_condition;
  bool ma_render = false;
  std::string ma_window, ma_size;
  auto* man_cmd = app.add_subcommand("mandelbrot", "Mandelbrot polynomials: zeros, coefficients, condition, render");
  auto* o_zeros = man_cmd->add_option("--zeros", ma_zeros, "all zeros of z_N");
  auto* o_render = man_cmd->add_flag("--render", ma_render, "escape-time image");
  auto* o_coeffs = man_cmd->add_option("--coeffs", ma_coeffs, "exact coefficients of z_N, one per line");
  auto* o_cond = man_cmd->add_option("--condition", ma_condition, "exact B_N(radius)");
  o_zeros->excludes(o_render, o_coeffs, o_cond);
  o_render->excludes(o_coeffs, o_cond);
  o_coeffs->excludes(o_cond);
  man_cmd->add_option("--tol", ma.tol, "zero residual tolerance (default 1e-8)");
  man_cmd->add_flag("--exact-period", ma.exact_period, "keep only zeros of exact period N");
  man_cmd->add_option("--window", ma_window, "render window (default -2.25,0.75,-1.5,1.5)");
  man_cmd->add_option("--size", ma_size, "render WxH (default 600x600)");
  man_cmd->add_option("--max-iter", ma.max_iter, "escape iteration budget (default 500)");
  man_cmd->add_option("--escape-radius", ma.escape_radius, "escape radius >= 2 (default 2)");
  man_cmd->add_option("--radius", ma.radius, "rational |c| for --condition (default 1)");
  man_cmd->add_option("--out", ma.out, "output path, - for stdout (render default mandelbrot.ppm)");

  // oeis
  OeisConfig oe;
  std::string oe_terms;
  auto* oeis_cmd = app.add_subcommand("oeis", "look up integer terms in the OEIS");
  oeis_cmd->add_option("--terms", oe_terms, "3 to 20 comma-separated integers")->required();
  oeis_cmd->add_option("--fixture", oe.fixture, "replay a saved JSON response instead of the network");
  oeis_cmd->add_option("--timeout", oe.timeout_seconds, "network timeout in seconds (default 10)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), true);
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help("", CLI::AppFormatMode::All), true);
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    if (what.empty()) what = e.get_name();
    throw UsageError(what + "\nRun with --help for usage.");
  }

  if (sqrt_cmd->parsed()) {
    sq.m = parse_bigint(sq_m, "--m");
    if (sq.m <= 0) throw UsageError("--m must be a positive integer");
    sq.x0 = flag_value("--x0", [&] { return exact::Rational::parse(sq_x0); });
    if (sq.x0.sign() <= 0) throw UsageError("--x0 must be a positive rational");
    config.command = std::move(sq);
  } else if (fractal_cmd->parsed()) {
    fr.coeffs = flag_value("--poly", [&] { return parse_coefficients(fr_poly); });
    fr.method.kind = flag_value("--kind", [&] { return iterate::parse_iteration_kind(fr_kind); });
    if (fr_offset) {
      if (*fr_offset == 0 || !std::isfinite(*fr_offset)) throw UsageError("--secant-offset must be nonzero");
      fr.method.secant_offset = fr_offset;
    }
    if (!fr_window.empty()) fr.window = flag_value("--window", [&] { return parse_window(fr_window); });
    if (!fr_size.empty()) std::tie(fr.width, fr.height) = flag_value("--size", [&] { return parse_size(fr_size); });
    check_positive(fr.tol, "--tol");
    check_positive(static_cast<std::uint64_t>(fr.max_iter), "--max-iter");
    config.command = std::move(fr);
  } else if (roots_cmd->parsed()) {
    ro.coeffs = flag_value("--poly", [&] { return parse_coefficients(ro_poly); });
    check_positive(ro.tol, "--tol");
    check_positive(static_cast<std::uint64_t>(ro.max_iter), "--max-iter");
    config.command = std::move(ro);
  } else if (boh_cmd->parsed()) {
    if (bo_family == "toeplitz") bo.family = BohemianConfig::Family::toeplitz;
    else if (bo_family == "skewpenta") bo.family = BohemianConfig::Family::skewpenta;
    else if (bo_family == "custom") bo.family = BohemianConfig::Family::custom;
    else throw UsageError("--family: unknown family '" + bo_family + "' (toeplitz, skewpenta, custom)");
    if (bo.family == BohemianConfig::Family::custom && bo.pattern_file.empty())
      throw UsageError("--family custom requires --pattern FILE");
    if (bo.family != BohemianConfig::Family::custom && !bo.pattern_file.empty())
      throw UsageError("--pattern is only valid with --family custom");
    check_positive(static_cast<std::uint64_t>(bo.dim), "--dim");
    flag_value("--population", [&] { return bohemian::Population::parse(bo.population); });
    if (!bo_window.empty()) bo.window = flag_value("--window", [&] { return parse_window(bo_window); });
    if (!bo_bins.empty()) std::tie(bo.bins_w, bo.bins_h) = flag_value("--bins", [&] { return parse_size(bo_bins); });
    if (!bo.out && !bo.stats && !bo.csv) bo.out = "density.ppm";
    config.command = std::move(bo);
  } else if (man_cmd->parsed()) {
    if (ma_zeros) {
      ma.action = MandelbrotConfig::Action::zeros;
      ma.n = *ma_zeros;
    } else if (ma_coeffs) {
      ma.action = MandelbrotConfig::Action::coeffs;
      ma.n = *ma_coeffs;
    } else if (ma_condition) {
      ma.action = MandelbrotConfig::Action::condition;
      ma.n = *ma_condition;
    } else if (ma_render) {
      ma.action = MandelbrotConfig::Action::render;
    } else {
      throw UsageError("mandelbrot needs one of --zeros N, --render, --coeffs N, --condition N");
    }
    if (ma.action != MandelbrotConfig::Action::render && ma.n == 0)
      throw UsageError("mandelbrot: N must be at least 1");
    if (ma.exact_period && ma.action != MandelbrotConfig::Action::zeros)
      throw UsageError("--exact-period is only valid with --zeros");
    check_positive(ma.tol, "--tol");
    if (!ma_window.empty()) ma.window = flag_value("--window", [&] { return parse_window(ma_window); });
    if (!ma_size.empty()) std::tie(ma.width, ma.height) = flag_value("--size", [&] { return parse_size(ma_size); });
    check_positive(static_cast<std::uint64_t>(ma.max_iter), "--max-iter");
    if (!(ma.escape_radius >= 2.0) || !std::isfinite(ma.escape_radius))
      throw UsageError("--escape-radius must be at least 2");
    if (ma.action == MandelbrotConfig::Action::render && !ma.out) ma.out = "mandelbrot.ppm";
    config.command = std::move(ma);
  } else if (oeis_cmd->parsed()) {
    for (const auto& t : split(oe_terms, ',')) oe.terms.push_back(parse_bigint(t, "--terms"));
    if (oe.terms.size() < 3 || oe.terms.size() > 20)
      throw UsageError("--terms needs 3 to 20 integers, got " + std::to_string(oe.terms.size()));
    if (oe.timeout_seconds <= 0) throw UsageError("--timeout must be positive");
    config.command = std::move(oe);
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const unsigned threads = resolve_threads(config.threads);
  try {
    return std::visit(
        [&](const auto& c) -> int {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, SqrtDemoConfig>) return run_sqrt_demo(c, out, err);
          else if constexpr (std::is_same_v<T, FractalConfig>) return run_fractal(c, threads, out, err);
          else if constexpr (std::is_same_v<T, RootsConfig>) return run_roots(c, out, err);
          else if constexpr (std::is_same_v<T, BohemianConfig>) return run_bohemian(c, threads, out, err);
          else if constexpr (std::is_same_v<T, MandelbrotConfig>) return run_mandelbrot(c, threads, out, err);
          else return run_oeis(c, out);
        },
        config.command);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const DivisionByZero& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const ConvergenceFailure& e) {
    err << "no convergence: " << e.what() << '\n';
    return exit_no_convergence;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return exit_io;
  } catch (const oeis::OfflineError& e) {
    err << "offline: " << e.what() << '\n';
    return exit_network;
  } catch (const oeis::OeisError& e) {
    err << "OEIS error: " << e.what() << '\n';
    return exit_network;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return exit_cap_exceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const UsageError& e) {
    if (e.help()) {
      out << e.what();
      return exit_ok;
    }
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }
  return run(config, out, err);
}

}  // namespace dlab::cli
