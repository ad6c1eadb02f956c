#pragma once

// Command-line surface: argument parsing into a validated RunConfig, and
// execution of each subcommand.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlab/error.hpp"
#include "dlab/exact.hpp"
#include "dlab/iterate.hpp"
#include "dlab/window.hpp"

namespace dlab::cli {

// Exit codes, also listed by --help.
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2,
  exit_invalid_input = 3,
  exit_no_convergence = 4,
  exit_io = 5,
  exit_network = 6,
  exit_cap_exceeded = 7,
};

// Bad command line. `help` marks a --help request whose text is the message.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what, bool help = false) : Error(what), help_(help) {}
  bool help() const { return help_; }

 private:
  bool help_;
};

// Output path; "-" (or unset where documented) means stdout.
using OutputPath = std::optional<std::string>;

struct SqrtDemoConfig {
  exact::BigInt m = 2;
  exact::Rational x0 = 1;
  std::size_t n = 5;
  OutputPath out;
};

struct FractalConfig {
  std::vector<std::complex<double>> coeffs;
  iterate::IterationMethod method;
  Window window{-1.8, 1.0, -1.4, 1.4};
  std::size_t width = 400;
  std::size_t height = 400;
  double tol = 1e-8;
  std::size_t max_iter = 100;
  std::string out = "fractal.ppm";
  std::string roots_csv;  // defaults to <out>.roots.csv
  std::uint32_t palette_seed = 0;
};

struct RootsConfig {
  std::vector<std::complex<double>> coeffs;
  double tol = 1e-12;
  std::size_t max_iter = 500;
  OutputPath out;
};

struct BohemianConfig {
  enum class Family { toeplitz, skewpenta, custom };
  Family family = Family::skewpenta;
  std::size_t dim = 10;
  std::string pattern_file;  // custom family only
  std::string population = "1,i";
  Window window{-3.25, 3.25, -3.25, 3.25};
  std::size_t bins_w = 1024;
  std::size_t bins_h = 1024;
  OutputPath out;    // density PPM
  OutputPath stats;  // "key: value" text
  OutputPath csv;    // every eigenvalue, gated by size
  bool force_csv = false;
  std::uint64_t stats_sample = 0;  // 0 = exhaustive
  std::uint64_t seed = 1;
};

struct MandelbrotConfig {
  enum class Action { zeros, render, coeffs, condition };
  Action action = Action::render;
  unsigned n = 0;
  double tol = 1e-8;
  bool exact_period = false;
  Window window{-2.25, 0.75, -1.5, 1.5};
  std::size_t width = 600;
  std::size_t height = 600;
  std::uint32_t max_iter = 500;
  double escape_radius = 2.0;
  std::string radius = "1";
  OutputPath out;
};

struct OeisConfig {
  std::vector<exact::BigInt> terms;
  std::string fixture;  // replay a saved response instead of the network
  int timeout_seconds = 10;
};

struct RunConfig {
  std::variant<SqrtDemoConfig, FractalConfig, RootsConfig, BohemianConfig, MandelbrotConfig, OeisConfig> command;
  unsigned threads = 1;
};

// Validated configuration, or UsageError naming the offending flag.
RunConfig parse_args(const std::vector<std::string>& args);

// Executes the command, writing artifacts and a one-line summary to `out`.
// Errors are reported on `err` and mapped to ExitCode values.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run, with usage errors reported on `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "x_min,x_max,y_min,y_max".
Window parse_window(const std::string& text);
// "WxH".
std::pair<std::size_t, std::size_t> parse_size(const std::string& text);
// "a+bi", "a-bi", "bi", "a", or "a,b".
std::complex<double> parse_complex(const std::string& text);
// Comma-separated "a+bi" tokens, ascending degree.
std::vector<std::complex<double>> parse_coefficients(const std::string& text);

}  // namespace dlab::cli
