#pragma once

// Bohemian matrix families: structured matrices whose free entries range
// over a finite population. Enumeration, exact determinants and
// characteristic polynomials, eigenvalue density plots and family counts.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlab/eigen.hpp"
#include "dlab/exact_poly.hpp"
#include "dlab/gaussian.hpp"
#include "dlab/raster.hpp"

namespace dlab::bohemian {

using linalg::Complex;
using linalg::ComplexMatrix;
using ExactMatrix = linalg::DenseMatrix<GaussianRational>;
using ExactPoly = UniPoly<GaussianRational>;

// Finite set of distinct entry values, kept exactly and as doubles.
class Population {
 public:
  // Throws InvalidArgument when empty or when two values coincide.
  explicit Population(std::vector<GaussianRational> values);
  // Comma-separated tokens, e.g. "1,i" or "-1,0,1".
  static Population parse(std::string_view text);

  std::size_t size() const { return exact_.size(); }
  const std::vector<GaussianRational>& exact() const { return exact_; }
  const std::vector<Complex>& approx() const { return approx_; }
  std::string to_string() const;

 private:
  std::vector<GaussianRational> exact_;
  std::vector<Complex> approx_;
};

// One entry of a custom structure: a fixed value, slot k, or -(slot k).
// Slots are numbered from 1.
struct PatternCell {
  enum class Kind { fixed, slot, negated_slot };
  Kind kind = Kind::fixed;
  GaussianRational value;
  std::size_t slot = 0;
};

struct HessenbergToeplitz {
  std::size_t dim;
};
struct SkewPentadiagonal {
  std::size_t dim;
};
struct CustomPattern {
  std::size_t dim;
  std::vector<PatternCell> cells;  // row-major
};

class BohemianFamily {
 public:
  using Kind = std::variant<HessenbergToeplitz, SkewPentadiagonal, CustomPattern>;

  // diagonal t1, superdiagonals t2..tm, first subdiagonal -1. m >= 1.
  static BohemianFamily hessenberg_toeplitz(std::size_t m);
  // A = -A^T, first superdiagonal t1..t_{n-1}, second t_n..t_{2n-3}. n >= 3.
  static BohemianFamily skew_pentadiagonal(std::size_t n);
  // Throws InvalidArgument unless the grid is square and the slots used are
  // exactly 1..k for some k >= 1.
  static BohemianFamily custom(std::size_t dim, std::vector<PatternCell> cells);
  // One row per line, whitespace-separated cells: "t3", "-t2" or a Gaussian
  // rational constant such as "0", "-1" or "1/2+i". '#' starts a comment.
  static BohemianFamily parse_pattern(std::string_view text);

  const Kind& kind() const { return kind_; }
  std::size_t dimension() const;
  std::size_t parameter_count() const { return parameter_count_; }
  std::string name() const;

 private:
  BohemianFamily(Kind kind, std::size_t parameters) : kind_(std::move(kind)), parameter_count_(parameters) {}
  Kind kind_;
  std::size_t parameter_count_;
};

// |population| ^ parameter_count, exactly.
exact::BigInt family_size(const BohemianFamily& family, const Population& population);

// Lexicographic enumeration of slot assignments: slot 1 is the most
// significant digit, so consecutive indices differ in the last slot first.
// An assignment holds one population index per slot.
class Enumerator {
 public:
  // Throws CapExceeded when the family does not fit in 64-bit indices.
  Enumerator(const BohemianFamily& family, const Population& population);

  std::uint64_t size() const { return size_; }
  std::vector<std::size_t> assignment(std::uint64_t index) const;
  std::uint64_t index_of(std::span<const std::size_t> assignment) const;
  // Advances to the next assignment in order; false after the last one.
  bool next(std::vector<std::size_t>& assignment) const;

 private:
  std::size_t slots_;
  std::size_t radix_;
  std::uint64_t size_;
};

// Matrix for a slot assignment (population indices). Throws
// InvalidArgument on a length or index mismatch.
ComplexMatrix build_matrix(const BohemianFamily& family, const Population& population,
                           std::span<const std::size_t> assignment);
ExactMatrix build_exact_matrix(const BohemianFamily& family, const Population& population,
                               std::span<const std::size_t> assignment);

// Same layout with explicit slot values, for any entry type with unary minus.
template <typename T>
linalg::DenseMatrix<T> build_matrix_from_values(const BohemianFamily& family, std::span<const T> t,
                                                const std::function<T(const GaussianRational&)>& fixed);

// D_0 = 1, D_m = sum_{k=1..m} t_k D_{m-k}: the determinant of the m-by-m
// Hessenberg-Toeplitz matrix with subdiagonal -1. Works over any ring with
// T(1), + and *.
template <typename T>
T det_hessenberg_toeplitz(std::span<const T> t) {
  if (t.empty()) throw InvalidArgument("det_hessenberg_toeplitz needs at least one parameter");
  std::vector<T> d;
  d.reserve(t.size() + 1);
  d.emplace_back(T(1));
  for (std::size_t m = 1; m <= t.size(); ++m) {
    T acc = t[0] * d[m - 1];
    for (std::size_t k = 2; k <= m; ++k) acc = acc + t[k - 1] * d[m - k];
    d.push_back(std::move(acc));
  }
  return d.back();
}

// det(A - lambda I) for the Hessenberg-Toeplitz matrix: the recurrence above
// with t1 replaced by t1 - lambda. Ascending in lambda, leading (-1)^m.
ExactPoly charpoly_hessenberg_toeplitz(std::span<const GaussianRational> t);

// det(A - lambda I) of an arbitrary exact matrix (Berkowitz, division free).
ExactPoly charpoly(const ExactMatrix& a);

// Exact determinant by Gaussian elimination over the Gaussian rationals.
GaussianRational exact_determinant(ExactMatrix a);

// Eigenvalue failure tied to the family member that caused it.
class MatrixEigenFailure : public ConvergenceFailure {
 public:
  MatrixEigenFailure(std::uint64_t index, const std::string& what)
      : ConvergenceFailure("matrix " + std::to_string(index) + ": " + what), index_(index) {}
  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t index_;
};

struct SpectrumOptions {
  unsigned threads = 1;
  linalg::EigenOptions eigen;
  // A defective eigenvalue of multiplicity k comes out of QR as a star of
  // radius ~ eps^(1/k) ||A||. When two computed eigenvalues lie within
  // cluster_radius * ||A||_F, the spectrum is rebuilt from the exact
  // square-free factorization of the characteristic polynomial: each
  // factor's (simple) roots, repeated by their exact multiplicity.
  // Zero disables the check.
  double cluster_radius = 1e-2;
};

// Eigenvalues from the exact characteristic polynomial, with exact
// multiplicities. Throws ConvergenceFailure if a factor's roots do not
// converge.
std::vector<Complex> exact_multiplicity_spectrum(const ExactMatrix& a);

// Calls visit(index, matrix, eigenvalues, worker) for every family member;
// each worker owns a contiguous index range. `matrix` is the unreduced
// matrix.
void for_each_spectrum(const BohemianFamily& family, const Population& population, const SpectrumOptions& options,
                       const std::function<void(std::uint64_t, const ComplexMatrix&, std::span<const Complex>,
                                                std::size_t)>& visit);

// Histogram of every eigenvalue of every member. Points outside the window
// are counted in `dropped`. Per-worker grids are merged by addition.
raster::DensityGrid density_plot(const BohemianFamily& family, const Population& population, const Window& window,
                                 std::size_t bins_w, std::size_t bins_h, const SpectrumOptions& options = {});

struct FamilyStatistics {
  std::uint64_t matrix_count = 0;
  std::uint64_t distinct_charpoly_count = 0;
  std::uint64_t distinct_eigenvalue_count = 0;
  std::uint64_t singular_count = 0;
  std::uint64_t multiple_eigenvalue_matrix_count = 0;

  friend bool operator==(const FamilyStatistics&, const FamilyStatistics&) = default;
};

struct StatisticsOptions {
  // Exhaustive runs above this many matrices are refused.
  std::uint64_t max_matrices = 1u << 18;
};

// Exact counts over the whole family. Distinct eigenvalues are counted as a
// set (without multiplicity) over all members, decided by exact gcds of the
// square-free characteristic polynomials. Throws CapExceeded for families
// above the cap.
FamilyStatistics family_statistics(const BohemianFamily& family, const Population& population,
                                   const StatisticsOptions& options = {});

// Same counts over `samples` members drawn uniformly (with replacement) by a
// seeded generator; matrix_count is the number of samples.
FamilyStatistics family_statistics_sampled(const BohemianFamily& family, const Population& population,
                                           std::uint64_t samples, std::uint64_t seed);

// Number of distinct complex roots of the product of `polys`, counted
// without multiplicity.
std::uint64_t distinct_root_count(std::span<const ExactPoly> polys);

// "key: value" lines.
std::string format_statistics(const FamilyStatistics& stats);

}  // namespace dlab::bohemian
