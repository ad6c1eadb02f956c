#pragma once

// Dense complex eigenvalues: balancing, Householder reduction to upper
// Hessenberg form, then single-shift (Wilkinson) QR with deflation.

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "dlab/error.hpp"

namespace dlab::linalg {

using Complex = std::complex<double>;

template <typename T>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<T> data;  // row-major

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : n(dim), data(dim * dim) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

using ComplexMatrix = DenseMatrix<Complex>;

double frobenius_norm(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

struct EigenOptions {
  // Subdiagonal entries below deflation_tol (|h_kk| + |h_{k-1,k-1}|) are
  // treated as zero.
  double deflation_tol = std::numeric_limits<double>::epsilon();
  // Total QR sweeps allowed per matrix, as a multiple of the dimension.
  std::size_t sweeps_per_dim = 40;
};

// All n eigenvalues (with multiplicity, in deflation order). Throws
// ConvergenceFailure when the sweep budget runs out.
std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& options = {});

// Reusable buffers for eigensolves of many same-sized matrices.
class EigenWorkspace {
 public:
  // Same contract as eigenvalues(); `a` is overwritten.
  const std::vector<Complex>& solve(ComplexMatrix& a, const EigenOptions& options = {});

 private:
  std::vector<Complex> values_;
  std::vector<Complex> rot_c_;
  std::vector<Complex> rot_s_;
  std::vector<Complex> householder_;
};

}  // namespace dlab::linalg
