#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace isingloop {

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
struct SymmetricEigen {
  int n = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // eigenvector j occupies [j*n, (j+1)*n)

  std::span<const double> vector(int j) const {
    return std::span<const double>(vectors).subspan(static_cast<std::size_t>(j) * n, n);
  }
};

/// Householder reduction to tridiagonal form followed by implicit QL.
/// `matrix` is row-major n x n and only needs to be symmetric.
SymmetricEigen symmetric_eigen(std::vector<double> matrix, int n, bool want_vectors = true);

/// Symmetric tridiagonal matrix: diag[0..n), off[i] couples i and i+1 (size n-1).
SymmetricEigen tridiagonal_eigen(std::vector<double> diag, std::vector<double> off,
                                 bool want_vectors = true);

using LinearOperator =
    std::function<void(std::span<const std::complex<double>>, std::span<std::complex<double>>)>;

struct LanczosOptions {
  int max_basis = 160;
  int max_restarts = 30;
  double tol = 1e-12;  // relative residual ||Ay - ty|| / max(1, |t|)
};

struct LanczosResult {
  double value = 0.0;
  std::vector<std::complex<double>> vector;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenpair of a Hermitian operator by restarted Lanczos with full
/// reorthogonalization. The search stays orthogonal to `deflate` (orthonormal
/// vectors), which gives the next eigenpair once the lower ones are known.
LanczosResult lanczos_lowest(const LinearOperator& apply, std::vector<std::complex<double>> start,
                             std::span<const std::vector<std::complex<double>>> deflate,
                             const LanczosOptions& options = {});

}  // namespace isingloop
