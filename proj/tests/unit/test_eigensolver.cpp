#include <doctest.h>

#include <cmath>
#include <random>

#include "isingloop/eigensolver.hpp"
#include "isingloop/errors.hpp"
#include "oracles.hpp"

using namespace isingloop;
using Complex = std::complex<double>;

namespace {

std::vector<double> random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss;
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a[i * n + j] = a[j * n + i] = gauss(rng);
  return a;
}

}  // namespace

TEST_CASE("eigenvalues agree with Jacobi rotations") {
  std::mt19937_64 rng(101);
  for (int n : {1, 2, 3, 7, 16, 40}) {
    const auto a = random_symmetric(rng, n);
    const SymmetricEigen eig = symmetric_eigen(a, n);
    const auto ref = oracle::jacobi_eigenvalues(a, n);
    for (int i = 0; i < n; ++i) CHECK(eig.values[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("eigenvectors are orthonormal and satisfy A v = lambda v") {
  std::mt19937_64 rng(103);
  const int n = 24;
  const auto a = random_symmetric(rng, n);
  const SymmetricEigen eig = symmetric_eigen(a, n);
  double worst_residual = 0.0, worst_ortho = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto v = eig.vector(j);
    for (int r = 0; r < n; ++r) {
      double av = 0.0;
      for (int c = 0; c < n; ++c) av += a[r * n + c] * v[c];
      worst_residual = std::max(worst_residual, std::abs(av - eig.values[j] * v[r]));
    }
    for (int k = 0; k < n; ++k) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += v[i] * eig.vector(k)[i];
      worst_ortho = std::max(worst_ortho, std::abs(d - (j == k ? 1.0 : 0.0)));
    }
  }
  CHECK(worst_residual < 1e-12);
  CHECK(worst_ortho < 1e-12);
}

TEST_CASE("degenerate and diagonal inputs") {
  const SymmetricEigen d = symmetric_eigen({3, 0, 0, 0, -1, 0, 0, 0, 3}, 3);
  CHECK(d.values == std::vector<double>{-1, 3, 3});
  const SymmetricEigen z = symmetric_eigen(std::vector<double>(16, 0.0), 4);
  for (double v : z.values) CHECK(v == 0.0);
  CHECK_THROWS_AS(symmetric_eigen({1, 2, 3}, 2), InvalidArgument);
}

TEST_CASE("values only") {
  std::mt19937_64 rng(107);
  const auto a = random_symmetric(rng, 12);
  const SymmetricEigen full = symmetric_eigen(a, 12);
  const SymmetricEigen values = symmetric_eigen(a, 12, false);
  CHECK(values.vectors.empty());
  for (int i = 0; i < 12; ++i) CHECK(values.values[i] == doctest::Approx(full.values[i]).epsilon(1e-13));
}

TEST_CASE("tridiagonal: free chain spectrum 2 cos(pi j/(n+1))") {
  const int n = 30;
  const SymmetricEigen eig = tridiagonal_eigen(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0));
  for (int j = 1; j <= n; ++j) {
    CHECK(eig.values[n - j] == doctest::Approx(2 * std::cos(std::numbers::pi * j / (n + 1))).epsilon(1e-13).scale(1.0));
  }
  CHECK_THROWS_AS(tridiagonal_eigen({1, 2}, {1, 2}), InvalidArgument);
}

TEST_CASE("Lanczos finds the lowest two eigenpairs of a Hermitian matrix") {
  std::mt19937_64 rng(109);
  const int n = 120;
  std::normal_distribution<double> gauss;
  // Hermitian H = A + A^dag, and its real embedding for the dense reference.
  std::vector<Complex> h(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex v = i == j ? Complex(2 * gauss(rng), 0) : Complex(gauss(rng), gauss(rng));
      h[i * n + j] = v;
      h[j * n + i] = std::conj(v);
    }
  std::vector<double> embed(static_cast<std::size_t>(4) * n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      embed[r * 2 * n + c] = h[r * n + c].real();
      embed[r * 2 * n + c + n] = -h[r * n + c].imag();
      embed[(r + n) * 2 * n + c] = h[r * n + c].imag();
      embed[(r + n) * 2 * n + c + n] = h[r * n + c].real();
    }
  const auto ref = oracle::jacobi_eigenvalues(embed, 2 * n);

  LinearOperator op = [&](std::span<const Complex> in, std::span<Complex> out) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out[r] += h[r * n + c] * in[c];
  };
  std::vector<Complex> start(n);
  for (Complex& c : start) c = Complex(gauss(rng), gauss(rng));

  const LanczosResult first = lanczos_lowest(op, start, {});
  CHECK(first.converged);
  CHECK(first.value == doctest::Approx(ref[0]).epsilon(1e-10));

  const std::vector<std::vector<Complex>> found{first.vector};
  const LanczosResult second = lanczos_lowest(op, start, found);
  CHECK(second.converged);
  CHECK(second.value == doctest::Approx(ref[2]).epsilon(1e-10));

  // A short Krylov space forces restarts.
  const LanczosResult restarted = lanczos_lowest(op, start, {}, LanczosOptions{30, 200, 1e-12});
  CHECK(restarted.converged);
  CHECK(restarted.value == doctest::Approx(ref[0]).epsilon(1e-10));
  CHECK(restarted.iterations > 30);

  Complex overlap = 0;
  for (int i = 0; i < n; ++i) overlap += std::conj(first.vector[i]) * second.vector[i];
  CHECK(std::abs(overlap) < 1e-10);
}

TEST_CASE("Lanczos rejects empty and fully deflated starts") {
  LinearOperator op = [](std::span<const Complex> in, std::span<Complex> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] += in[i];
  };
  CHECK_THROWS_AS(lanczos_lowest(op, {}, {}), InvalidArgument);
  const std::vector<std::vector<Complex>> all{{1.0}};
  CHECK_THROWS_AS(lanczos_lowest(op, {1.0}, all), InvalidArgument);
}
