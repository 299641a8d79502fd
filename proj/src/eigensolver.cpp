#include "isingloop/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "isingloop/errors.hpp"

namespace isingloop {

namespace {

using Complex = std::complex<double>;

// Householder tridiagonalization in place. On return d holds the diagonal,
// e[i] the coupling between i-1 and i (e[0] = 0) and, when vectors are wanted,
// a holds the accumulated orthogonal transformation.
void householder_tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d,
                                std::vector<double>& e, bool want_vectors) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  d.assign(n, 0.0);
  e.assign(n, 0.0);

  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (want_vectors) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = at(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (int j = 0; j < i; ++j) {
          double g = 0.0;
          for (int k = 0; k < i; ++k) g += at(i, k) * at(k, j);
          for (int k = 0; k < i; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (int j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
// off[i] couples i and i+1. Rotations are applied to the columns of z
// (row-major n x n) when z is non-null.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& off, double* z, int n) {
  if (n == 0) return;
  off.resize(n, 0.0);
  off[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    while (true) {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(off[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("tridiagonal_ql: no convergence");

      double g = (d[l + 1] - d[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (int k = 0; k < n; ++k) {
            double* row = z + static_cast<std::size_t>(k) * n;
            f = row[i + 1];
            row[i + 1] = s * row[i] + c * f;
            row[i] = c * row[i] - s * f;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }
}

// Sort ascending and repack column eigenvectors of z (row-major) contiguously.
SymmetricEigen sorted_result(std::vector<double> d, const std::vector<double>& z, int n,
                             bool want_vectors) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int l, int r) { return d[l] < d[r]; });

  SymmetricEigen out;
  out.n = n;
  out.values.reserve(n);
  for (int j : order) out.values.push_back(d[j]);
  if (want_vectors) {
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int jj = 0; jj < n; ++jj) {
      const int j = order[jj];
      for (int k = 0; k < n; ++k) {
        out.vectors[static_cast<std::size_t>(jj) * n + k] = z[static_cast<std::size_t>(k) * n + j];
      }
    }
  }
  return out;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Complex dot(std::span<const Complex> l, std::span<const Complex> r) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) s += std::conj(l[i]) * r[i];
  return s;
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void orthogonalize(std::span<Complex> w, std::span<const std::vector<Complex>> against) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& v : against) axpy(-dot(v, w), v, w);
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(std::vector<double> matrix, int n, bool want_vectors) {
  if (n < 0 || matrix.size() != static_cast<std::size_t>(n) * n) {
    throw InvalidArgument("symmetric_eigen: matrix size does not match n");
  }
  if (n == 0) return {};
  std::vector<double> d, e;
  householder_tridiagonalize(matrix, n, d, e, want_vectors);
  // e[i] couples i-1 and i; shift so off[i] couples i and i+1.
  std::vector<double> off(n, 0.0);
  for (int i = 1; i < n; ++i) off[i - 1] = e[i];
  tridiagonal_ql(d, off, want_vectors ? matrix.data() : nullptr, n);
  return sorted_result(std::move(d), matrix, n, want_vectors);
}

SymmetricEigen tridiagonal_eigen(std::vector<double> diag, std::vector<double> off,
                                 bool want_vectors) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (static_cast<int>(off.size()) != n - 1) {
    throw InvalidArgument("tridiagonal_eigen: off-diagonal must have n-1 entries");
  }
  std::vector<double> z;
  if (want_vectors) {
    z.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;
  }
  tridiagonal_ql(diag, off, want_vectors ? z.data() : nullptr, n);
  return sorted_result(std::move(diag), z, n, want_vectors);
}

LanczosResult lanczos_lowest(const LinearOperator& apply, std::vector<Complex> start,
                             std::span<const std::vector<Complex>> deflate,
                             const LanczosOptions& options) {
  const std::size_t dim = start.size();
  if (dim == 0) throw InvalidArgument("lanczos_lowest: empty start vector");

  LanczosResult result;
  std::vector<Complex> w(dim);

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    orthogonalize(start, deflate);
    const double start_norm = norm(start);
    if (start_norm == 0.0) throw InvalidArgument("lanczos_lowest: start vector lies in deflated space");
    for (Complex& c : start) c /= start_norm;

    std::vector<std::vector<Complex>> basis{start};
    std::vector<double> alpha, beta;
    SymmetricEigen ritz;
    bool finished = false;

    for (int j = 0; j < options.max_basis; ++j) {
      std::fill(w.begin(), w.end(), Complex{});
      apply(basis[j], w);
      ++result.iterations;
      alpha.push_back(dot(basis[j], w).real());
      orthogonalize(w, deflate);
      orthogonalize(w, basis);
      const double b = norm(w);

      const bool last = j + 1 == options.max_basis;
      if (j % 4 == 3 || last || b < 1e-14) {
        std::vector<double> off(beta.begin(), beta.end());
        ritz = tridiagonal_eigen(alpha, off);
        const double theta = ritz.values[0];
        const double estimate = b * std::abs(ritz.vector(0)[j]);
        if (estimate <= options.tol * std::max(1.0, std::abs(theta)) || b < 1e-14) {
          finished = true;
        }
      }
      if (finished || last) break;
      beta.push_back(b);
      for (Complex& c : w) c /= b;
      basis.push_back(w);
    }

    // Ritz vector for the lowest Ritz value.
    std::vector<Complex> y(dim);
    const auto coeffs = ritz.vector(0);
    for (std::size_t i = 0; i < coeffs.size() && i < basis.size(); ++i) axpy(coeffs[i], basis[i], y);
    orthogonalize(y, deflate);
    const double ny = norm(y);
    for (Complex& c : y) c /= ny;

    std::fill(w.begin(), w.end(), Complex{});
    apply(y, w);
    orthogonalize(w, deflate);
    const double theta = dot(y, w).real();
    axpy(-theta, y, w);
    result.value = theta;
    result.residual = norm(w);
    result.vector = y;
    result.converged = result.residual <= 1e3 * options.tol * std::max(1.0, std::abs(theta));
    if (finished && result.converged) return result;
    start = std::move(y);
  }
  return result;
}

}  // namespace isingloop
