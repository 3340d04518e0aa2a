#include "drlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "drlab/error.hpp"

namespace drlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One-sided Jacobi: on return the columns of `a` are mutually orthogonal and
// a_in = a_out * vᵀ with v orthogonal.
void one_sided_jacobi(Matrix& a, Matrix& v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  v = Matrix::identity(n);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += a(i, p) * a(i, p);
          beta += a(i, q) * a(i, q);
          gamma += a(i, p) * a(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double ap = a(i, p), aq = a(i, q);
          a(i, p) = c * ap - s * aq;
          a(i, q) = s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "jacobi_eigen needs a square matrix");
  const std::size_t n = m.rows();
  Matrix a = 0.5 * (m + m.transpose());
  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || off <= 1e-3 * kEps * kEps * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double small = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + small == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + small == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (!std::isfinite(theta * theta)) t = 0.5 / std::abs(theta);
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a(r, p), h = a(r, q);
          a(r, p) = g - s * (h + g * tau);
          a(r, q) = h + s * (g - h * tau);
          a(p, r) = a(r, p);
          a(q, r) = a(r, q);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double g = v(r, p), h = v(r, q);
          v(r, p) = g - s * (h + g * tau);
          v(r, q) = h + s * (g - h * tau);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "symmetric_eigenvalues needs a square matrix");
  const double asym = spectral_norm(m - m.transpose());
  if (asym > 1e-10 * spectral_norm(m)) {
    throw Error(Errc::NotSymmetric, "‖M − Mᵀ‖ = " + std::to_string(asym));
  }
  return jacobi_eigen(m).values;
}

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Matrix mt = m.transpose();
  const Matrix gram = m.cols() <= m.rows() ? mt * m : m * mt;
  const double top = jacobi_eigen(gram).values.back();
  return std::sqrt(std::max(0.0, top));
}

std::vector<double> singular_values(const Matrix& m) {
  Matrix a = m.cols() <= m.rows() ? m : m.transpose();
  Matrix v;
  one_sided_jacobi(a, v);
  std::vector<double> sv(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) sv[j] = norm2(a.col(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

Matrix solve(const Matrix& m, const Matrix& rhs) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "solve needs a square matrix");
  if (rhs.rows() != m.rows()) throw Error(Errc::DimensionMismatch, "solve rhs row count");
  const std::size_t n = m.rows();
  Matrix lu = m;
  Matrix x = rhs;

  std::vector<double> scale(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale[i] = std::max(scale[i], std::abs(m(i, j)));

  auto swap_rows = [](Matrix& a, std::size_t r1, std::size_t r2) {
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      const double rel = scale[i] > 0.0 ? std::abs(lu(i, k)) / scale[i] : 0.0;
      if (rel > best) {
        best = rel;
        piv = i;
      }
    }
    if (best < kPivotTol) {
      throw Error(Errc::SingularMatrix, "pivot " + std::to_string(k) + " below threshold");
    }
    if (piv != k) {
      swap_rows(lu, piv, k);
      swap_rows(x, piv, k);
      std::swap(scale[piv], scale[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s / lu(kk, kk);
    }
  }
  return x;
}

Matrix kernel_basis(const Matrix& m, double tol) { return kernel_basis(m, tol, -1.0); }

Matrix kernel_basis(const Matrix& m, double tol, double reference_norm) {
  const std::size_t n = m.cols();
  Matrix a = m;
  Matrix v;
  one_sided_jacobi(a, v);

  std::vector<double> sv(n);
  double top = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sv[j] = norm2(a.col(j));
    top = std::max(top, sv[j]);
  }
  const double scale = reference_norm >= 0.0 ? reference_norm : top;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (sv[j] <= tol * scale) keep.push_back(j);

  Matrix k(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) k.set_col(c, v.col(keep[c]));
  return k;
}

Matrix orthonormalize(const Matrix& v, double tol) {
  double scale = 0.0;
  for (std::size_t j = 0; j < v.cols(); ++j) scale = std::max(scale, norm2(v.col(j)));
  return orthonormalize(v, tol, scale);
}

Matrix orthonormalize(const Matrix& v, double tol, double scale) {
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < v.cols() && scale > 0.0; ++j) {
    Vector w = v.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) w = axpy(-dot(q, w), q, w);
    }
    const double r = norm2(w);
    if (r <= tol * scale) continue;
    for (double& x : w) x /= r;
    basis.push_back(std::move(w));
  }

  Matrix q(v.rows(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) q.set_col(c, basis[c]);
  return q;
}

Matrix projector(const Matrix& orthonormal_basis) {
  return orthonormal_basis * orthonormal_basis.transpose();
}

}  // namespace drlab
