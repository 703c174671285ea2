#include "issgd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "issgd/errors.hpp"

namespace issgd {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("Matrix: ragged initializer list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("Matrix: ragged row arrays");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
  }
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  return out;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square() || m.empty())
    throw InputError(std::string(op) + ": matrix must be square and nonempty");
}

}  // namespace

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(Matrix a) { return a *= -1.0; }
Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw InputError("operator*: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + ")");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

bool all_finite(const Matrix& m) noexcept {
  return std::all_of(m.data().begin(), m.data().end(), [](double x) { return std::isfinite(x); });
}

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) throw InputError(std::string(what) + ": matrix has non-finite entries");
}

double trace(const Matrix& m) {
  require_square(m, "trace");
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const Matrix& m) {
  require_finite(m, "frobenius_norm");
  // Scaled accumulation avoids overflow for large entries.
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : m.data()) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double spectral_norm(const Matrix& m, const NumericSettings& settings) {
  if (m.empty()) throw InputError("spectral_norm: empty matrix");
  require_finite(m, "spectral_norm");
  const Matrix gram = m.cols() <= m.rows() ? m.transposed() * m : m * m.transposed();
  const double top = lambda_max(gram, settings);
  return std::sqrt(std::max(top, 0.0));
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

double weighted_inner(const Matrix& k1, const Matrix& k2, const Matrix& y) {
  // Tr(k1 y k2^T) = <k1 y, k2>_F
  return frobenius_inner(k1 * y, k2);
}

Matrix symmetrized(const Matrix& m) {
  require_square(m, "symmetrized");
  Matrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = 0.5 * (m(i, j) + m(j, i));
  return s;
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (!m.is_square()) return false;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst <= rel_tol * (1.0 + frobenius_norm(m));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Matrix vec(const Matrix& m) {
  Matrix v(m.size(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw InputError("unvec: size mismatch");
  Matrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v.data()[j * rows + i];
  return m;
}

// ---------------------------------------------------------------------------
// Symmetric eigenvalues: cyclic Jacobi rotations.

std::vector<double> symmetric_eigenvalues(const Matrix& m, const NumericSettings& settings) {
  require_square(m, "symmetric_eigenvalues");
  require_finite(m, "symmetric_eigenvalues");
  const std::size_t n = m.rows();
  Matrix a = symmetrized(m);
  for (std::size_t sweep = 0; sweep < settings.jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= 1e-32 * diag || off == 0.0) {
      std::vector<double> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw NumericError("symmetric_eigenvalues: Jacobi sweeps did not converge",
                     settings.jacobi_max_sweeps);
}

double lambda_min(const Matrix& symmetric, const NumericSettings& settings) {
  return symmetric_eigenvalues(symmetric, settings).front();
}

double lambda_max(const Matrix& symmetric, const NumericSettings& settings) {
  return symmetric_eigenvalues(symmetric, settings).back();
}

// ---------------------------------------------------------------------------
// General eigenvalues: Householder reduction to upper Hessenberg form followed
// by the Francis double-shift QR iteration (EISPACK hqr structure).

namespace {

// Diagonal similarity by powers of two that equalizes row and column norms
// (EISPACK balanc without the permutation step).
void balance(Matrix& h) {
  const std::size_t n = h.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(h(j, i));
        r += std::abs(h(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        for (std::size_t j = 0; j < n; ++j) h(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) h(j, i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(Matrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += h(i, k) * h(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (h(k + 1, k) > 0.0) alpha = -alpha;
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // H <- (I - 2vv^T/|v|^2) H (I - 2vv^T/|v|^2)
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * h(i, j);
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= f * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= f * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

double sign_of(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Francis QR on an upper Hessenberg matrix. Indices are 1-based internally to
// keep the classical loop structure intact.
std::vector<double> hessenberg_qr_real_parts(Matrix h, std::size_t max_its_per_value) {
  const int n = static_cast<int>(h.rows());
  auto a = [&h](int i, int j) -> double& { return h(i - 1, j - 1); };
  std::vector<double> wr(n + 1, 0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::size_t total_its = 0;

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  int nn = n;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
  while (nn >= 1) {
    std::size_t its = 0;
    int l = 1;
    do {
      for (l = nn; l >= 2; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        --nn;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
          }
          nn -= 2;
        } else {
          if (its >= max_its_per_value) {
            throw NumericError("eig_real_parts: QR iteration did not converge", total_its);
          }
          if (its == 10 || its == 20 || (its > 20 && its % 10 == 0)) {
            // Exceptional shift.
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          ++total_its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                            std::abs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = sign_of(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (nn >= 1 && l < nn - 1);
  }
  return {wr.begin() + 1, wr.end()};
}

}  // namespace

SpectrumSummary eig_real_parts(const Matrix& m, const NumericSettings& settings) {
  require_square(m, "eig_real_parts");
  require_finite(m, "eig_real_parts");
  Matrix h = m;
  balance(h);
  reduce_to_hessenberg(h);
  SpectrumSummary out;
  out.real_parts = hessenberg_qr_real_parts(std::move(h), settings.eig_iterations_per_value);
  out.max_real_part = *std::max_element(out.real_parts.begin(), out.real_parts.end());
  return out;
}

bool is_hurwitz(const Matrix& m, const NumericSettings& settings) {
  return eig_real_parts(m, settings).max_real_part <= -settings.hurwitz_margin;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting, Hager's 1-norm condition estimate.

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LuFactors lu_factor(const Matrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  Matrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    const double inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) * inv;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  return f;
}

// Solves A x = b for one column.
std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

// Solves A^T x = b for one column.
std::vector<double> lu_solve_transposed(const LuFactors& f, const std::vector<double>& b) {
  const std::size_t n = f.lu.rows();
  std::vector<double> w = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) w[i] -= f.lu(j, i) * w[j];
    w[i] /= f.lu(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;)
    for (std::size_t j = ii + 1; j < n; ++j) w[ii] -= f.lu(j, ii) * w[j];
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[f.perm[i]] = w[i];
  return x;
}

double norm1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double estimate_inverse_norm1(const LuFactors& f) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<double> y = lu_solve(f, x);
    estimate = 0.0;
    for (double v : y) estimate += std::abs(v);
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = lu_solve_transposed(f, xi);
    std::size_t jmax = 0;
    double zmax = 0.0, ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ztx += z[i] * x[i];
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        jmax = i;
      }
    }
    if (zmax <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return estimate;
}

}  // namespace

Matrix solve_linear(const Matrix& a, const Matrix& b, const NumericSettings& settings) {
  require_square(a, "solve_linear");
  if (b.rows() != a.rows()) throw InputError("solve_linear: right-hand side has wrong row count");
  require_finite(a, "solve_linear");
  require_finite(b, "solve_linear");
  const std::size_t n = a.rows();
  const LuFactors f = lu_factor(a);
  if (f.singular) {
    throw ConditioningError("solve_linear: matrix is exactly singular",
                            std::numeric_limits<double>::infinity());
  }
  const double anorm = norm1(a);
  const double cond = anorm * estimate_inverse_norm1(f);
  if (!(cond * settings.min_reciprocal_condition < 1.0)) {
    throw ConditioningError("solve_linear: matrix is singular to working tolerance", cond);
  }
  Matrix x(n, b.cols());
  std::vector<double> col(n);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, c);
    std::vector<double> xc = lu_solve(f, col);
    // One step of iterative refinement.
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = col[i];
      for (std::size_t j = 0; j < n; ++j) s -= a(i, j) * xc[j];
      resid[i] = s;
    }
    const std::vector<double> dx = lu_solve(f, resid);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = xc[i] + dx[i];
  }
  return x;
}

Matrix inverse(const Matrix& a, const NumericSettings& settings) {
  return solve_linear(a, Matrix::identity(a.rows()), settings);
}

}  // namespace issgd
