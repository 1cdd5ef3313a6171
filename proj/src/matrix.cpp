#include "qss/matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qss {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<complex_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("matrix entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

complex_t ComplexMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace requires a square matrix");
  complex_t t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix addition requires equal shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix subtraction requires equal shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex_t scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const complex_t ark = a(r, k);
      if (ark == complex_t{0.0, 0.0}) continue;
      for (int c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix operator*(complex_t scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ar = 0; ar < a.rows(); ++ar)
    for (int ac = 0; ac < a.cols(); ++ac) {
      const complex_t f = a(ar, ac);
      if (f == complex_t{0.0, 0.0}) continue;
      for (int br = 0; br < b.rows(); ++br)
        for (int bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = f * b(br, bc);
    }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron_all needs at least one factor");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff requires equal shapes");
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

bool is_positive_semidefinite(const ComplexMatrix& m, double floor_tol) {
  if (m.rows() != m.cols()) return false;
  const int n = m.rows();
  // Work on a copy; diagonally pivoted Cholesky. A Hermitian matrix is PSD
  // exactly when the algorithm never meets a pivot below the noise floor.
  ComplexMatrix a = m;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  double scale = 0.0;  // largest pivot seen, sets the rounding-noise floor
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = a(perm[k], perm[k]).real();
    for (int j = k + 1; j < n; ++j) {
      const double d = a(perm[j], perm[j]).real();
      if (d > best) {
        best = d;
        pivot = j;
      }
    }
    std::swap(perm[k], perm[pivot]);

    if (best < floor_tol) return false;
    scale = std::max(scale, best);
    const double noise = 16.0 * n * std::numeric_limits<double>::epsilon() * scale;
    if (best <= noise) {
      // Rank deficiency: eliminating noise-level pivots would only amplify
      // rounding error, so stop and require the residual block to vanish.
      // A genuine negative direction leaves an entry well above the noise.
      const double cap = 16.0 * std::max(noise, std::abs(floor_tol));
      for (int r = k; r < n; ++r)
        for (int c = k; c < n; ++c)
          if (std::abs(a(perm[r], perm[c])) > cap) return false;
      return true;
    }

    const double d = best;
    for (int r = k + 1; r < n; ++r) {
      const complex_t lrk = a(perm[r], perm[k]) / d;
      for (int c = k + 1; c < n; ++c)
        a(perm[r], perm[c]) -= lrk * std::conj(a(perm[c], perm[k]));
    }
  }
  return true;
}

}  // namespace qss
