#pragma once

#include <complex>
#include <vector>

namespace qss {

using complex_t = std::complex<double>;

// Dense complex matrix, row-major. Small by design: every operator in this
// project lives on at most 7 qubits (dimension 128).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<complex_t> entries);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  complex_t& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  const complex_t& operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  const std::vector<complex_t>& entries() const { return entries_; }

  ComplexMatrix dagger() const;
  complex_t trace() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex_t scale);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<complex_t> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complex_t scale, ComplexMatrix m);

// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// Left-to-right Kronecker product of a factor list.
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);

// Largest entrywise |a - b|; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Pivoted-Cholesky positive-semidefiniteness test for a Hermitian matrix.
// floor_tol is the admissible negative slack (e.g. 1e-10).
bool is_positive_semidefinite(const ComplexMatrix& m, double floor_tol);

}  // namespace qss
