#include "qss/bloch.hpp"

#include <cmath>
#include <stdexcept>

#include "qss/numeric.hpp"

namespace qss {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return {x / n, y / n, z / n};
}

BlochVector operator+(const BlochVector& a, const BlochVector& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

BlochVector operator-(const BlochVector& a, const BlochVector& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

BlochVector operator*(double s, const BlochVector& v) { return {s * v.x, s * v.y, s * v.z}; }

double dot(const BlochVector& a, const BlochVector& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

BlochVector equatorial(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

BlochVector random_unit_vector(Rng& rng) {
  // Gaussian components give the rotation-invariant distribution.
  for (;;) {
    BlochVector v{rng.normal(), rng.normal(), rng.normal()};
    const double n = v.norm();
    if (n > 1e-6) return {v.x / n, v.y / n, v.z / n};
  }
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m(2, 2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}});
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m(2, 2, {{0.0, 0.0}, {0.0, -1.0}, {0.0, 1.0}, {0.0, 0.0}});
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m(2, 2, {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}});
  return m;
}

ComplexMatrix pauli_linear(const BlochVector& a) {
  ComplexMatrix m(2, 2);
  m(0, 0) = complex_t{a.z, 0.0};
  m(0, 1) = complex_t{a.x, -a.y};
  m(1, 0) = complex_t{a.x, a.y};
  m(1, 1) = complex_t{-a.z, 0.0};
  return m;
}

ComplexMatrix pauli_op(const BlochVector& a, const NumericPolicy& policy) {
  if (std::abs(a.norm() - 1.0) > policy.unit_vector)
    throw std::invalid_argument("measurement direction must be a unit vector");
  return pauli_linear(a);
}

ComplexMatrix pauli_basis_unitary(const BlochVector& a, const NumericPolicy& policy) {
  if (std::abs(a.norm() - 1.0) > policy.unit_vector)
    throw std::invalid_argument("measurement direction must be a unit vector");
  const double theta = std::atan2(std::hypot(a.x, a.y), a.z);
  const double phi = std::atan2(a.y, a.x);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const complex_t eip = std::polar(1.0, phi);
  // Rows are <+a| and <-a| for the eigenvectors
  //   |+a> = (cos(t/2), e^{i phi} sin(t/2)),  |-a> = (-e^{-i phi} sin(t/2), cos(t/2)).
  ComplexMatrix u(2, 2);
  u(0, 0) = complex_t{c, 0.0};
  u(0, 1) = std::conj(eip) * s;
  u(1, 0) = -eip * s;
  u(1, 1) = complex_t{c, 0.0};
  return u;
}

}  // namespace qss
