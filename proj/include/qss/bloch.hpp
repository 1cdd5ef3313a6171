#pragma once

#include "qss/matrix.hpp"
#include "qss/numeric.hpp"
#include "qss/rng.hpp"

namespace qss {

// Real unit vector on the Bloch sphere describing a measurement direction.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  BlochVector normalized() const;
};

BlochVector operator+(const BlochVector& a, const BlochVector& b);
BlochVector operator-(const BlochVector& a, const BlochVector& b);
BlochVector operator*(double s, const BlochVector& v);
double dot(const BlochVector& a, const BlochVector& b);

// Direction in the x-y plane at the given azimuthal angle.
BlochVector equatorial(double angle);

// Uniform direction on the sphere, drawn from the supplied generator.
BlochVector random_unit_vector(Rng& rng);

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

// a.x * X + a.y * Y + a.z * Z for an arbitrary real vector (no unit check).
// This is what the optimizer uses to probe coefficient directions.
ComplexMatrix pauli_linear(const BlochVector& a);

// Spin observable along a unit direction; throws if |a| strays from 1.
ComplexMatrix pauli_op(const BlochVector& a, const NumericPolicy& policy = {});

// 2x2 unitary whose rows are the +1 and -1 eigenvectors of pauli_op(a),
// so U|psi> expresses |psi> in that measurement basis.
ComplexMatrix pauli_basis_unitary(const BlochVector& a, const NumericPolicy& policy = {});

}  // namespace qss
