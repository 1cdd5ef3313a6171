#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "qss/bloch.hpp"
#include "qss/matrix.hpp"
#include "qss/quantum_state.hpp"

namespace qss {

struct SettingPair {
  BlochVector a;
  BlochVector a_prime;
};

// One observable pair per qubit; qubit k of the measured state uses pair k.
struct MeasurementSettings {
  std::vector<SettingPair> qubits;
  int size() const { return static_cast<int>(qubits.size()); }
};

// Two-qubit Bell operator
//   (s_a1 + s_a1')  x  s_a2  +  (s_a1 - s_a1')  x  s_a2'
// where s_v is the spin observable along v. Requires exactly two pairs.
ComplexMatrix chsh_operator(const MeasurementSettings& s);

// Recursively built M-qubit Bell operator plus its bookkeeping. The recursion
// adds each new qubit as the leftmost tensor factor of `recursion_literal`;
// factor_to_qubit maps literal factor positions to qubit labels, and `matrix`
// is the identical operator with factor i acting on qubit i.
struct MkOperator {
  ComplexMatrix matrix;
  ComplexMatrix recursion_literal;
  std::vector<int> factor_to_qubit;
};

// 2 <= M <= 6. Base case M=2 equals chsh_operator; step
//   B_m = ((s_am + s_am')/2) x B_{m-1}  +  ((s_am - s_am')/2) x B'_{m-1}
// with B' obtained by swapping every a_k with a_k'.
MkOperator mk_operator(const MeasurementSettings& s);

// Largest Bell value of a two-qubit state in closed form: with
// T_ij = Tr(rho s_i x s_j) over i,j in {x,y,z}, returns 2 sqrt(t1 + t2)
// where t1 >= t2 are the top eigenvalues of T^T T. Cross-validated against
// the see-saw optimizer in tests; the two routes are kept independent.
double horodecki_S(const DensityMatrix& rho);

struct MaximizeOptions {
  int restarts = 50;
  int max_iters = 500;  // see-saw sweeps per restart
  double tol = 1e-10;
  std::uint64_t seed = 1;
};

struct BellResult {
  double value = 0.0;
  MeasurementSettings settings;
  int restarts_used = 0;
  int iterations = 0;  // sweeps used by the winning restart
  bool converged = false;
  std::vector<double> sweep_values;  // winning restart, one entry per sweep
};

// See-saw ascent over measurement directions: with all other settings fixed,
// the Bell expectation is linear in each qubit's a_k (and a_k'), so the best
// direction is the normalized coefficient vector. Sweeps are monotone;
// restart r draws its starting settings from a stream derived from (seed, r),
// so results do not depend on scheduling. Throws if the result ever exceeds
// the 2^{(M+1)/2} quantum ceiling beyond slack, which would mean a bug.
BellResult mk_maximize(const DensityMatrix& rho, const MaximizeOptions& opts = {});

enum class ViolationKind { none, lhv, genuine };

struct ViolationClass {
  double value = 0.0;
  double lhv_bound = 0.0;      // 2, product of single-qubit strategies
  double genuine_bound = 0.0;  // 2^{M/2}, reachable without full entanglement
  ViolationKind kind = ViolationKind::none;
};

// Strict comparisons: value must exceed a bound to earn its class.
ViolationClass classify_violation(double value, int m);

// Closed-form Bell values of the two overlapping pairs (qubits {0,1} and
// {0,2}) of a three-qubit state. Their sum never exceeds 4.
std::pair<double, double> monogamy_pair(const DensityMatrix& rho);

// Builds V = B_01 x 1 + B_02 on three qubits from the eight directions
// (a, a', b, b') for the first pair and (A, A', c, c') for the second, then
// checks that (V^2/4 - 2*1)^2 is a multiple f of the identity and returns f.
// A non-scalar result throws: it cannot arise from valid inputs.
double v_operator_identity(const std::array<BlochVector, 8>& vectors);

}  // namespace qss
