#pragma once

#include <utility>
#include <vector>

#include "qss/matrix.hpp"
#include "qss/numeric.hpp"

namespace qss {

// Pure state on num_qubits qubits. Qubit 0 is the leftmost tensor factor,
// so the bit of qubit k inside an amplitude index b is (b >> (n-1-k)) & 1.
class StateVector {
 public:
  StateVector(int num_qubits, std::vector<complex_t> amplitudes,
              const NumericPolicy& policy = {});

  int num_qubits() const { return num_qubits_; }
  int dimension() const { return 1 << num_qubits_; }
  const std::vector<complex_t>& amplitudes() const { return amplitudes_; }
  complex_t amplitude(int basis_index) const { return amplitudes_.at(basis_index); }
  double norm() const;

 private:
  int num_qubits_;
  std::vector<complex_t> amplitudes_;
};

// Mixed state; construction validates hermiticity, unit trace and positivity.
class DensityMatrix {
 public:
  DensityMatrix(int num_qubits, ComplexMatrix rho, const NumericPolicy& policy = {});
  static DensityMatrix from_state(const StateVector& psi);

  int num_qubits() const { return num_qubits_; }
  int dimension() const { return 1 << num_qubits_; }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  int num_qubits_;
  ComplexMatrix rho_;
};

// Reduced state on the listed qubits, in the listed order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const NumericPolicy& policy = {});

// <psi|op|psi> resp. Tr(rho op) for a Hermitian observable; the imaginary
// residue must vanish within policy tolerance.
double expectation(const StateVector& psi, const ComplexMatrix& op,
                   const NumericPolicy& policy = {});
double expectation(const DensityMatrix& rho, const ComplexMatrix& op,
                   const NumericPolicy& policy = {});

// Apply a 2x2 unitary to one qubit.
StateVector apply_single_qubit(const StateVector& psi, int qubit, const ComplexMatrix& u);

// Result qubit i carries what input qubit perm[i] carried.
StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm);
ComplexMatrix permute_qubit_operator(const ComplexMatrix& op, const std::vector<int>& perm);

// Probability of reading `outcome` (0 or 1) on `qubit` in the computational
// basis, together with the collapsed normalized state.
std::pair<double, StateVector> project_qubit(const StateVector& psi, int qubit, int outcome);

// Tensor the given single-qubit operators onto their qubits, identity elsewhere.
ComplexMatrix embed_ops(int num_qubits,
                        const std::vector<std::pair<int, ComplexMatrix>>& ops);

}  // namespace qss
