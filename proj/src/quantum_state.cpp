#include "qss/quantum_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qss/numeric.hpp"

namespace qss {

namespace {

constexpr int kMaxQubits = 7;

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("qubit count must lie in [1, 7]");
}

void check_qubit_index(int n, int qubit) {
  if (qubit < 0 || qubit >= n) throw std::out_of_range("qubit index out of range");
}

// Rearranges the bits of idx so that the bit of result qubit i equals the
// bit of source qubit perm[i].
int permuted_index(int idx, const std::vector<int>& perm, int n) {
  int out = 0;
  for (int i = 0; i < n; ++i) out |= ((idx >> (n - 1 - perm[i])) & 1) << (n - 1 - i);
  return out;
}

void check_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation length must equal qubit count");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw std::invalid_argument("permutation must list each qubit exactly once");
    seen[p] = true;
  }
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<complex_t> amplitudes,
                         const NumericPolicy& policy)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  if (amplitudes_.size() != static_cast<std::size_t>(1) << num_qubits_)
    throw std::invalid_argument("amplitude count must be 2^num_qubits");
  if (std::abs(norm() - 1.0) > policy.state_norm)
    throw std::invalid_argument("state vector is not normalized");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix::DensityMatrix(int num_qubits, ComplexMatrix rho, const NumericPolicy& policy)
    : num_qubits_(num_qubits), rho_(std::move(rho)) {
  check_qubit_count(num_qubits_);
  const int d = 1 << num_qubits_;
  if (rho_.rows() != d || rho_.cols() != d)
    throw std::invalid_argument("density matrix dimension must be 2^num_qubits");
  if (!rho_.is_hermitian(policy.hermiticity))
    throw std::invalid_argument("density matrix must be Hermitian");
  if (std::abs(rho_.trace() - complex_t{1.0, 0.0}) > policy.trace_one)
    throw std::invalid_argument("density matrix must have unit trace");
  if (!is_positive_semidefinite(rho_, policy.psd_floor))
    throw std::invalid_argument("density matrix must be positive semidefinite");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const int d = psi.dimension();
  ComplexMatrix rho(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) rho(r, c) = psi.amplitude(r) * std::conj(psi.amplitude(c));
  return DensityMatrix(psi.num_qubits(), std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep,
                            const NumericPolicy& policy) {
  const int n = rho.num_qubits();
  const int k = static_cast<int>(keep.size());
  if (k < 1 || k > n) throw std::invalid_argument("partial_trace keep list has bad size");
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    check_qubit_index(n, q);
    if (kept[q]) throw std::invalid_argument("partial_trace keep list repeats a qubit");
    kept[q] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!kept[q]) traced.push_back(q);

  const int t = n - k;
  const int dk = 1 << k;
  const int dt = 1 << t;

  // Scatter the bits of a compact keep index / trace index into a full index.
  auto full_index = [&](int keep_bits, int trace_bits) {
    int idx = 0;
    for (int i = 0; i < k; ++i)
      idx |= ((keep_bits >> (k - 1 - i)) & 1) << (n - 1 - keep[i]);
    for (int i = 0; i < t; ++i)
      idx |= ((trace_bits >> (t - 1 - i)) & 1) << (n - 1 - traced[i]);
    return idx;
  };

  ComplexMatrix out(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      complex_t sum = 0.0;
      for (int tr = 0; tr < dt; ++tr)
        sum += rho.matrix()(full_index(r, tr), full_index(c, tr));
      out(r, c) = sum;
    }
  return DensityMatrix(k, std::move(out), policy);
}

namespace {

double real_with_residue_check(complex_t value, double tol, const char* what) {
  if (std::abs(value.imag()) > tol)
    throw std::domain_error(std::string(what) + " has a non-real value");
  return value.real();
}

}  // namespace

double expectation(const StateVector& psi, const ComplexMatrix& op,
                   const NumericPolicy& policy) {
  const int d = psi.dimension();
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("observable dimension does not match state");
  if (!op.is_hermitian(policy.obs_hermiticity))
    throw std::invalid_argument("observable must be Hermitian");
  complex_t acc = 0.0;
  for (int r = 0; r < d; ++r) {
    complex_t row = 0.0;
    for (int c = 0; c < d; ++c) row += op(r, c) * psi.amplitude(c);
    acc += std::conj(psi.amplitude(r)) * row;
  }
  return real_with_residue_check(acc, policy.imag_residue, "expectation value");
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op,
                   const NumericPolicy& policy) {
  const int d = rho.dimension();
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("observable dimension does not match state");
  if (!op.is_hermitian(policy.obs_hermiticity))
    throw std::invalid_argument("observable must be Hermitian");
  complex_t acc = 0.0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) acc += rho.matrix()(r, c) * op(c, r);
  return real_with_residue_check(acc, policy.imag_residue, "expectation value");
}

StateVector apply_single_qubit(const StateVector& psi, int qubit, const ComplexMatrix& u) {
  const int n = psi.num_qubits();
  check_qubit_index(n, qubit);
  if (u.rows() != 2 || u.cols() != 2)
    throw std::invalid_argument("single-qubit operator must be 2x2");

  std::vector<complex_t> amps = psi.amplitudes();
  const int stride = 1 << (n - 1 - qubit);
  const int d = psi.dimension();
  for (int base = 0; base < d; ++base) {
    if (base & stride) continue;
    const complex_t a0 = amps[base];
    const complex_t a1 = amps[base | stride];
    amps[base] = u(0, 0) * a0 + u(0, 1) * a1;
    amps[base | stride] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  return StateVector(n, std::move(amps));
}

StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm) {
  const int n = psi.num_qubits();
  check_permutation(perm, n);
  std::vector<complex_t> amps(psi.dimension());
  for (int idx = 0; idx < psi.dimension(); ++idx)
    amps[permuted_index(idx, perm, n)] = psi.amplitude(idx);
  return StateVector(n, std::move(amps));
}

ComplexMatrix permute_qubit_operator(const ComplexMatrix& op, const std::vector<int>& perm) {
  const int d = op.rows();
  if (op.cols() != d) throw std::invalid_argument("operator must be square");
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw std::invalid_argument("operator dimension must be a power of two");
  check_permutation(perm, n);
  ComplexMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const int pr = permuted_index(r, perm, n);
    for (int c = 0; c < d; ++c) out(pr, permuted_index(c, perm, n)) = op(r, c);
  }
  return out;
}

std::pair<double, StateVector> project_qubit(const StateVector& psi, int qubit, int outcome) {
  const int n = psi.num_qubits();
  check_qubit_index(n, qubit);
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("projection outcome must be 0 or 1");

  const int shift = n - 1 - qubit;
  double prob = 0.0;
  for (int idx = 0; idx < psi.dimension(); ++idx)
    if (((idx >> shift) & 1) == outcome) prob += std::norm(psi.amplitude(idx));

  if (prob < 1e-14)
    throw std::domain_error("cannot collapse onto an outcome of vanishing probability");

  const double scale = 1.0 / std::sqrt(prob);
  std::vector<complex_t> amps(psi.dimension(), complex_t{0.0, 0.0});
  for (int idx = 0; idx < psi.dimension(); ++idx)
    if (((idx >> shift) & 1) == outcome) amps[idx] = psi.amplitude(idx) * scale;
  return {prob, StateVector(n, std::move(amps))};
}

ComplexMatrix embed_ops(int num_qubits,
                        const std::vector<std::pair<int, ComplexMatrix>>& ops) {
  check_qubit_count(num_qubits);
  std::vector<const ComplexMatrix*> slot(num_qubits, nullptr);
  for (const auto& [qubit, op] : ops) {
    check_qubit_index(num_qubits, qubit);
    if (op.rows() != 2 || op.cols() != 2)
      throw std::invalid_argument("embedded operators must be 2x2");
    if (slot[qubit]) throw std::invalid_argument("embed_ops got two operators for one qubit");
    slot[qubit] = &op;
  }
  static const ComplexMatrix id2 = ComplexMatrix::identity(2);
  std::vector<ComplexMatrix> factors;
  factors.reserve(num_qubits);
  for (int q = 0; q < num_qubits; ++q) factors.push_back(slot[q] ? *slot[q] : id2);
  return kron_all(factors);
}

}  // namespace qss
