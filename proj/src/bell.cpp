#include "qss/bell.hpp"

#include <cmath>
#include <stdexcept>

#include "qss/numeric.hpp"
#include "qss/rng.hpp"
#include "qss/sym3.hpp"

namespace qss {

namespace {

void check_settings_size(const MeasurementSettings& s, int min_m, int max_m) {
  if (s.size() < min_m || s.size() > max_m)
    throw std::invalid_argument("settings must cover between 2 and 6 qubits");
}

// Raw builder used by both the public operator and the optimizer. Accepts
// arbitrary (even zero) vectors via the linear Pauli combination, which is
// what lets the see-saw isolate per-direction coefficients exactly.
struct MkPair {
  ComplexMatrix plain;
  ComplexMatrix swapped;  // every a_k exchanged with a_k'
};

MkPair mk_pair_raw(const std::vector<BlochVector>& a, const std::vector<BlochVector>& ap) {
  const int m = static_cast<int>(a.size());
  const ComplexMatrix s1 = pauli_linear(a[0]);
  const ComplexMatrix s1p = pauli_linear(ap[0]);
  const ComplexMatrix s2 = pauli_linear(a[1]);
  const ComplexMatrix s2p = pauli_linear(ap[1]);

  MkPair out;
  out.plain = kron(s1 + s1p, s2) + kron(s1 - s1p, s2p);
  out.swapped = kron(s1p + s1, s2p) + kron(s1p - s1, s2);
  for (int k = 2; k < m; ++k) {
    const ComplexMatrix half_sum = complex_t{0.5, 0.0} * (pauli_linear(a[k]) + pauli_linear(ap[k]));
    const ComplexMatrix half_diff = complex_t{0.5, 0.0} * (pauli_linear(a[k]) - pauli_linear(ap[k]));
    // Appending on the right keeps factor i on qubit i; the sum-of-products
    // expansion is the same as for leftmost appending up to factor order.
    ComplexMatrix next = kron(out.plain, half_sum) + kron(out.swapped, half_diff);
    ComplexMatrix next_swapped = kron(out.swapped, half_sum) - kron(out.plain, half_diff);
    out.plain = std::move(next);
    out.swapped = std::move(next_swapped);
  }
  return out;
}

void split_settings(const MeasurementSettings& s, std::vector<BlochVector>& a,
                    std::vector<BlochVector>& ap, bool validate_units) {
  a.clear();
  ap.clear();
  for (const auto& pair : s.qubits) {
    if (validate_units) {
      pauli_op(pair.a);  // throws on non-unit input
      pauli_op(pair.a_prime);
    }
    a.push_back(pair.a);
    ap.push_back(pair.a_prime);
  }
}

}  // namespace

ComplexMatrix chsh_operator(const MeasurementSettings& s) {
  check_settings_size(s, 2, 2);
  const ComplexMatrix s1 = pauli_op(s.qubits[0].a);
  const ComplexMatrix s1p = pauli_op(s.qubits[0].a_prime);
  const ComplexMatrix s2 = pauli_op(s.qubits[1].a);
  const ComplexMatrix s2p = pauli_op(s.qubits[1].a_prime);
  return kron(s1 + s1p, s2) + kron(s1 - s1p, s2p);
}

MkOperator mk_operator(const MeasurementSettings& s) {
  check_settings_size(s, 2, 6);
  std::vector<BlochVector> a, ap;
  split_settings(s, a, ap, true);

  MkOperator out;
  out.matrix = mk_pair_raw(a, ap).plain;

  // Literal recursion: qubit k becomes the leftmost factor at step k.
  const std::vector<BlochVector> a2(a.begin(), a.begin() + 2), ap2(ap.begin(), ap.begin() + 2);
  MkPair lit = mk_pair_raw(a2, ap2);
  out.factor_to_qubit = {0, 1};
  for (int k = 2; k < s.size(); ++k) {
    const ComplexMatrix half_sum = complex_t{0.5, 0.0} * (pauli_linear(a[k]) + pauli_linear(ap[k]));
    const ComplexMatrix half_diff = complex_t{0.5, 0.0} * (pauli_linear(a[k]) - pauli_linear(ap[k]));
    ComplexMatrix next = kron(half_sum, lit.plain) + kron(half_diff, lit.swapped);
    ComplexMatrix next_swapped = kron(half_sum, lit.swapped) - kron(half_diff, lit.plain);
    lit.plain = std::move(next);
    lit.swapped = std::move(next_swapped);
    out.factor_to_qubit.insert(out.factor_to_qubit.begin(), k);
  }
  out.recursion_literal = std::move(lit.plain);
  return out;
}

double horodecki_S(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2)
    throw std::invalid_argument("closed-form Bell value needs a two-qubit state");
  const ComplexMatrix* paulis[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
  double t[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = expectation(rho, kron(*paulis[i], *paulis[j]));

  std::array<std::array<double, 3>, 3> gram{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) sum += t[k][i] * t[k][j];
      gram[i][j] = sum;
    }
  const auto eig = sym3_eigenvalues(gram);
  return 2.0 * std::sqrt(eig[0] + eig[1]);
}

namespace {

constexpr double kDegenerateCoefficient = 1e-13;

BlochVector coefficient_direction(const DensityMatrix& rho, std::vector<BlochVector>& a,
                                  std::vector<BlochVector>& ap, bool primed, int k) {
  std::vector<BlochVector>& slot = primed ? ap : a;
  std::vector<BlochVector>& other = primed ? a : ap;
  const BlochVector kept_slot = slot[k];
  const BlochVector kept_other = other[k];
  other[k] = BlochVector{0.0, 0.0, 0.0};

  BlochVector g;
  static const BlochVector axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  double* comps[3] = {&g.x, &g.y, &g.z};
  for (int i = 0; i < 3; ++i) {
    slot[k] = axes[i];
    *comps[i] = expectation(rho, mk_pair_raw(a, ap).plain);
  }
  slot[k] = kept_slot;
  other[k] = kept_other;
  return g;
}

}  // namespace

BellResult mk_maximize(const DensityMatrix& rho, const MaximizeOptions& opts) {
  const int m = rho.num_qubits();
  if (m < 2 || m > 6)
    throw std::invalid_argument("see-saw maximization covers 2 to 6 qubits");
  if (opts.restarts < 1 || opts.max_iters < 1 || !(opts.tol > 0.0))
    throw std::invalid_argument("maximize options must be positive");

  const double cap = std::exp2(0.5 * (m + 1));
  BellResult best;
  best.value = -1.0;

  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(Rng::derive(opts.seed, static_cast<std::uint64_t>(restart)));
    std::vector<BlochVector> a(m), ap(m);
    for (int k = 0; k < m; ++k) {
      a[k] = random_unit_vector(rng);
      ap[k] = random_unit_vector(rng);
    }

    std::vector<double> sweep_values;
    double value = expectation(rho, mk_pair_raw(a, ap).plain);
    bool converged = false;
    int sweeps = 0;
    for (; sweeps < opts.max_iters; ++sweeps) {
      for (int k = 0; k < m; ++k) {
        const BlochVector g = coefficient_direction(rho, a, ap, false, k);
        if (g.norm() > kDegenerateCoefficient) a[k] = g.normalized();
        const BlochVector gp = coefficient_direction(rho, a, ap, true, k);
        if (gp.norm() > kDegenerateCoefficient) ap[k] = gp.normalized();
      }
      const double swept = expectation(rho, mk_pair_raw(a, ap).plain);
      sweep_values.push_back(swept);
      if (swept - value < opts.tol) {
        value = std::max(value, swept);
        converged = true;
        ++sweeps;
        break;
      }
      value = swept;
    }

    if (value > cap + NumericPolicy{}.bell_cap_slack)
      throw std::logic_error("Bell value exceeded the quantum ceiling; optimizer is broken");

    if (value > best.value) {
      best.value = value;
      best.settings.qubits.clear();
      for (int k = 0; k < m; ++k) best.settings.qubits.push_back({a[k], ap[k]});
      best.iterations = sweeps;
      best.converged = converged;
      best.sweep_values = std::move(sweep_values);
    }
  }
  best.restarts_used = opts.restarts;
  return best;
}

ViolationClass classify_violation(double value, int m) {
  if (m < 2) throw std::invalid_argument("violation classes need at least 2 qubits");
  ViolationClass out;
  out.value = value;
  out.lhv_bound = 2.0;
  out.genuine_bound = std::exp2(0.5 * m);
  if (value > out.genuine_bound)
    out.kind = ViolationKind::genuine;
  else if (value > out.lhv_bound)
    out.kind = ViolationKind::lhv;
  else
    out.kind = ViolationKind::none;
  return out;
}

std::pair<double, double> monogamy_pair(const DensityMatrix& rho) {
  if (rho.num_qubits() != 3)
    throw std::invalid_argument("monogamy_pair needs a three-qubit state");
  const double s01 = horodecki_S(partial_trace(rho, {0, 1}));
  const double s02 = horodecki_S(partial_trace(rho, {0, 2}));
  return {s01, s02};
}

double v_operator_identity(const std::array<BlochVector, 8>& vectors) {
  for (const auto& v : vectors) pauli_op(v);  // unit checks

  const auto& [a, a_prime, b, b_prime, a2, a2_prime, c, c_prime] = vectors;
  const ComplexMatrix id2 = ComplexMatrix::identity(2);

  MeasurementSettings first;
  first.qubits = {{a, a_prime}, {b, b_prime}};
  const ComplexMatrix v01 = kron(chsh_operator(first), id2);

  const ComplexMatrix sum_a = pauli_op(a2) + pauli_op(a2_prime);
  const ComplexMatrix diff_a = pauli_op(a2) - pauli_op(a2_prime);
  const ComplexMatrix v02 =
      kron_all({sum_a, id2, pauli_op(c)}) + kron_all({diff_a, id2, pauli_op(c_prime)});

  const ComplexMatrix v = v01 + v02;
  ComplexMatrix w = complex_t{0.25, 0.0} * (v * v);
  w -= complex_t{2.0, 0.0} * ComplexMatrix::identity(8);
  w = w * w;

  const double f = (w.trace() / complex_t{8.0, 0.0}).real();
  ComplexMatrix residual = w - complex_t{f, 0.0} * ComplexMatrix::identity(8);
  if (residual.max_abs() > NumericPolicy{}.scalar_identity)
    throw std::logic_error("squared-and-shifted pair operator is not scalar; construction bug");
  return f;
}

}  // namespace qss
