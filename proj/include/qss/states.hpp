#pragma once

#include <string>
#include <vector>

#include "qss/quantum_state.hpp"
#include "qss/rng.hpp"

namespace qss {

// Parameters of the stored-qubit attack on an N-partner key distribution
// round: the dealer plus N-1 partners share a GHZ-type resource, h of the
// partners stay honest, and phi in [0, pi/2] sets the attack strength.
struct AttackParams {
  int partners = 2;        // N, dealer included
  int honest_partners = 1; // h, 1 <= h <= N-1
  double phi = 0.0;

  int dishonest_partners() const { return partners - 1 - honest_partners; }
  int total_qubits() const { return partners + 1; }
  void validate() const;
};

// Qubit roles inside the attacked state, in ket order:
// dealer, then the dishonest partners, then the honest ones, then the
// eavesdropper's stored qubit.
struct QubitLayout {
  int dealer = 0;
  std::vector<int> dishonest;
  std::vector<int> honest;
  int eavesdropper = 0;
  int total_qubits = 0;
};

QubitLayout attack_layout(const AttackParams& p);

// (|00> + |11>)/sqrt(2).
StateVector epr_phi_plus();

// (|0...0> + |1...1>)/sqrt(2) on m qubits, 2 <= m <= 7.
StateVector ghz(int m);

// Three-qubit state after the stored-qubit attack on one EPR pair,
// qubit order dealer, partner, eavesdropper:
//   (|0>|00> + cos(phi)|1>|10> + sin(phi)|1>|01>)/sqrt(2).
StateVector attack_two_party(double phi);

// (N+1)-qubit generalization in attack_layout order. Three amplitudes:
// 1/sqrt(2) on |0...0>, cos(phi)/sqrt(2) on all partners flipped with the
// eavesdropper idle, sin(phi)/sqrt(2) on dealer-plus-dishonest flipped with
// the eavesdropper's flag set.
StateVector attack_qss(const AttackParams& p);

// Four-qubit state whose three-qubit margins can both carry a genuine
// multipartite Bell violation:
//   cos(a)(|0011>+|1100>+i|0101>+i|1010>)/2 + sin(a)(i|1001>+|1111>)/sqrt(2).
StateVector counterexample_state(double alpha);

// Gaussian-amplitude pure state (Haar-like direction), and a mixed state
// obtained by purifying on twice the qubits and tracing the ancilla away.
StateVector random_pure_state(int num_qubits, Rng& rng);
DensityMatrix random_mixed_state(int num_qubits, Rng& rng);

// Mini-language used by the command line:
//   ghz:M | epr | attack:N=<int>,h=<int>,phi=<float>
//   | counterexample:alpha=<float> | file:<path>
// where the file holds JSON {"num_qubits": n, "amplitudes": [[re,im], ...]}.
StateVector parse_state(const std::string& text);
StateVector load_state_json(const std::string& path);

}  // namespace qss
