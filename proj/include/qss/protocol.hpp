#pragma once

#include <vector>

#include "qss/bell.hpp"
#include "qss/infotheory.hpp"
#include "qss/states.hpp"

namespace qss {

enum class ScenarioKind { external_eve, dishonest_partners };

// Who cooperates with the eavesdropper: nobody (external attack only), or
// `charlies` partners who forward everything they learn.
struct Scenario {
  ScenarioKind kind = ScenarioKind::external_eve;
  int charlies = 0;

  static Scenario external();
  static Scenario dishonest(int charlies);
  // Requires h = partners - 1 - charlies >= 1 and kind/charlies agreement.
  void validate(int partners) const;
};

// Basis bookkeeping for a GHZ-type round: every partner picks the x or the y
// equatorial basis; a combination is kept exactly when the y-count is even,
// and the product of kept outcomes is then fixed to `sign`. The constructor
// checks the rule against the GHZ state and refuses to build otherwise.
struct SiftRule {
  int parties = 0;
  std::vector<bool> keep;  // indexed by basis mask, bit p set = party p picks y
  std::vector<int> sign;   // +1 / -1 on kept masks, 0 elsewhere

  double keep_fraction() const;
};

SiftRule sift_rule(int parties);

// One row of the security analysis: informations of the authorized grouping
// (dealer vs all partners) and the unauthorized one (dealer vs cooperating
// partners plus eavesdropper), with the matching Bell maxima when computed.
struct SecurityReport {
  double phi = 0.0;
  double i_a = 0.0;
  double i_u = 0.0;
  double s_auth = 0.0;
  double s_unauth = 0.0;
  int m_auth = 0;
  int m_unauth = 0;
  bool genuine_auth = false;
  bool genuine_unauth = false;
  double sift_probability = 0.0;
};

// Exact information quantities of one protocol round under the given attack:
// every partner measures x or y, kept combinations are weighted equally, the
// eavesdropper measures her stored qubit along the announced-bases direction,
// and I_a / I_u are averaged per-combination mutual informations. The Bell
// fields are left at zero; security_bell_table fills them.
SecurityReport run_protocol(const AttackParams& p, const Scenario& s);

struct EveMeasurement {
  BlochVector direction;
  double information;  // bits about the dealer's outcome for the unauthorized side
};

// Brute-force search (1 degree grid over the sphere, locally refined to 0.01
// degrees) for the stored-qubit measurement maximizing the unauthorized
// side's information, given the partners' announced bases (0 = x, 1 = y).
// Exists to confirm the closed-form policy used by run_protocol.
EveMeasurement eve_measurement(const StateVector& state, const Scenario& s,
                               const std::vector<int>& announced_bases);

// Equatorial direction the protocol assumes for the eavesdropper: minus the
// sum of the dealer's and the cooperating partners' announced angles.
BlochVector eve_policy_direction(const Scenario& s, const std::vector<int>& announced_bases);

// Diagnostic twin of run_protocol's I_a with the partners' outcomes collapsed
// to their product before computing the information; never exceeds I_a.
double authorized_parity_information(const AttackParams& p, const Scenario& s);

// Root of I_a(phi) - I_u(phi) on [0, pi/2] by bisection; throws if the
// endpoints do not bracket a sign change.
double find_threshold(int partners, const Scenario& s, double tol);

// run_protocol plus see-saw Bell maxima of both groupings' reduced states:
// the authorized partners' N qubits, and the dealer + cooperating partners +
// eavesdropper qubits (N - h + 1 of them).
std::vector<SecurityReport> security_bell_table(int partners, const Scenario& s,
                                                const std::vector<double>& phi_grid,
                                                const MaximizeOptions& opts = {});

struct CounterexamplePoint {
  double alpha = 0.0;
  double s_abc = 0.0;  // qubits {0,1,2}
  double s_bcd = 0.0;  // qubits {1,2,3}
};

// Bell maxima of both overlapping three-qubit margins of the four-qubit
// counterexample family.
std::vector<CounterexamplePoint> counterexample_scan(const std::vector<double>& alpha_grid,
                                                     const MaximizeOptions& opts = {});

}  // namespace qss
