#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qss/bloch.hpp"
#include "qss/quantum_state.hpp"

namespace qss {

// One party's share of a measurement round: which qubits it reads and, per
// qubit, the basis options it may pick (one option means a fixed basis).
// With parity_aggregate the party reports only the product of its outcomes.
struct PartyMeasurement {
  std::string label;
  std::vector<int> qubits;
  std::vector<std::vector<BlochVector>> choices;
  bool parity_aggregate = false;
};

// Measurement plan for a whole round. The sifting predicate sees the chosen
// option index of every measured qubit, flattened in party order; rounds it
// rejects are discarded and the remaining table is renormalized.
struct MeasurementPlan {
  std::vector<PartyMeasurement> parties;
  std::function<bool(const std::vector<int>&)> sift;
};

// Exact outcome probabilities after sifting. Outcome tuples hold one entry
// per party outcome (+1/-1), parties contributing either one entry per qubit
// or a single parity entry; rows are sorted for stable iteration.
struct JointDistribution {
  std::vector<std::string> parties;
  std::vector<int> outcomes_per_party;
  double sift_probability = 1.0;
  std::vector<std::pair<std::vector<int>, double>> table;
};

// Born-rule evaluation: each qubit is rotated into its chosen basis and the
// squared amplitudes are accumulated, exactly. Basis options are equally
// likely. Throws if every basis combination is sifted away.
JointDistribution joint_distribution(const StateVector& state, const MeasurementPlan& plan);

// Seeded sampling twin of joint_distribution for protocol-realism demos:
// empirical frequencies over `trials` rounds, same table shape. The exact
// path remains the source of truth; agreement is a test concern.
JointDistribution sample_distribution(const StateVector& state, const MeasurementPlan& plan,
                                      int trials, std::uint64_t seed);

// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(const std::vector<double>& probs);

// Probabilities of the group's combined outcome, marginalizing the rest.
// Group entries are party labels; ordering follows the table's party order.
std::vector<double> marginal_probabilities(const JointDistribution& d,
                                           const std::vector<std::string>& group);

// H(X) + H(Y) - H(XY) in bits; groups must not overlap.
double mutual_information(const JointDistribution& d, const std::vector<std::string>& group_x,
                          const std::vector<std::string>& group_y);

// H(target | given) = H(target u given) - H(given); overlap is tolerated
// (conditioning on part of the target is well defined and just removes it).
double conditional_entropy(const JointDistribution& d, const std::vector<std::string>& target,
                           const std::vector<std::string>& given);

// {"parties": [...], "sift_probability": p, "table": [{"outcome": [...], "p": ...}]}
std::string distribution_to_json(const JointDistribution& d);

}  // namespace qss
