#include "qss/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "qss/rng.hpp"

namespace qss {

namespace {

struct PlanInfo {
  std::vector<int> slot_qubit;     // measured state qubit per flattened slot
  std::vector<int> option_counts;  // basis options per slot
  std::vector<int> party_offsets;  // start of each party's outcome block
  std::vector<int> outcomes_per_party;
};

PlanInfo analyze_plan(const StateVector& state, const MeasurementPlan& plan) {
  if (plan.parties.empty()) throw std::invalid_argument("measurement plan has no parties");
  PlanInfo info;
  std::set<std::string> labels;
  std::set<int> used_qubits;
  int offset = 0;
  for (const auto& party : plan.parties) {
    if (party.label.empty()) throw std::invalid_argument("party label must be nonempty");
    if (!labels.insert(party.label).second)
      throw std::invalid_argument("duplicate party label '" + party.label + "'");
    if (party.qubits.empty())
      throw std::invalid_argument("party '" + party.label + "' measures no qubits");
    if (party.choices.size() != party.qubits.size())
      throw std::invalid_argument("party '" + party.label + "' needs one option list per qubit");
    for (std::size_t i = 0; i < party.qubits.size(); ++i) {
      const int q = party.qubits[i];
      if (q < 0 || q >= state.num_qubits())
        throw std::invalid_argument("measured qubit index out of range");
      if (!used_qubits.insert(q).second)
        throw std::invalid_argument("two parties measure the same qubit");
      if (party.choices[i].empty())
        throw std::invalid_argument("every measured qubit needs at least one basis option");
      info.slot_qubit.push_back(q);
      info.option_counts.push_back(static_cast<int>(party.choices[i].size()));
    }
    info.party_offsets.push_back(offset);
    const int block = party.parity_aggregate ? 1 : static_cast<int>(party.qubits.size());
    info.outcomes_per_party.push_back(block);
    offset += block;
  }
  return info;
}

const BlochVector& chosen_direction(const MeasurementPlan& plan, int slot,
                                    const std::vector<int>& combo) {
  int s = 0;
  for (const auto& party : plan.parties)
    for (std::size_t i = 0; i < party.qubits.size(); ++i, ++s)
      if (s == slot) return party.choices[i][combo[slot]];
  throw std::logic_error("slot index out of range");
}

using OutcomeTable = std::map<std::vector<int>, double>;

// Exact Born probabilities for one basis-choice combination.
OutcomeTable combo_distribution(const StateVector& state, const MeasurementPlan& plan,
                                const PlanInfo& info, const std::vector<int>& combo) {
  StateVector rotated = state;
  for (std::size_t s = 0; s < info.slot_qubit.size(); ++s)
    rotated = apply_single_qubit(rotated, info.slot_qubit[s],
                                 pauli_basis_unitary(chosen_direction(plan, s, combo)));

  const int n = state.num_qubits();
  OutcomeTable table;
  std::vector<int> key;
  for (int idx = 0; idx < rotated.dimension(); ++idx) {
    const double p = std::norm(rotated.amplitude(idx));
    if (p == 0.0) continue;
    key.clear();
    int slot = 0;
    for (const auto& party : plan.parties) {
      int parity = 1;
      for (std::size_t i = 0; i < party.qubits.size(); ++i, ++slot) {
        const int bit = (idx >> (n - 1 - info.slot_qubit[slot])) & 1;
        const int outcome = 1 - 2 * bit;  // basis row 0 is the +1 eigenvector
        if (party.parity_aggregate)
          parity *= outcome;
        else
          key.push_back(outcome);
      }
      if (party.parity_aggregate) key.push_back(parity);
    }
    table[key] += p;
  }
  return table;
}

bool next_combo(std::vector<int>& combo, const std::vector<int>& counts) {
  for (std::size_t s = 0; s < combo.size(); ++s) {
    if (++combo[s] < counts[s]) return true;
    combo[s] = 0;
  }
  return false;
}

std::vector<std::string> party_labels(const MeasurementPlan& plan) {
  std::vector<std::string> labels;
  for (const auto& party : plan.parties) labels.push_back(party.label);
  return labels;
}

}  // namespace

JointDistribution joint_distribution(const StateVector& state, const MeasurementPlan& plan) {
  const PlanInfo info = analyze_plan(state, plan);

  double combos = 1.0;
  for (int c : info.option_counts) combos *= c;
  const double weight = 1.0 / combos;

  OutcomeTable accumulated;
  double kept_weight = 0.0;
  std::vector<int> combo(info.slot_qubit.size(), 0);
  do {
    if (plan.sift && !plan.sift(combo)) continue;
    kept_weight += weight;
    for (const auto& [key, p] : combo_distribution(state, plan, info, combo))
      accumulated[key] += weight * p;
  } while (next_combo(combo, info.option_counts));

  if (kept_weight <= 0.0)
    throw std::domain_error("sifting rejected every basis combination");
  if (!plan.sift) kept_weight = 1.0;

  JointDistribution out;
  out.parties = party_labels(plan);
  out.outcomes_per_party = info.outcomes_per_party;
  out.sift_probability = kept_weight;
  for (const auto& [key, p] : accumulated) out.table.emplace_back(key, p / kept_weight);
  return out;
}

JointDistribution sample_distribution(const StateVector& state, const MeasurementPlan& plan,
                                      int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sampling needs at least one trial");
  const PlanInfo info = analyze_plan(state, plan);

  Rng rng(seed);
  std::map<std::vector<int>, OutcomeTable> table_cache;
  std::map<std::vector<int>, long long> counts;
  long long kept = 0;

  std::vector<int> combo(info.slot_qubit.size());
  for (int t = 0; t < trials; ++t) {
    for (std::size_t s = 0; s < combo.size(); ++s) {
      const int c = info.option_counts[s];
      combo[s] = std::min(static_cast<int>(rng.uniform() * c), c - 1);
    }
    if (plan.sift && !plan.sift(combo)) continue;
    ++kept;

    auto cached = table_cache.find(combo);
    if (cached == table_cache.end())
      cached = table_cache.emplace(combo, combo_distribution(state, plan, info, combo)).first;

    const double r = rng.uniform();
    double cumulative = 0.0;
    const OutcomeTable& dist = cached->second;
    auto it = dist.begin();
    for (; it != dist.end(); ++it) {
      cumulative += it->second;
      if (r < cumulative) break;
    }
    if (it == dist.end()) --it;  // r landed in rounding slack past the last bin
    ++counts[it->first];
  }

  if (kept == 0) throw std::domain_error("sifting rejected every sampled round");

  JointDistribution out;
  out.parties = party_labels(plan);
  out.outcomes_per_party = info.outcomes_per_party;
  out.sift_probability = static_cast<double>(kept) / trials;
  for (const auto& [key, c] : counts)
    out.table.emplace_back(key, static_cast<double>(c) / kept);
  return out;
}

double shannon_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("negative probability in entropy input");
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

namespace {

std::vector<int> party_indices(const JointDistribution& d, const std::vector<std::string>& group,
                               bool allow_duplicates) {
  if (group.empty()) return {};
  std::vector<int> indices;
  for (const auto& label : group) {
    const auto it = std::find(d.parties.begin(), d.parties.end(), label);
    if (it == d.parties.end())
      throw std::invalid_argument("unknown party label '" + label + "'");
    const int idx = static_cast<int>(it - d.parties.begin());
    if (std::find(indices.begin(), indices.end(), idx) != indices.end()) {
      if (!allow_duplicates)
        throw std::invalid_argument("party '" + label + "' listed twice in a group");
      continue;
    }
    indices.push_back(idx);
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

std::vector<double> marginal_over(const JointDistribution& d, const std::vector<int>& indices) {
  std::vector<int> offsets(d.parties.size());
  int offset = 0;
  for (std::size_t i = 0; i < d.parties.size(); ++i) {
    offsets[i] = offset;
    offset += d.outcomes_per_party[i];
  }

  std::map<std::vector<int>, double> marginal;
  std::vector<int> key;
  for (const auto& [outcome, p] : d.table) {
    key.clear();
    for (int i : indices)
      key.insert(key.end(), outcome.begin() + offsets[i],
                 outcome.begin() + offsets[i] + d.outcomes_per_party[i]);
    marginal[key] += p;
  }
  std::vector<double> probs;
  probs.reserve(marginal.size());
  for (const auto& [k, p] : marginal) probs.push_back(p);
  return probs;
}

}  // namespace

std::vector<double> marginal_probabilities(const JointDistribution& d,
                                           const std::vector<std::string>& group) {
  return marginal_over(d, party_indices(d, group, false));
}

double mutual_information(const JointDistribution& d, const std::vector<std::string>& group_x,
                          const std::vector<std::string>& group_y) {
  if (group_x.empty() || group_y.empty())
    throw std::invalid_argument("mutual information needs two nonempty groups");
  const std::vector<int> x = party_indices(d, group_x, false);
  const std::vector<int> y = party_indices(d, group_y, false);
  for (int i : x)
    if (std::find(y.begin(), y.end(), i) != y.end())
      throw std::invalid_argument("mutual information groups overlap");

  std::vector<int> xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  std::sort(xy.begin(), xy.end());

  return shannon_entropy(marginal_over(d, x)) + shannon_entropy(marginal_over(d, y)) -
         shannon_entropy(marginal_over(d, xy));
}

double conditional_entropy(const JointDistribution& d, const std::vector<std::string>& target,
                           const std::vector<std::string>& given) {
  if (target.empty()) throw std::invalid_argument("conditional entropy needs a target group");
  const std::vector<int> g = party_indices(d, given, true);

  std::vector<std::string> all = target;
  all.insert(all.end(), given.begin(), given.end());
  const std::vector<int> tg = party_indices(d, all, true);

  const double h_given = g.empty() ? 0.0 : shannon_entropy(marginal_over(d, g));
  return shannon_entropy(marginal_over(d, tg)) - h_given;
}

std::string distribution_to_json(const JointDistribution& d) {
  nlohmann::json doc;
  doc["parties"] = d.parties;
  doc["sift_probability"] = d.sift_probability;
  doc["table"] = nlohmann::json::array();
  for (const auto& [outcome, p] : d.table)
    doc["table"].push_back({{"outcome", outcome}, {"p", p}});
  return doc.dump();
}

}  // namespace qss
