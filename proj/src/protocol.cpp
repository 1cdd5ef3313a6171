#include "qss/protocol.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qss {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = kPi / 2.0;

double basis_angle(int basis) { return basis == 0 ? 0.0 : kHalfPi; }

}  // namespace

Scenario Scenario::external() { return {ScenarioKind::external_eve, 0}; }

Scenario Scenario::dishonest(int charlies) {
  return {ScenarioKind::dishonest_partners, charlies};
}

void Scenario::validate(int partners) const {
  if (kind == ScenarioKind::external_eve && charlies != 0)
    throw std::invalid_argument("an external attack has no cooperating partners");
  if (kind == ScenarioKind::dishonest_partners && charlies < 1)
    throw std::invalid_argument("a dishonest scenario needs a cooperating partner");
  if (partners - 1 - charlies < 1)
    throw std::invalid_argument("at least one partner must stay honest");
}

double SiftRule::keep_fraction() const {
  int kept = 0;
  for (bool k : keep) kept += k ? 1 : 0;
  return static_cast<double>(kept) / static_cast<double>(keep.size());
}

SiftRule sift_rule(int parties) {
  if (parties < 2 || parties > 6)
    throw std::invalid_argument("sifting rule covers 2 to 6 parties");

  SiftRule rule;
  rule.parties = parties;
  const int masks = 1 << parties;
  rule.keep.resize(masks);
  rule.sign.resize(masks, 0);
  for (int mask = 0; mask < masks; ++mask) {
    const int ys = std::popcount(static_cast<unsigned>(mask));
    rule.keep[mask] = ys % 2 == 0;
    if (rule.keep[mask]) rule.sign[mask] = (ys / 2) % 2 == 0 ? 1 : -1;
  }

  // The rule is only trusted after checking it against the state it serves:
  // kept masks must show perfect correlation of the predicted sign, dropped
  // ones none at all.
  const StateVector g = ghz(parties);
  for (int mask = 0; mask < masks; ++mask) {
    std::vector<ComplexMatrix> factors;
    for (int q = 0; q < parties; ++q)
      factors.push_back((mask >> q) & 1 ? pauli_y() : pauli_x());
    const double corr = expectation(g, kron_all(factors));
    const double wanted = rule.keep[mask] ? rule.sign[mask] : 0.0;
    if (std::abs(corr - wanted) > 1e-9)
      throw std::logic_error("sifting rule disagrees with the GHZ correlations");
  }
  return rule;
}

namespace {

// Parties of one protocol round: the dealer "A" on qubit 0, cooperating
// partners "C", honest partners "B", and the stored qubit "E". Bases are
// fixed per round (one option per qubit), sifting happened outside.
MeasurementPlan round_plan(int partners, int charlies, const std::vector<int>& bases,
                           const BlochVector& eve_direction) {
  MeasurementPlan plan;
  plan.parties.push_back({"A", {0}, {{equatorial(basis_angle(bases[0]))}}, false});
  if (charlies > 0) {
    PartyMeasurement c{"C", {}, {}, false};
    for (int q = 1; q <= charlies; ++q) {
      c.qubits.push_back(q);
      c.choices.push_back({equatorial(basis_angle(bases[q]))});
    }
    plan.parties.push_back(c);
  }
  PartyMeasurement honest{"B", {}, {}, false};
  for (int q = charlies + 1; q < partners; ++q) {
    honest.qubits.push_back(q);
    honest.choices.push_back({equatorial(basis_angle(bases[q]))});
  }
  plan.parties.push_back(honest);
  plan.parties.push_back({"E", {partners}, {{eve_direction}}, false});
  return plan;
}

std::vector<int> mask_to_bases(int mask, int partners) {
  std::vector<int> bases(partners);
  for (int q = 0; q < partners; ++q) bases[q] = (mask >> q) & 1;
  return bases;
}

}  // namespace

BlochVector eve_policy_direction(const Scenario& s, const std::vector<int>& announced_bases) {
  if (static_cast<int>(announced_bases.size()) < s.charlies + 1)
    throw std::invalid_argument("need announced bases for the dealer and cooperating partners");
  double angle = basis_angle(announced_bases[0]);
  for (int j = 1; j <= s.charlies; ++j) angle += basis_angle(announced_bases[j]);
  return equatorial(-angle);
}

SecurityReport run_protocol(const AttackParams& p, const Scenario& s) {
  p.validate();
  s.validate(p.partners);
  if (s.charlies != p.dishonest_partners())
    throw std::invalid_argument("scenario and attack parameters disagree");

  const StateVector psi = attack_qss(p);
  const SiftRule rule = sift_rule(p.partners);

  const std::vector<std::string> authorized =
      s.charlies > 0 ? std::vector<std::string>{"C", "B"} : std::vector<std::string>{"B"};
  const std::vector<std::string> unauthorized =
      s.charlies > 0 ? std::vector<std::string>{"C", "E"} : std::vector<std::string>{"E"};

  double sum_ia = 0.0, sum_iu = 0.0;
  int kept = 0;
  for (int mask = 0; mask < (1 << p.partners); ++mask) {
    if (!rule.keep[mask]) continue;
    ++kept;
    const std::vector<int> bases = mask_to_bases(mask, p.partners);
    const MeasurementPlan plan =
        round_plan(p.partners, s.charlies, bases, eve_policy_direction(s, bases));
    const JointDistribution d = joint_distribution(psi, plan);
    sum_ia += mutual_information(d, {"A"}, authorized);
    sum_iu += mutual_information(d, {"A"}, unauthorized);
  }

  SecurityReport report;
  report.phi = p.phi;
  report.i_a = sum_ia / kept;
  report.i_u = sum_iu / kept;
  report.m_auth = p.partners;
  report.m_unauth = s.charlies + 2;
  report.sift_probability = static_cast<double>(kept) / (1 << p.partners);
  return report;
}

namespace {

double entropy_of(const std::vector<double>& probs) { return shannon_entropy(probs); }

// Information between the dealer's outcome and the cooperating-partner plus
// stored-qubit outcomes, for a state whose partner qubits are already rotated
// into their announced bases. Only the stored qubit still needs a basis.
double unauthorized_information(const StateVector& rotated, int partners, int charlies,
                                const BlochVector& eve_direction) {
  const StateVector final_state =
      apply_single_qubit(rotated, partners, pauli_basis_unitary(eve_direction));
  const int n = partners + 1;
  const int side_bits = charlies + 1;  // cooperating partners plus the stored qubit

  std::vector<double> joint(static_cast<std::size_t>(2) << side_bits, 0.0);
  for (int idx = 0; idx < final_state.dimension(); ++idx) {
    const double p = std::norm(final_state.amplitude(idx));
    if (p == 0.0) continue;
    const int dealer_bit = (idx >> (n - 1)) & 1;
    int side = (idx & 1);  // stored qubit, rightmost
    for (int j = 1; j <= charlies; ++j) side |= ((idx >> (n - 1 - j)) & 1) << j;
    joint[(static_cast<std::size_t>(dealer_bit) << side_bits) | side] += p;
  }

  const std::size_t half = joint.size() / 2;
  std::vector<double> dealer(2, 0.0), side(half, 0.0);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    dealer[i >> side_bits] += joint[i];
    side[i & (half - 1)] += joint[i];
  }
  return entropy_of(dealer) + entropy_of(side) - entropy_of(joint);
}

BlochVector spherical_direction(double theta_deg, double azimuth_deg) {
  const double t = theta_deg * kPi / 180.0;
  const double a = azimuth_deg * kPi / 180.0;
  return {std::sin(t) * std::cos(a), std::sin(t) * std::sin(a), std::cos(t)};
}

}  // namespace

EveMeasurement eve_measurement(const StateVector& state, const Scenario& s,
                               const std::vector<int>& announced_bases) {
  const int partners = state.num_qubits() - 1;
  if (partners < 2)
    throw std::invalid_argument("eavesdropper search needs a dealer, partners and a stored qubit");
  s.validate(partners);
  if (static_cast<int>(announced_bases.size()) != partners)
    throw std::invalid_argument("need one announced basis per partner");
  for (int b : announced_bases)
    if (b != 0 && b != 1) throw std::invalid_argument("announced bases are 0 (x) or 1 (y)");

  StateVector rotated = state;
  for (int q = 0; q < partners; ++q)
    rotated = apply_single_qubit(
        rotated, q, pauli_basis_unitary(equatorial(basis_angle(announced_bases[q]))));

  const auto score = [&](double theta_deg, double azimuth_deg) {
    return unauthorized_information(rotated, partners, s.charlies,
                                    spherical_direction(theta_deg, azimuth_deg));
  };

  double best_theta = 0.0, best_azimuth = 0.0, best = -1.0;
  for (int t = 0; t <= 180; ++t)
    for (int a = 0; a < 360; ++a) {
      const double value = score(t, a);
      if (value > best) {
        best = value;
        best_theta = t;
        best_azimuth = a;
      }
    }

  for (int dt = -100; dt <= 100; ++dt)
    for (int da = -100; da <= 100; ++da) {
      const double theta = best_theta + 0.01 * dt;
      const double azimuth = best_azimuth + 0.01 * da;
      if (theta < 0.0 || theta > 180.0) continue;
      const double value = score(theta, azimuth);
      if (value > best) {
        best = value;
        best_theta = theta;
        best_azimuth = azimuth;
      }
    }

  return {spherical_direction(best_theta, best_azimuth), best};
}

double authorized_parity_information(const AttackParams& p, const Scenario& s) {
  p.validate();
  s.validate(p.partners);
  if (s.charlies != p.dishonest_partners())
    throw std::invalid_argument("scenario and attack parameters disagree");

  const StateVector psi = attack_qss(p);
  const SiftRule rule = sift_rule(p.partners);

  double sum = 0.0;
  int kept = 0;
  for (int mask = 0; mask < (1 << p.partners); ++mask) {
    if (!rule.keep[mask]) continue;
    ++kept;
    const std::vector<int> bases = mask_to_bases(mask, p.partners);
    MeasurementPlan plan;
    plan.parties.push_back({"A", {0}, {{equatorial(basis_angle(bases[0]))}}, false});
    PartyMeasurement partners_party{"P", {}, {}, true};
    for (int q = 1; q < p.partners; ++q) {
      partners_party.qubits.push_back(q);
      partners_party.choices.push_back({equatorial(basis_angle(bases[q]))});
    }
    plan.parties.push_back(partners_party);
    sum += mutual_information(joint_distribution(psi, plan), {"A"}, {"P"});
  }
  return sum / kept;
}

double find_threshold(int partners, const Scenario& s, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
  s.validate(partners);
  const int honest = partners - 1 - s.charlies;

  const auto gap = [&](double phi) {
    const SecurityReport r = run_protocol(AttackParams{partners, honest, phi}, s);
    return r.i_a - r.i_u;
  };

  double lo = 0.0, hi = kHalfPi;
  const double gap_lo = gap(lo);
  const double gap_hi = gap(hi);
  if (gap_lo == 0.0) return lo;
  if (gap_hi == 0.0) return hi;
  if ((gap_lo > 0.0) == (gap_hi > 0.0))
    throw std::logic_error("information gap does not change sign on [0, pi/2]");

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gap_mid = gap(mid);
    if (gap_mid == 0.0) return mid;
    if ((gap_mid > 0.0) == (gap_lo > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<SecurityReport> security_bell_table(int partners, const Scenario& s,
                                                const std::vector<double>& phi_grid,
                                                const MaximizeOptions& opts) {
  s.validate(partners);
  const int honest = partners - 1 - s.charlies;

  std::vector<int> auth_qubits(partners);
  std::iota(auth_qubits.begin(), auth_qubits.end(), 0);
  std::vector<int> unauth_qubits;
  for (int q = 0; q <= s.charlies; ++q) unauth_qubits.push_back(q);
  unauth_qubits.push_back(partners);

  std::vector<SecurityReport> rows;
  rows.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    const AttackParams p{partners, honest, phi};
    SecurityReport r = run_protocol(p, s);
    const DensityMatrix rho = DensityMatrix::from_state(attack_qss(p));
    r.s_auth = mk_maximize(partial_trace(rho, auth_qubits), opts).value;
    r.s_unauth = mk_maximize(partial_trace(rho, unauth_qubits), opts).value;
    r.genuine_auth = classify_violation(r.s_auth, r.m_auth).kind == ViolationKind::genuine;
    r.genuine_unauth = classify_violation(r.s_unauth, r.m_unauth).kind == ViolationKind::genuine;
    rows.push_back(r);
  }
  return rows;
}

std::vector<CounterexamplePoint> counterexample_scan(const std::vector<double>& alpha_grid,
                                                     const MaximizeOptions& opts) {
  std::vector<CounterexamplePoint> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    const DensityMatrix rho = DensityMatrix::from_state(counterexample_state(alpha));
    CounterexamplePoint point;
    point.alpha = alpha;
    point.s_abc = mk_maximize(partial_trace(rho, {0, 1, 2}), opts).value;
    point.s_bcd = mk_maximize(partial_trace(rho, {1, 2, 3}), opts).value;
    rows.push_back(point);
  }
  return rows;
}

}  // namespace qss
