#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

#include "qss/bell.hpp"
#include "qss/infotheory.hpp"
#include "qss/protocol.hpp"
#include "qss/states.hpp"

namespace {

using namespace qss;

constexpr double kPi = 3.14159265358979323846;
const double kRoot2 = std::sqrt(2.0);

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

// What run_protocol assumes for one kept basis combination: every partner
// measures its announced equatorial basis, the stored qubit follows the
// supplied direction, and the unauthorized side reads partners 1..charlies
// plus the stored qubit.
double unauthorized_info_at(const StateVector& state, const Scenario& s,
                            const std::vector<int>& bases, const BlochVector& eve_direction) {
  const int partners = state.num_qubits() - 1;
  MeasurementPlan plan;
  const auto angle = [](int b) { return b == 0 ? 0.0 : kPi / 2.0; };
  plan.parties.push_back({"A", {0}, {{equatorial(angle(bases[0]))}}, false});
  if (s.charlies > 0) {
    PartyMeasurement c{"C", {}, {}, false};
    for (int q = 1; q <= s.charlies; ++q) {
      c.qubits.push_back(q);
      c.choices.push_back({equatorial(angle(bases[q]))});
    }
    plan.parties.push_back(c);
  }
  if (s.charlies + 1 < partners) {
    PartyMeasurement b{"B", {}, {}, false};
    for (int q = s.charlies + 1; q < partners; ++q) {
      b.qubits.push_back(q);
      b.choices.push_back({equatorial(angle(bases[q]))});
    }
    plan.parties.push_back(b);
  }
  plan.parties.push_back({"E", {partners}, {{eve_direction}}, false});

  const JointDistribution d = joint_distribution(state, plan);
  const std::vector<std::string> unauth =
      s.charlies > 0 ? std::vector<std::string>{"C", "E"} : std::vector<std::string>{"E"};
  return mutual_information(d, {"A"}, unauth);
}

}  // namespace

TEST_CASE("scenarios") {
  CHECK(Scenario::external().kind == ScenarioKind::external_eve);
  CHECK(Scenario::dishonest(2).charlies == 2);

  CHECK_NOTHROW(Scenario::external().validate(2));
  CHECK_NOTHROW(Scenario::dishonest(1).validate(3));
  CHECK_THROWS_AS(Scenario::dishonest(0).validate(3), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::dishonest(2).validate(3), std::invalid_argument);
  CHECK_THROWS_AS((Scenario{ScenarioKind::external_eve, 1}.validate(3)),
                  std::invalid_argument);
}

TEST_CASE("sifting rule") {
  SUBCASE("two parties keep matching bases") {
    const SiftRule rule = sift_rule(2);
    CHECK(rule.keep == std::vector<bool>{true, false, false, true});
    CHECK(rule.sign[0b00] == 1);
    CHECK(rule.sign[0b11] == -1);
    CHECK(rule.keep_fraction() == 0.5);
  }

  SUBCASE("three parties keep even y counts with alternating sign") {
    const SiftRule rule = sift_rule(3);
    for (int mask = 0; mask < 8; ++mask) {
      const int ys = __builtin_popcount(static_cast<unsigned>(mask));
      CHECK(rule.keep[mask] == (ys % 2 == 0));
    }
    CHECK(rule.sign[0b000] == 1);
    for (int mask : {0b011, 0b101, 0b110}) CHECK(rule.sign[mask] == -1);
    CHECK(rule.keep_fraction() == 0.5);
  }

  SUBCASE("four parties flip the sign back at four y picks") {
    const SiftRule rule = sift_rule(4);
    CHECK(rule.sign[0b0000] == 1);
    CHECK(rule.sign[0b0011] == -1);
    CHECK(rule.sign[0b1111] == 1);
    CHECK(rule.keep_fraction() == 0.5);
  }

  SUBCASE("party count bounds") {
    CHECK_THROWS_AS(sift_rule(1), std::invalid_argument);
    CHECK_THROWS_AS(sift_rule(7), std::invalid_argument);
  }
}

TEST_CASE("protocol information") {
  SUBCASE("no attack leaves the partners in full control") {
    const SecurityReport r = run_protocol({3, 2, 0.0}, Scenario::external());
    CHECK(near(r.i_a, 1.0, 1e-12));
    CHECK(near(r.i_u, 0.0, 1e-12));
    CHECK(r.sift_probability == 0.5);
    CHECK(r.m_auth == 3);
    CHECK(r.m_unauth == 2);
  }

  SUBCASE("full attack hands everything to the unauthorized side") {
    const SecurityReport r = run_protocol({3, 1, kPi / 2.0}, Scenario::dishonest(1));
    CHECK(near(r.i_u, 1.0, 1e-12));
    CHECK(r.m_unauth == 3);
  }

  SUBCASE("the crossover sits at the symmetric point") {
    const SecurityReport r = run_protocol({2, 1, kPi / 4.0}, Scenario::external());
    CHECK(near(r.i_a, r.i_u, 1e-10));
  }

  SUBCASE("two-partner informations follow the binary-channel closed form") {
    for (double phi : {0.0, 0.2, 0.7, kPi / 4.0, 1.3, kPi / 2.0}) {
      const SecurityReport r = run_protocol({2, 1, phi}, Scenario::external());
      CHECK(near(r.i_a, 1.0 - binary_entropy(0.5 * (1.0 + std::cos(phi))), 1e-10));
      CHECK(near(r.i_u, 1.0 - binary_entropy(0.5 * (1.0 + std::sin(phi))), 1e-10));
    }
  }

  SUBCASE("attack strength trades the two sides symmetrically") {
    for (int i = 0; i <= 8; ++i) {
      const double phi = kPi / 2.0 * i / 8.0;
      const SecurityReport fwd = run_protocol({2, 1, phi}, Scenario::external());
      const SecurityReport rev = run_protocol({2, 1, kPi / 2.0 - phi}, Scenario::external());
      CHECK(near(fwd.i_a, rev.i_u, 1e-10));
    }
  }

  SUBCASE("monotone in the attack strength") {
    double prev_ia = 2.0, prev_iu = -1.0;
    for (int i = 0; i <= 50; ++i) {
      const SecurityReport r =
          run_protocol({2, 1, kPi / 2.0 * i / 50.0}, Scenario::external());
      CHECK(r.i_a <= prev_ia + 1e-12);
      CHECK(r.i_u >= prev_iu - 1e-12);
      prev_ia = r.i_a;
      prev_iu = r.i_u;
    }
  }

  SUBCASE("sift probability is exactly one half for larger rounds too") {
    CHECK(run_protocol({4, 3, 0.3}, Scenario::external()).sift_probability == 0.5);
    CHECK(run_protocol({5, 2, 0.3}, Scenario::dishonest(2)).sift_probability == 0.5);
  }

  SUBCASE("scenario and parameters must agree") {
    CHECK_THROWS_AS(run_protocol({3, 1, 0.1}, Scenario::external()), std::invalid_argument);
    CHECK_THROWS_AS(run_protocol({3, 2, 0.1}, Scenario::dishonest(1)), std::invalid_argument);
  }
}

TEST_CASE("stored-qubit measurement policy") {
  SUBCASE("policy direction opposes the announced angles") {
    const BlochVector x_dir = eve_policy_direction(Scenario::external(), {0, 0});
    CHECK(near(x_dir.x, 1.0, 1e-15));
    const BlochVector y_dir = eve_policy_direction(Scenario::external(), {1, 0});
    CHECK(near(y_dir.y, -1.0, 1e-15));
    const BlochVector flipped = eve_policy_direction(Scenario::dishonest(1), {1, 1, 0});
    CHECK(near(flipped.x, -1.0, 1e-15));
    CHECK_THROWS_AS(eve_policy_direction(Scenario::dishonest(1), {0}), std::invalid_argument);
  }

  SUBCASE("brute-force search confirms the policy") {
    struct Case {
      AttackParams params;
      Scenario scenario;
      std::vector<int> bases;
    };
    const std::vector<Case> cases{
        {{2, 1, 0.3}, Scenario::external(), {0, 0}},
        {{2, 1, kPi / 4.0}, Scenario::external(), {1, 1}},
        {{3, 2, 0.6}, Scenario::external(), {0, 1, 1}},
        {{3, 1, 0.9}, Scenario::dishonest(1), {1, 0, 1}},
    };
    for (const auto& c : cases) {
      const StateVector psi = attack_qss(c.params);
      const double policy_info = unauthorized_info_at(
          psi, c.scenario, c.bases, eve_policy_direction(c.scenario, c.bases));
      const EveMeasurement brute = eve_measurement(psi, c.scenario, c.bases);
      CHECK(brute.information >= policy_info - 1e-9);
      CHECK(brute.information - policy_info <= 1e-6);
    }
  }

  SUBCASE("nothing to find when the attack is off") {
    const EveMeasurement brute =
        eve_measurement(attack_qss({2, 1, 0.0}), Scenario::external(), {0, 0});
    CHECK(brute.information <= 1e-9);
  }

  SUBCASE("a full-strength attack hands over the dealer bit") {
    const EveMeasurement brute =
        eve_measurement(attack_qss({2, 1, kPi / 2.0}), Scenario::external(), {0, 0});
    CHECK(near(brute.information, 1.0, 1e-9));
  }

  SUBCASE("input validation") {
    const StateVector psi = attack_qss({2, 1, 0.1});
    CHECK_THROWS_AS(eve_measurement(psi, Scenario::external(), {0}), std::invalid_argument);
    CHECK_THROWS_AS(eve_measurement(psi, Scenario::external(), {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(eve_measurement(epr_phi_plus(), Scenario::external(), {0}),
                    std::invalid_argument);
  }
}

TEST_CASE("parity-decoded information") {
  SUBCASE("never beats the full-outcome decoder") {
    for (double phi : {0.0, 0.5, 1.0, kPi / 2.0}) {
      const AttackParams p{3, 2, phi};
      const double parity = authorized_parity_information(p, Scenario::external());
      const double full = run_protocol(p, Scenario::external()).i_a;
      CHECK(parity <= full + 1e-12);
    }
  }

  SUBCASE("equals it with a single partner or no attack") {
    CHECK(near(authorized_parity_information({2, 1, 0.8}, Scenario::external()),
               run_protocol({2, 1, 0.8}, Scenario::external()).i_a, 1e-12));
    CHECK(near(authorized_parity_information({3, 2, 0.0}, Scenario::external()), 1.0, 1e-12));
  }
}

TEST_CASE("information threshold") {
  SUBCASE("sits at the balance point of the trade-off") {
    CHECK(near(find_threshold(2, Scenario::external(), 1e-6), kPi / 4.0, 1e-6));
    CHECK(near(find_threshold(3, Scenario::dishonest(1), 1e-6), kPi / 4.0, 1e-6));
  }

  SUBCASE("tolerance must be positive") {
    CHECK_THROWS_AS(find_threshold(2, Scenario::external(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(find_threshold(2, Scenario::external(), -1.0), std::invalid_argument);
  }
}

TEST_CASE("security table with bell maxima") {
  MaximizeOptions opts;
  opts.restarts = 20;

  SUBCASE("two partners recover both closed forms") {
    const std::vector<double> grid{0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0, kPi / 2.0};
    const auto rows = security_bell_table(2, Scenario::external(), grid, opts);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double phi = grid[i];
      CHECK(rows[i].phi == phi);
      CHECK(near(rows[i].s_auth, 2.0 * kRoot2 * std::cos(phi), 1e-6));
      CHECK(near(rows[i].s_unauth, 2.0 * kRoot2 * std::sin(phi), 1e-6));
      CHECK(rows[i].genuine_auth == (rows[i].s_auth > 2.0));
      CHECK(rows[i].genuine_unauth == (rows[i].s_unauth > 2.0));
      CHECK(rows[i].sift_probability == 0.5);
    }
  }

  SUBCASE("authorized and unauthorized sizes depend on the scenario") {
    const auto rows = security_bell_table(4, Scenario::dishonest(2), {0.1}, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].m_auth == 4);
    CHECK(rows[0].m_unauth == 4);
  }
}

TEST_CASE("overlapping-margin counterexample") {
  MaximizeOptions opts;
  opts.restarts = 25;

  SUBCASE("the working point carries two genuine three-qubit violations") {
    const auto rows = counterexample_scan({0.955}, opts);
    REQUIRE(rows.size() == 1);
    CHECK(near(rows[0].s_abc, 3.0459559079, 1e-4));
    CHECK(near(rows[0].s_bcd, 3.0459559079, 1e-4));
    CHECK(rows[0].s_abc > 2.0 * kRoot2);
    CHECK(rows[0].s_bcd > 2.0 * kRoot2);
  }

  SUBCASE("the edge of the family degenerates to pair entanglement") {
    const auto rows = counterexample_scan({kPi / 2.0}, opts);
    CHECK(near(rows[0].s_abc, 2.0 * kRoot2, 1e-6));
    CHECK(near(rows[0].s_bcd, 2.0 * kRoot2, 1e-6));
  }
}

TEST_CASE("measurement order does not matter") {
  // Project qubits one at a time in several different orders and rebuild the
  // per-combination outcome distribution; every order must agree with the
  // all-at-once Born rule.
  const AttackParams params{3, 2, 0.8};
  const Scenario scenario = Scenario::external();
  const StateVector psi = attack_qss(params);
  const int n = psi.num_qubits();

  const std::vector<int> bases{0, 1, 1};  // one kept combination
  std::vector<BlochVector> directions;
  const auto angle = [](int b) { return b == 0 ? 0.0 : kPi / 2.0; };
  for (int q = 0; q < 3; ++q) directions.push_back(equatorial(angle(bases[q])));
  directions.push_back(eve_policy_direction(scenario, bases));

  // Reference: all qubits rotated, probabilities read off the amplitudes.
  StateVector rotated = psi;
  for (int q = 0; q < n; ++q)
    rotated = apply_single_qubit(rotated, q, pauli_basis_unitary(directions[q]));

  const std::vector<std::vector<int>> orders{
      {0, 1, 2, 3}, {3, 2, 1, 0}, {2, 0, 3, 1}, {1, 3, 0, 2}};
  for (const auto& order : orders) {
    for (int outcome_bits = 0; outcome_bits < (1 << n); ++outcome_bits) {
      const double expected = std::norm(rotated.amplitude(outcome_bits));
      double chained = 1.0;
      StateVector current = psi;
      for (int q : order) {
        const int bit = (outcome_bits >> (n - 1 - q)) & 1;
        const StateVector in_basis =
            apply_single_qubit(current, q, pauli_basis_unitary(directions[q]));
        double prob = 0.0;
        for (int idx = 0; idx < in_basis.dimension(); ++idx)
          if (((idx >> (n - 1 - q)) & 1) == bit) prob += std::norm(in_basis.amplitude(idx));
        if (prob < 1e-14) {
          chained = 0.0;
          break;
        }
        const auto [p, collapsed] = project_qubit(in_basis, q, bit);
        chained *= p;
        // Undo the basis rotation so later qubits see the original frame.
        current = apply_single_qubit(collapsed, q, pauli_basis_unitary(directions[q]).dagger());
      }
      CHECK(near(chained, expected, 1e-12));
    }
  }
}
