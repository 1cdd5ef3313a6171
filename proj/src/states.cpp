#include "qss/states.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qss {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

void AttackParams::validate() const {
  if (partners < 2 || partners > 6)
    throw std::invalid_argument("partner count must lie in [2, 6]");
  if (honest_partners < 1 || honest_partners > partners - 1)
    throw std::invalid_argument("honest partner count must lie in [1, N-1]");
  if (!(phi >= 0.0 && phi <= kPi / 2.0))
    throw std::invalid_argument("attack strength must lie in [0, pi/2]");
}

QubitLayout attack_layout(const AttackParams& p) {
  p.validate();
  QubitLayout layout;
  layout.dealer = 0;
  for (int i = 0; i < p.dishonest_partners(); ++i) layout.dishonest.push_back(1 + i);
  for (int i = 0; i < p.honest_partners; ++i)
    layout.honest.push_back(1 + p.dishonest_partners() + i);
  layout.eavesdropper = p.partners;
  layout.total_qubits = p.partners + 1;
  return layout;
}

StateVector epr_phi_plus() {
  std::vector<complex_t> amps(4, complex_t{0.0, 0.0});
  amps[0] = kInvSqrt2;
  amps[3] = kInvSqrt2;
  return StateVector(2, std::move(amps));
}

StateVector ghz(int m) {
  if (m < 2 || m > 7) throw std::invalid_argument("ghz size must lie in [2, 7]");
  std::vector<complex_t> amps(static_cast<std::size_t>(1) << m, complex_t{0.0, 0.0});
  amps.front() = kInvSqrt2;
  amps.back() = kInvSqrt2;
  return StateVector(m, std::move(amps));
}

StateVector attack_two_party(double phi) {
  return attack_qss(AttackParams{2, 1, phi});
}

StateVector attack_qss(const AttackParams& p) {
  p.validate();
  const int n = p.total_qubits();
  std::vector<complex_t> amps(static_cast<std::size_t>(1) << n, complex_t{0.0, 0.0});

  // All-zero ket; all partners flipped with the stored qubit idle; dealer and
  // dishonest partners flipped with the stored qubit set.
  int flagged = 1;  // eavesdropper bit, rightmost
  for (int q = 0; q <= p.dishonest_partners(); ++q) flagged |= 1 << (n - 1 - q);

  amps[0] = kInvSqrt2;
  amps[(1 << n) - 2] = std::cos(p.phi) * kInvSqrt2;
  amps[flagged] = std::sin(p.phi) * kInvSqrt2;
  return StateVector(n, std::move(amps));
}

StateVector counterexample_state(double alpha) {
  const double c = std::cos(alpha) / 2.0;
  const double s = std::sin(alpha) * kInvSqrt2;
  std::vector<complex_t> amps(16, complex_t{0.0, 0.0});
  amps[0b0011] = complex_t{c, 0.0};
  amps[0b1100] = complex_t{c, 0.0};
  amps[0b0101] = complex_t{0.0, c};
  amps[0b1010] = complex_t{0.0, c};
  amps[0b1001] = complex_t{0.0, s};
  amps[0b1111] = complex_t{s, 0.0};
  return StateVector(4, std::move(amps));
}

StateVector random_pure_state(int num_qubits, Rng& rng) {
  const std::size_t dim = static_cast<std::size_t>(1) << num_qubits;
  std::vector<complex_t> amps(dim);
  double norm_sq = 0.0;
  for (auto& a : amps) {
    a = complex_t{rng.normal(), rng.normal()};
    norm_sq += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= scale;
  return StateVector(num_qubits, std::move(amps));
}

DensityMatrix random_mixed_state(int num_qubits, Rng& rng) {
  StateVector purification = random_pure_state(2 * num_qubits, rng);
  std::vector<int> keep(num_qubits);
  for (int i = 0; i < num_qubits; ++i) keep[i] = i;
  return partial_trace(DensityMatrix::from_state(purification), keep);
}

namespace {

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("expected key=value in state spec, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

StateVector parse_state(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "epr") {
    if (!rest.empty()) throw std::invalid_argument("'epr' takes no arguments");
    return epr_phi_plus();
  }
  if (head == "ghz") {
    if (colon == std::string::npos)
      throw std::invalid_argument("'ghz' needs a qubit count, e.g. ghz:3");
    return ghz(parse_int(rest, "ghz qubit count"));
  }
  if (head == "file") {
    if (colon == std::string::npos || rest.empty())
      throw std::invalid_argument("'file' needs a path, e.g. file:state.json");
    return load_state_json(rest);
  }
  if (head == "attack") {
    AttackParams p;
    bool got_n = false, got_h = false, got_phi = false;
    for (const auto& [key, value] : parse_kv_list(rest)) {
      if (key == "N") {
        p.partners = parse_int(value, "N");
        got_n = true;
      } else if (key == "h") {
        p.honest_partners = parse_int(value, "h");
        got_h = true;
      } else if (key == "phi") {
        p.phi = parse_double(value, "phi");
        got_phi = true;
      } else {
        throw std::invalid_argument("unknown attack parameter '" + key + "'");
      }
    }
    if (!got_n || !got_h || !got_phi)
      throw std::invalid_argument("attack spec needs N=, h= and phi=");
    return attack_qss(p);
  }
  if (head == "counterexample") {
    double alpha = 0.0;
    bool got_alpha = false;
    for (const auto& [key, value] : parse_kv_list(rest)) {
      if (key == "alpha") {
        alpha = parse_double(value, "alpha");
        got_alpha = true;
      } else {
        throw std::invalid_argument("unknown counterexample parameter '" + key + "'");
      }
    }
    if (!got_alpha) throw std::invalid_argument("counterexample spec needs alpha=");
    return counterexample_state(alpha);
  }
  throw std::invalid_argument("unknown state spec '" + text + "'");
}

StateVector load_state_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad JSON in '" + path + "': " + e.what());
  }
  if (!doc.contains("num_qubits") || !doc.contains("amplitudes"))
    throw std::invalid_argument("state file needs num_qubits and amplitudes");
  const int n = doc["num_qubits"].get<int>();
  const auto& raw = doc["amplitudes"];
  if (!raw.is_array())
    throw std::invalid_argument("amplitudes must be an array of [re, im] pairs");
  std::vector<complex_t> amps;
  amps.reserve(raw.size());
  for (const auto& pair : raw) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("each amplitude must be a [re, im] pair");
    amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return StateVector(n, std::move(amps));
}

}  // namespace qss
