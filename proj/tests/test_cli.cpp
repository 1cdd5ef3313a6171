#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string binary_path() {
  if (const char* env = std::getenv("QSSBELL_BIN")) return env;
  return "./qssbell";  // ctest exports the real location; this covers bare runs
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("qss_cli_out_" + std::to_string(counter) + ".txt");
  const auto err_path = dir / ("qss_cli_err_" + std::to_string(counter) + ".txt");
  ++counter;

  const std::string cmd = "\"" + binary_path() + "\" " + args + " > \"" + out_path.string() +
                          "\" 2> \"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());

  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<double> parse_csv_row(const std::string& line) {
  std::vector<double> values;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) values.push_back(std::stod(cell));
  return values;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("cli help and error paths") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("scan --help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("scan --no-such-flag 1").exit_code == 2);

  const CliResult bad_steps = run_cli("scan --n 2 --steps 0");
  CHECK(bad_steps.exit_code == 2);
  CHECK(bad_steps.err.find("config error") != std::string::npos);

  CHECK(run_cli("bellmax --state nonsense").exit_code == 2);
  CHECK(run_cli("bellmax --state ghz:9").exit_code == 2);
  CHECK(run_cli("threshold --n 2 --h 1 --tol -1").exit_code == 2);
  CHECK(run_cli("scan --n 2 --h 5").exit_code == 2);
  CHECK(run_cli("monogamy --trials 0").exit_code == 2);
}

TEST_CASE("bellmax reports the ceiling of a ghz state") {
  const CliResult r = run_cli("bellmax --state ghz:3 --restarts 10 --seed 2");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "value,m,converged,restarts_used,iterations");
  const auto row = parse_csv_row(lines[1]);
  REQUIRE(row.size() == 5);
  CHECK(near(row[0], 4.0, 1e-6));
  CHECK(row[1] == 3.0);
  CHECK(row[2] == 1.0);
  CHECK(row[3] == 10.0);
}

TEST_CASE("threshold finds the balance point") {
  const CliResult r = run_cli("threshold --n 2 --h 1 --tol 1e-6");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "phi_star");
  CHECK(near(parse_csv_row(lines[1])[0], kPi / 4.0, 1e-5));
}

TEST_CASE("scan emits the pinned csv schema") {
  const CliResult r = run_cli("scan --n 2 --h 1 --steps 3 --restarts 10 --seed 5");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "phi,I_a,I_u,S_auth,S_unauth,sift_p,genuine_auth,genuine_unauth");

  const auto first = parse_csv_row(lines[1]);
  REQUIRE(first.size() == 8);
  CHECK(first[0] == 0.0);
  CHECK(near(first[1], 1.0, 1e-9));       // I_a at phi = 0
  CHECK(near(first[3], 2.0 * std::sqrt(2.0), 1e-6));  // S_auth at phi = 0
  CHECK(first[5] == 0.5);
  CHECK(first[6] == 1.0);
  CHECK(first[7] == 0.0);

  const auto last = parse_csv_row(lines[3]);
  CHECK(near(last[0], kPi / 2.0, 1e-12));
  CHECK(near(last[4], 2.0 * std::sqrt(2.0), 1e-6));  // S_unauth at phi = pi/2
}

TEST_CASE("same seed means byte-identical output") {
  const std::string scan_args = "scan --n 2 --h 1 --steps 3 --restarts 10 --seed 5";
  CHECK(run_cli(scan_args).out == run_cli(scan_args).out);

  const std::string bellmax_args = "bellmax --state attack:N=2,h=1,phi=0.6 --seed 9";
  CHECK(run_cli(bellmax_args).out == run_cli(bellmax_args).out);

  const std::string monogamy_args = "monogamy --trials 20 --seed 7";
  CHECK(run_cli(monogamy_args).out == run_cli(monogamy_args).out);
}

TEST_CASE("file output matches stdout") {
  const auto path = std::filesystem::temp_directory_path() / "qss_cli_file_out.csv";
  const std::string args = "counterexample --restarts 10 --seed 3";
  const CliResult direct = run_cli(args);
  REQUIRE(direct.exit_code == 0);
  const CliResult filed = run_cli(args + " --out \"" + path.string() + "\"");
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == direct.out);
  std::filesystem::remove(path);

  const auto lines = lines_of(direct.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "alpha,S_ABC,S_BCD");
  const auto row = parse_csv_row(lines[1]);
  CHECK(row[0] == 0.955);
  CHECK(row[1] > 2.99);
  CHECK(row[2] > 2.99);
}

TEST_CASE("json format mirrors the table") {
  const CliResult r = run_cli("scan --n 2 --h 1 --steps 2 --restarts 10 --seed 5 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(r.out);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 2);
  for (const char* key : {"phi", "I_a", "I_u", "S_auth", "S_unauth", "sift_p", "genuine_auth",
                          "genuine_unauth"})
    CHECK(parsed[0].contains(key));
  CHECK(near(parsed[0]["I_a"].get<double>(), 1.0, 1e-9));

  CHECK(run_cli("scan --n 2 --steps 2 --format yaml").exit_code == 2);
}

TEST_CASE("monogamy stays under the pair bound") {
  const CliResult r = run_cli("monogamy --trials 40 --seed 11");
  REQUIRE(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "trials,max_sum");
  const auto row = parse_csv_row(lines[1]);
  CHECK(row[0] == 40.0);
  CHECK(row[1] <= 4.0 + 1e-9);
  CHECK(row[1] > 2.0);  // entangled samples do appear
}
