#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tpi/config.hpp"

using namespace tpi;

namespace {

std::string run(std::string_view command, const RunConfig& c, int expected = kExitOk) {
  std::ostringstream out, err;
  const int code = run_command(command, c, out, err);
  CAPTURE(err.str());
  CHECK(code == expected);
  return out.str();
}

// Value of the "# config:" line of a CSV document.
std::string metadata_line(const std::string& csv) {
  const std::string tag = "# config: ";
  const auto begin = csv.find(tag);
  REQUIRE(begin != std::string::npos);
  const auto end = csv.find('\n', begin);
  return csv.substr(begin + tag.size(), end - begin - tag.size());
}

const char* kReferencePair = R"({
  "emitters": [
    {"lifetime_ps": 700, "dephasing_rate_mhz": 600, "inhomogeneous_fwhm_mhz": 1400},
    {"lifetime_ps": 650, "dephasing_rate_mhz": 300, "inhomogeneous_fwhm_mhz": 800}
  ],
  "tau_ps": {"min": -1000, "max": 1000, "points": 21},
  "detuning_ghz": [-1, 0, 0.5, 3]
})";

}  // namespace

TEST_CASE("every shipped config parses and round-trips") {
  for (const char* name : {"qd_pair_tuning", "qd_pair_g2_resonant", "qd_pair_g2_detuned", "decompose_coherence_times", "visibility_map",
                           "bell_g2_rr", "fidelity_map", "pair_gold", "pair_reindl", "pair_zopf",
                           "assess_molecule", "assess_nv", "assess_qd_resonant", "assess_qd_voigt", "assess_siv",
                           "verify_default"}) {
    CAPTURE(name);
    const RunConfig c = load_config(std::string(TPI_SOURCE_DIR) + "/configs/" + name + ".json");
    CHECK(parse_config(serialize_config(c)) == c);
  }
}

TEST_CASE("round-trip of non-trivial fields") {
  RunConfig c = parse_config(kReferencePair);
  c.gate.kind = GateKind::matrix;
  c.gate.matrix = {{{0.6, 0.0}, {0.0, 0.8}}, {{0.0, 0.8}, {0.6, 0.0}}};
  c.seed = 123456789012345ULL;
  c.verify.stderr_band = 2.5;
  c.format = OutputFormat::json;
  c.linewidths.push_back(LinewidthConfig{410, LinewidthKind::components, 0, 0, 470.1, 480.3, 550});
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(700.0) == "700");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"emiters": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"emitters": [{"lifetime_ps": 1}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"gate": {"type": "prism"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"gate": {"type": "matrix", "elements": [[[1,0],[0,0]],[[0,0],[0.5,0]]]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"gate": {"type": "cnot", "basis": "XY"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tau_ps": {"min": 0, "max": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"format": "xml"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": -1})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.json"), ConfigError);
}

TEST_CASE("outputs are byte-identical across runs and carry their config") {
  const RunConfig c = parse_config(kReferencePair);
  for (const char* cmd : {"g2", "tuning"}) {
    CAPTURE(cmd);
    const std::string a = run(cmd, c);
    CHECK(a == run(cmd, c));
    CHECK(a.rfind(std::string("# command: ") + cmd + "\n", 0) == 0);
    CHECK(parse_config(metadata_line(a)) == c);
  }
  RunConfig j = c;
  j.format = OutputFormat::json;
  const std::string doc = run("tuning", j);
  const auto parsed = nlohmann::json::parse(doc);
  CHECK(parsed.at("command") == "tuning");
  CHECK(parse_config(parsed.at("config").dump()) == j);
  CHECK(parsed.at("rows").size() == 4);
  CHECK(parsed.at("columns") == nlohmann::json::array({"detuning_ghz", "visibility"}));
}

TEST_CASE("tuning values") {
  const std::string csv = run("tuning", parse_config(kReferencePair));
  CHECK(csv.find("\n0,0.2916") != std::string::npos);
}

TEST_CASE("map commands write long-format tables") {
  const RunConfig c = parse_config(R"({"theta_pd": [1, 2], "theta_sd": {"min": 0, "max": 1, "points": 3}})");
  const std::string v = run("vmap", c);
  CHECK(v.find("theta_pd,theta_sd,visibility\n1,0,1\n") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : v) lines += ch == '\n';
  CHECK(lines == 3 + 6);
  CHECK(run("fmap", c).find("theta_pd,theta_sd,fidelity\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  const RunConfig c = parse_config(kReferencePair);
  run("nope", c, kExitUsage);
  run("vmap", c, kExitUsage);  // grids missing
  run("assess", c, kExitUsage);
  run("g2", RunConfig{}, kExitUsage);  // emitters missing
  RunConfig empty = c;
  empty.tau_ps = GridConfig{};
  run("g2", empty, kExitUsage);
  RunConfig infeasible;
  infeasible.linewidths.push_back(LinewidthConfig{1000, LinewidthKind::coherence_time, 2500});
  run("decompose", infeasible, kExitUsage);
}

TEST_CASE("decompose and assess") {
  const RunConfig c = parse_config(R"({"linewidths": [{"lifetime_ps": 670, "coherence_time_ps": 330}], "samples": 5})");
  const std::string d = run("decompose", c);
  std::size_t lines = 0;
  for (char ch : d) lines += ch == '\n';
  CHECK(lines == 3 + 5);
  const std::string a = run("assess", c);
  CHECK(a.find("visibility_min,visibility_max,fidelity_min,fidelity_max,points\n") != std::string::npos);
}

TEST_CASE("verify with reduced settings") {
  RunConfig c;
  c.verify.instances = 5;
  c.verify.phase_trials = kMinimumTrials;
  c.verify.g2_instances = 1;
  c.verify.g2_taus = 2;
  c.verify.g2_realizations = 32;
  const std::string out = run("verify", c);
  CHECK(out.find(",fail\n") == std::string::npos);
  CHECK(out.find("check,observed,limit,status\n") != std::string::npos);
}
