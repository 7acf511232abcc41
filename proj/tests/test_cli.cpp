#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cqed/commands.hpp"

using namespace cqed;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("cqed_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const nlohmann::json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

nlohmann::json example(const std::string& name) {
  return read_json_file(fs::path(CQED_CONFIG_DIR) / name);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int run(const std::string& command, const fs::path& config, const fs::path& out) {
  std::ostringstream log, err;
  return run_command({command, config, std::nullopt, out.string(), false}, log, err);
}

}  // namespace

TEST_CASE("unknown keys are reported with their path") {
  nlohmann::json j = example("shallow_well.json");
  j["basis"]["gauges"]["rad"]["rungs"] = {1, 2};
  try {
    parse_config(j);
    FAIL("accepted an unknown key");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("basis.gauges.rad.rungs") != std::string::npos);
  }
}

TEST_CASE("conflicting erf charge settings are rejected") {
  nlohmann::json j = example("erf_lattice.json");
  j["model"]["Z"] = 40.0;
  CHECK_THROWS_AS(parse_config(j), Error);
}

TEST_CASE("every example config round trips") {
  for (const char* name : {"steep_well.json", "shallow_well.json", "harmonic.json", "cosine.json", "erf_lattice.json"}) {
    const nlohmann::json once = to_json(load_config(fs::path(CQED_CONFIG_DIR) / name));
    CHECK(to_json(parse_config(once)) == once);
  }
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::Config) == 2);
  CHECK(exit_code_for(ErrorKind::Unsupported) == 2);
  CHECK(exit_code_for(ErrorKind::Numeric) == 3);
  CHECK(exit_code_for(ErrorKind::NonHermitian) == 3);
  CHECK(exit_code_for(ErrorKind::Io) == 1);

  const fs::path d = scratch("exit");
  nlohmann::json j = example("shallow_well.json");
  j["model"]["alpha"] = "three";
  CHECK(run("spectrum", write_config(d, j), d / "out") == 2);
  // Dispersion needs a lattice.
  CHECK(run("dispersion", write_config(d, example("shallow_well.json")), d / "out") == 2);
  CHECK(run("no-such-command", write_config(d, example("shallow_well.json")), d / "out") == 2);
}

TEST_CASE("harmonic spectrum at zero coupling") {
  const fs::path d = scratch("harmonic");
  nlohmann::json j = example("harmonic.json");
  j["cavity"]["gamma_over_omega"] = 0.0;
  j["basis"]["gauges"]["rad"]["rung"] = {60, 6};
  REQUIRE(run("spectrum", write_config(d, j), d / "out") == 0);
  std::ifstream f(d / "out" / "spectrum.csv");
  std::string header, line;
  std::getline(f, header);
  CHECK(header == "gamma_over_omega,eig_index,energy");
  std::getline(f, line);
  const double e0 = std::stod(line.substr(line.rfind(',') + 1));
  CHECK(e0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(fs::exists(d / "out" / "run.json"));
  CHECK(fs::exists(d / "out" / "result.json"));
}

TEST_CASE("matter-solve writes at least fifty states") {
  const fs::path d = scratch("matter");
  REQUIRE(run("matter-solve", fs::path(CQED_CONFIG_DIR) / "shallow_well.json", d) == 0);
  std::ifstream f(d / "matter_energies.csv");
  std::string line;
  int rows = -1;
  while (std::getline(f, line)) ++rows;
  CHECK(rows >= 50);
  CHECK(fs::exists(d / "dipoles.csv"));
}

TEST_CASE("replay reproduces the outputs") {
  const fs::path d = scratch("replay");
  nlohmann::json j = example("shallow_well.json");
  j["basis"]["gauges"]["rad"]["rung"] = {40, 4};
  j["sweep"]["coupling"] = {{"values", {0.1, 1.0}}};
  REQUIRE(run("sweep-coupling", write_config(d, j), d / "first") == 0);
  REQUIRE(run("replay", d / "first" / "run.json", d / "second") == 0);
  CHECK(slurp(d / "first" / "spectrum.csv") == slurp(d / "second" / "spectrum.csv"));
  CHECK(!slurp(d / "first" / "spectrum.csv").empty());
}

TEST_CASE("output directory precedence") {
  ::setenv("CQED_OUTPUT_DIR", "/tmp/from_env", 1);
  CHECK(resolve_output_directory(std::string("flag"), "configured") == "flag");
  CHECK(resolve_output_directory(std::nullopt, "configured") == "configured");
  CHECK(resolve_output_directory(std::nullopt, "") == "/tmp/from_env");
  ::unsetenv("CQED_OUTPUT_DIR");
  CHECK(resolve_output_directory(std::nullopt, "") == "cqed_out");
}
