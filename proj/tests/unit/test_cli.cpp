#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef EULERPS_CLI
#error "EULERPS_CLI must point at the command-line binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() / ("eulerps_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(file(name)) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

int run(const Workdir& w, const std::string& args) {
  const std::string cmd = "cd '" + w.path.string() + "' && '" EULERPS_CLI "' " + args + " > out.txt 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kShear = R"({"type": "shear", "p": [1, 0, 0], "G": [0, 0, 1], "coefficients": {"1": [1, 0]}})";

}  // namespace

TEST_CASE("verify exit codes") {
  Workdir w;
  CHECK(run(w, "verify -s cases=300") == 0);
  CHECK(nlohmann::json::parse(w.read("out.txt")).at("passed") == true);
  CHECK(run(w, "verify -s cases=200 -s fault_injection=j_sign -s output.report=r.json") == 1);
  CHECK(w.read("out.txt").find("check_antisymmetry") != std::string::npos);
  w.write("bad.json", "{\"N\": ");
  CHECK(run(w, "verify -c bad.json") == 2);
  CHECK(run(w, "verify -c missing.json") == 2);
  CHECK(run(w, "bogus") == 2);
}

TEST_CASE("simulate writes diagnostics and resumes bit-identically") {
  Workdir w;
  w.write("cfg.json", R"({"N": 1, "dt": 0.01, "steps": 20, "record_every": 1, "seed": 3,
                          "output": {"csv": "full.csv", "final_snapshot": "full_end.json"}})");
  REQUIRE(run(w, "simulate -c cfg.json") == 0);
  const std::string full = w.read("full.csv");
  CHECK(full.rfind("t,E,h,div_max,amp_max\n", 0) == 0);

  REQUIRE(run(w, "simulate -c cfg.json -s steps=8 -s output.csv=a.csv -s output.final_snapshot=mid.json") == 0);
  REQUIRE(run(w, "simulate -c cfg.json -s steps=12 -s output.csv=b.csv -s output.final_snapshot=end.json "
                 "-s 'initial={\"type\":\"snapshot\",\"path\":\"mid.json\"}'") == 0);
  CHECK(w.read("end.json") == w.read("full_end.json"));
  // The resumed CSV repeats the snapshot row and then continues the full run.
  const std::string a = w.read("a.csv"), b = w.read("b.csv");
  const std::string b_body = b.substr(b.find('\n') + 1);
  CHECK(a + b_body.substr(b_body.find('\n') + 1) == full);

  // Worker count does not change a single byte.
  REQUIRE(run(w, "simulate -c cfg.json -s workers=3 -s output.csv=par.csv -s output.final_snapshot=par.json") == 0);
  CHECK(w.read("par.csv") == full);
}

TEST_CASE("simulate from a shear state has no drift") {
  Workdir w;
  w.write("cfg.json", std::string(R"({"N": 2, "dt": 0.001, "steps": 200, "structure": "reduced", "initial": )") +
                          kShear + "}");
  REQUIRE(run(w, "simulate -c cfg.json -s output.report=r.json") == 0);
  const auto r = nlohmann::json::parse(w.read("r.json"));
  CHECK(r.at("energy_drift").get<double>() <= 1e-12);
  CHECK(r.at("helicity_drift").get<double>() <= 1e-12);
}

TEST_CASE("blow-up exits 3 and keeps the last good state") {
  Workdir w;
  CHECK(run(w, "simulate -s amplitude=1e150 -s dt=1 -s steps=50 -s output.last_good=lg.json") == 3);
  CHECK(fs::exists(w.file("lg.json")));
  CHECK(nlohmann::json::parse(w.read("lg.json")).contains("modes"));
}

TEST_CASE("shear, rank and export commands") {
  Workdir w;
  w.write("shear.json", std::string(R"({"N": 1, "steps": 100, "initial": )") + kShear + "}");
  REQUIRE(run(w, "shear -c shear.json") == 0);
  const auto s = nlohmann::json::parse(w.read("out.txt"));
  CHECK(s.at("equilibrium") == true);
  CHECK(s.at("gradient_span").at("in_kernel") == true);
  CHECK(s.at("max_state_deviation").get<double>() <= 1e-12);

  REQUIRE(run(w, "rank -c shear.json") == 0);
  const auto r = nlohmann::json::parse(w.read("out.txt"));
  CHECK(r.at("corank").at("kernel_enlargement").get<long>() > 0);

  REQUIRE(run(w, "rank -c shear.json -s 'initial={\"type\":\"zero\"}'") == 0);
  CHECK(nlohmann::json::parse(w.read("out.txt")).at("corank").at("degenerate") == true);

  CHECK(run(w, R"(rank -c shear.json -s 'initial={"type":"shear","p":[1,0,0],"G":[0,0,1],"coefficients":{"2":[1,0]}}')") == 2);
  CHECK(w.read("err.txt").find("outside the box") != std::string::npos);

  REQUIRE(run(w, "export -c shear.json -s output.tensor=t") == 0);
  CHECK(fs::file_size(w.file("t.bin")) == 78u * 78u * 16u);
  CHECK(nlohmann::json::parse(w.read("t.json")).at("dimension") == 78);
}
