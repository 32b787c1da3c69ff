// End-to-end tests of the command-line tool.  The binary path comes from the
// SU11OSC_BIN environment variable (set by the CMake test registration).

#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

std::string binary_path() {
  const char* p = std::getenv("SU11OSC_BIN");
  REQUIRE_MESSAGE(p != nullptr, "SU11OSC_BIN must point at the su11osc binary");
  return p;
}

RunResult run(const std::string& args, const std::string& env = {}) {
  const std::string cmd =
      (env.empty() ? "" : env + " ") + binary_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "su11osc_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_config(const std::string& name, const nlohmann::json& j) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << j.dump(2);
  return p.string();
}

nlohmann::json base_config() {
  return {{"m0", 1.0},         {"omega", 1.0},   {"omega_ac", 0.0},
          {"phi_ac", 0.9},     {"mu_moment", 0.25}, {"b_field", 0.8},
          {"s", 1},            {"ml_numerator", 1}, {"eta", 1.0},
          {"spacetime", "Minkowski"}};
}

}  // namespace

TEST_CASE("config validation failures exit with code 2") {
  CHECK(run("spectrum --config /nonexistent/config.json").exit_code == 2);

  auto bad = base_config();
  bad["ml_numerator"] = 2;  // must be odd
  CHECK(run("spectrum --config " + write_config("bad_ml.json", bad)).exit_code == 2);

  const fs::path garbled = scratch_dir() / "garbled.json";
  std::ofstream(garbled) << "{ not json";
  CHECK(run("spectrum --config " + garbled.string()).exit_code == 2);

  CHECK(run("spectrum").exit_code == 2);  // missing required --config
}

TEST_CASE("degenerate frequency exits with code 3") {
  auto cfg = base_config();
  cfg["omega"] = 0.5;
  cfg["omega_ac"] = 1.0;  // omega_bar = 0
  const std::string path = write_config("degenerate.json", cfg);
  CHECK(run("spectrum --config " + path).exit_code == 3);
  CHECK(run("wavefunction --config " + path).exit_code == 3);
}

TEST_CASE("deterministic output: identical bytes across runs") {
  const std::string path = write_config("det.json", base_config());
  const RunResult a = run("spectrum --config " + path + " --nmax 6");
  const RunResult b = run("spectrum --config " + path + " --nmax 6");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  const std::string wf = "wavefunction --config " + path + " --nr 2 --grid-points 512";
  CHECK(run(wf).output == run(wf).output);
}

TEST_CASE("csv and json formats carry the same numbers") {
  const std::string path = write_config("fmt.json", base_config());
  const RunResult csv = run("spectrum --config " + path + " --nmax 3");
  const RunResult js = run("spectrum --config " + path + " --nmax 3 --format json");
  REQUIRE(csv.exit_code == 0);
  REQUIRE(js.exit_code == 0);

  const auto parsed = nlohmann::json::parse(js.output);
  const auto& records = parsed.at("records");
  REQUIRE(records.size() == 4);

  // re-parse the CSV rows
  std::istringstream is(csv.output);
  std::string line;
  std::getline(is, line);  // header
  CHECK(line == "n_r,n_s,E_plus,E_minus");
  int i = 0;
  while (std::getline(is, line)) {
    double nr, ns, ep, em;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &nr, &ns, &ep, &em) == 4);
    CHECK(records[i].at("E_plus").get<double>() == ep);  // bitwise round trip
    CHECK(records[i].at("E_minus").get<double>() == em);
    ++i;
  }
  CHECK(i == 4);
}

TEST_CASE("branch filter trims columns") {
  const std::string path = write_config("branch.json", base_config());
  const RunResult r = run("spectrum --config " + path + " --nmax 1 --branch particle");
  CHECK(r.output.rfind("n_r,n_s,E_plus\n", 0) == 0);
}

TEST_CASE("eta = 1 cosmic string is byte-identical to flat spacetime") {
  auto flat = base_config();
  auto cone = base_config();
  cone["spacetime"] = "CosmicString";
  const std::string pf = write_config("ident_flat.json", flat);
  const std::string pc = write_config("ident_cone.json", cone);

  const std::vector<std::string> commands = {
      "spectrum --nmax 5",
      "sweep-phase --nr 1 --phi-points 11",
      "wavefunction --nr 1 --grid-points 512",
      "coherent --xi-re 0.3 --xi-im 0.2 --t 0.5 --grid-points 512",
      "uncertainty --z-re 0.4 --z-im -0.1",
      "matrix-elements --nmax 5",
  };
  for (const auto& cmd : commands) {
    INFO("command: ", cmd);
    const RunResult a = run(cmd + " --config " + pf);
    const RunResult b = run(cmd + " --config " + pc);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("sweep-phase marks the periodicity identity") {
  const std::string path = write_config("sweep.json", base_config());
  const RunResult r = run("sweep-phase --config " + path + " --nr 0 --phi-points 9");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.output);
  std::string line;
  std::getline(is, line);
  CHECK(line == "phi_ac,n_r,s,E_plus,E_minus,periodicity");
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(line.substr(line.size() - 4) == "PASS");
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("coherent output carries a JSON header with the state labels") {
  const std::string path = write_config("coh.json", base_config());
  const RunResult r =
      run("coherent --config " + path + " --xi-re 0.25 --grid-points 512");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.rfind("# {", 0) == 0);
  const auto header = nlohmann::json::parse(r.output.substr(2, r.output.find('\n') - 2));
  CHECK(header.at("xi_re").get<double>() == 0.25);
  CHECK(header.at("norm").get<double>() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("coherent at xi = 0 reproduces the lowest wavefunction") {
  const std::string path = write_config("coh0.json", base_config());
  const RunResult coh = run("coherent --config " + path + " --grid-points 512");
  const RunResult wf = run("wavefunction --config " + path + " --nr 0 --grid-points 512");
  REQUIRE(coh.exit_code == 0);
  REQUIRE(wf.exit_code == 0);

  std::istringstream ic(coh.output), iw(wf.output);
  std::string lc, lw;
  std::getline(ic, lc);  // json header comment
  std::getline(ic, lc);  // column header
  std::getline(iw, lw);
  int rows = 0;
  while (std::getline(ic, lc) && std::getline(iw, lw)) {
    double rho_c, re, im, abs2, rho_w, val;
    REQUIRE(std::sscanf(lc.c_str(), "%lf,%lf,%lf,%lf", &rho_c, &re, &im, &abs2) == 4);
    REQUIRE(std::sscanf(lw.c_str(), "%lf,%lf", &rho_w, &val) == 2);
    CHECK(rho_c == rho_w);
    CHECK(std::abs(re - val) <= 1e-13);
    CHECK(im == 0.0);
    ++rows;
  }
  CHECK(rows == 512);
}

TEST_CASE("uncertainty at z = 0 is the textbook equality case") {
  const std::string path = write_config("unc.json", base_config());
  const RunResult r = run("uncertainty --config " + path + " --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  const double k = j.at("k").get<double>();
  CHECK(j.at("lhs").get<double>() == doctest::Approx(4.0 * k * k).epsilon(1e-14));
  CHECK(j.at("rhs").get<double>() == doctest::Approx(4.0 * k * k).epsilon(1e-14));
}

TEST_CASE("verify: algebra-only level passes quickly") {
  const std::string path = write_config("verify_a.json", base_config());
  const RunResult r = run("verify --config " + path + " --level algebra-only");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("first_failure").is_null());
}

TEST_CASE("verify: a deliberately coarse grid fails on the commutators") {
  const std::string path = write_config("verify_c.json", base_config());
  const RunResult r = run("verify --config " + path + " --grid-points 512");
  CHECK(r.exit_code == 1);
  const auto j = nlohmann::json::parse(r.output);
  CHECK_FALSE(j.at("pass").get<bool>());
  const std::string first = j.at("first_failure").get<std::string>();
  CHECK(first.rfind("commutator", 0) == 0);
}

TEST_CASE("SU11_GRID_POINTS overrides the default grid size") {
  const std::string path = write_config("env.json", base_config());
  const RunResult r = run("wavefunction --config " + path + " --nr 0",
                          "SU11_GRID_POINTS=512");
  REQUIRE(r.exit_code == 0);
  int rows = -1;  // subtract header
  for (char c : r.output)
    if (c == '\n') ++rows;
  CHECK(rows == 512);
}

TEST_CASE("manifest config round-trips into an identical run") {
  const std::string path = write_config("rt.json", base_config());
  const fs::path out = scratch_dir() / "rt_spectrum.csv";
  REQUIRE(run("spectrum --config " + path + " --nmax 3 --out " + out.string())
              .exit_code == 0);
  std::ifstream mf(out.string() + ".manifest.json");
  const auto man = nlohmann::json::parse(mf);

  const fs::path cfg2 = scratch_dir() / "rt_config2.json";
  std::ofstream(cfg2) << man.at("config").dump(2);
  const RunResult again = run("spectrum --config " + cfg2.string() + " --nmax 3");
  std::ifstream f1(out);
  std::stringstream s1;
  s1 << f1.rdbuf();
  CHECK(again.output == s1.str());
}

TEST_CASE("--out writes the data plus a manifest sidecar") {
  const std::string path = write_config("man.json", base_config());
  const fs::path out = scratch_dir() / "spectrum.csv";
  const RunResult r = run("spectrum --config " + path + " --nmax 2 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(out));
  REQUIRE(fs::exists(out.string() + ".manifest.json"));

  std::ifstream mf(out.string() + ".manifest.json");
  const auto man = nlohmann::json::parse(mf);
  CHECK(man.at("command").get<std::string>() == "spectrum");
  CHECK(man.at("config").at("ml_numerator").get<int>() == 1);
  const std::string checksum = man.at("output_checksum").get<std::string>();
  CHECK(checksum.rfind("fnv1a64:", 0) == 0);

  // same invocation reproduces the same bytes and checksum
  const fs::path out2 = scratch_dir() / "spectrum2.csv";
  run("spectrum --config " + path + " --nmax 2 --out " + out2.string());
  std::ifstream f1(out), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
}
