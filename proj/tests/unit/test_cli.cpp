#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

std::string bin() {
  const char* b = std::getenv("ZKLAB_BIN");
  return b ? b : "zklab";
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("zklab_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args, const fs::path& dir) {
  std::string cmd = bin() + " " + args + " 2>" + (dir / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("missing key exits with 1 and names the key") {
  auto d = scratch("missing");
  std::ofstream(d / "c.ini") << "[norms]\ns = 0.5\n";
  CHECK(run("--config " + (d / "c.ini").string() + " --out " + (d / "out").string() + " norms", d) == 1);
  CHECK(slurp(d / "stderr.txt").find("norms.dump") != std::string::npos);
}

TEST_CASE("exact triangle census has one Bad entry") {
  auto d = scratch("triangle");
  std::ofstream(d / "c.ini") << "[classify]\ntriple = 0,128,-64,-64\n";
  CHECK(run("--config " + (d / "c.ini").string() + " --out " + d.string() + " classify", d) == 0);
  auto census = slurp(d / "census.csv");
  CHECK(census.find(",bad,1\n") != std::string::npos);
  CHECK(slurp(d / "resolved_config.ini").find("triple = 0,128,-64,-64") != std::string::npos);
}

TEST_CASE("identical configs give byte-identical output") {
  auto d = scratch("determinism");
  std::ofstream(d / "c.ini") << "threads = 2\n[classify]\nsamples = 2000\nN_min = 1024\n";
  for (auto sub : {"a", "b"})
    CHECK(run("--config " + (d / "c.ini").string() + " --out " + (d / sub).string() + " --seed 9 classify", d) == 0);
  CHECK(slurp(d / "a" / "census.csv") == slurp(d / "b" / "census.csv"));
  CHECK(!slurp(d / "a" / "census.csv").empty());
  CHECK(slurp(d / "a" / "resolved_config.ini").find("seed = 9") != std::string::npos);
}

TEST_CASE("simulate and norms round trip") {
  auto d = scratch("simulate");
  std::ofstream(d / "c.ini") << "[simulate]\nxi_max = 4\nn_x1 = 32\nk_max = 4\nT = 0.02\ndt = 0.0005\n"
                             << "dump_stride = 8\n[norms]\ns = 1\ndump = " << (d / "trajectory.bin").string() << "\n";
  CHECK(run("--config " + (d / "c.ini").string() + " --out " + d.string() + " simulate", d) == 0);
  CHECK(slurp(d / "summary.csv").find("picard") != std::string::npos);
  CHECK(run("--config " + (d / "c.ini").string() + " --out " + d.string() + " norms", d) == 0);
  auto n = slurp(d / "norms.csv");
  CHECK(n.find("xsb") != std::string::npos);
  CHECK(n.find("zsb") != std::string::npos);
}

TEST_CASE("non-convergence exits with 2") {
  auto d = scratch("diverge");
  std::ofstream(d / "c.ini") << "[simulate]\nxi_max = 4\nn_x1 = 32\nk_max = 4\nT = 0.02\ndt = 0.0005\n"
                             << "amplitude = 500\nmax_iter = 2\noracle = 0\n";
  CHECK(run("--config " + (d / "c.ini").string() + " --out " + d.string() + " simulate", d) == 2);
}

TEST_CASE("unknown subcommand argument is rejected") {
  auto d = scratch("bad_lemma");
  CHECK(run("--out " + d.string() + " verify-lemma nonsense", d) != 0);
}
