#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgehull/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wedgehull");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = wedge::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wedgehull_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// Drops the wall_ms column (second to last).
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto last = line.rfind(',');
    const auto prev = line.rfind(',', last - 1);
    out += line.substr(0, prev) + line.substr(last) + '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"constants"}).code == 2);
  CHECK(run({"constants", "--dim", "3", "--samples", "10"}).code == 2);
  CHECK(run({"simulate", "--model", "binomial", "--dim", "2", "--grid", "8,4", "--reps", "2"}).code == 2);
  CHECK(run({"simulate", "--model", "cube"}).code == 2);
  CHECK(run({"verify", "--suite", "nonsense"}).code != 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("constants subcommand") {
  const Result r = run({"constants", "--dim", "2", "--samples", "100000", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("d") == 2);
  CHECK(j.at("exact").at("c_d2").get<double>() == doctest::Approx(4.0 / 3.0));
  const double a = j.at("A_d").at("value").get<double>();
  const double se = j.at("A_d").at("std_error").get<double>();
  CHECK(std::abs(a - 2.0 / 3.0) < 4 * se);
  CHECK(run({"constants", "--dim", "2", "--samples", "100000", "--seed", "3"}).out == r.out);
}

TEST_CASE("simulate writes reproducible files") {
  const fs::path a = scratch("a"), b = scratch("b");
  const std::vector<std::string> base = {"simulate", "--model", "binomial", "--dim", "2", "--grid", "64:1024:x2",
                                         "--reps", "20", "--seed", "5", "--fit-window", "64:1024:x2"};
  auto with = [&](const fs::path& dir, const std::string& workers) {
    auto v = base;
    v.insert(v.end(), {"--out", dir.string(), "--workers", workers});
    return run(v);
  };
  const Result ra = with(a, "1"), rb = with(b, "3");
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  const fs::path csv = "binomial_d2_seed5.csv", json = "binomial_d2_seed5.json";
  REQUIRE(fs::exists(a / csv));
  REQUIRE(fs::exists(a / json));
  CHECK(strip_timing(slurp(a / csv)) == strip_timing(slurp(b / csv)));
  const auto ja = nlohmann::json::parse(slurp(a / json)), jb = nlohmann::json::parse(slurp(b / json));
  CHECK(ja.at("fit") == jb.at("fit"));
  CHECK(ja.at("means") == jb.at("means"));
  CHECK(ja.at("theory_slope").get<double>() == doctest::Approx(4.0 / 3.0));
  CHECK(nlohmann::json::parse(ra.out) == ja);

  const fs::path poly = scratch("poly");
  const Result rp = run({"simulate", "--model", "polygon", "--ell", "4", "--dim", "2", "--grid", "16,32,64",
                         "--reps", "5", "--out", poly.string()});
  CHECK(rp.code == 0);
  CHECK(fs::exists(poly / "polygon_d2_ell4_seed0.csv"));
}

TEST_CASE("output directory from the environment") {
  const fs::path env = scratch("env");
  setenv("WEDGEHULL_OUT", env.c_str(), 1);
  const Result r = run({"simulate", "--model", "halfsphere", "--dim", "2", "--grid", "8,16,32", "--reps", "3"});
  unsetenv("WEDGEHULL_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(env / "halfsphere_d2_seed0.csv"));
}

TEST_CASE("config file with flag overrides") {
  const fs::path dir = scratch("cfg");
  {
    std::ofstream f(dir / "c.json");
    f << R"({"model": "poisson", "d": 2, "grid": "20:80:x2", "reps": 4, "master_seed": 9})";
  }
  const Result r = run({"simulate", "--config", (dir / "c.json").string(), "--seed", "10", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "poisson_d2_seed10.csv"));
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run({"simulate", "--config", (dir / "broken.json").string()}).code == 2);
}

TEST_CASE("verify subcommand") {
  const Result r = run({"verify", "--suite", "appendix"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_object());
}
