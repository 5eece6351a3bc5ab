#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "spinchain/chain_profiles.hpp"
#include "spinchain/io.hpp"

namespace fs = std::filesystem;
using namespace spinchain;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("spinchain_cli_" + std::to_string(std::rand()) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("profile command") {
  TempDir dir;
  const Result lin = run({"profile", "--system", "pst-linear", "--n", "50", "--out", dir.file("p.txt")});
  REQUIRE(lin.code == 0);
  std::istringstream rec(slurp(dir.file("p.txt")));
  const CouplingProfile p = io::read_profile_record(rec);
  CHECK(p.couplings().size() == 49);
  CHECK(p == pst_linear_profile(50));
  CHECK(lin.out.find("couplings=49") != std::string::npos);
  // An equally spaced spectrum reports identical minimum and maximum gaps.
  const auto gap = [&](const std::string& key) {
    const auto at = lin.out.find(key) + key.size();
    return std::stod(lin.out.substr(at, lin.out.find_first_of(" \n", at) - at));
  };
  CHECK(gap("min_gap=") == doctest::Approx(gap("max_gap=")).epsilon(1e-10));

  const Result quad = run({"profile", "--system", "pst-quadratic", "--n", "4"});
  REQUIRE(quad.code == 0);
  std::istringstream qrec(quad.out);
  const CouplingProfile q = io::read_profile_record(qrec);
  CHECK(q.couplings().size() == 3);
  const JacobiReconstruction want = solve_persymmetric_jacobi(power_law_spectrum(4, 2));
  for (int i = 1; i <= 3; ++i) CHECK(q.coupling(i) == want.profile.coupling(i));

  CHECK(run({"profile", "--system", "alpha", "--n", "10", "--alpha", "1.5"}).code != 0);
  CHECK(run({"profile", "--system", "alpha", "--n", "10"}).code == 2);
  CHECK(run({"profile", "--system", "zigzag", "--n", "10"}).code != 0);
  CHECK(run({"profile", "--n", "10"}).code == 2);
  CHECK(run({"profile", "--system", "alpha-weak", "--n", "11"}).out.find("alpha_boundary(0.01)") != std::string::npos);
}

TEST_CASE("evolve command") {
  TempDir dir;
  const Result r = run({"evolve", "--system", "pst_linear", "--n", "50", "--t-points", "101", "--out", dir.file("c.csv")});
  REQUIRE(r.code == 0);
  std::istringstream in(slurp(dir.file("c.csv")));
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,f,F");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    rows.push_back(v);
  }
  REQUIRE(rows.size() == 101);
  CHECK(rows.back()[0] == doctest::Approx(2 * std::numbers::pi * 50 / 4));
  CHECK(rows[50][2] == doctest::Approx(1.0).epsilon(1e-10));

  const Result j = run({"evolve", "--system", "homogeneous", "--n", "8", "--t-points", "5", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["t"].size() == 5);
  CHECK(doc["F"][0] == 0.5);

  CHECK(run({"evolve", "--system", "pst_linear", "--n", "50", "--t-points", "0"}).code == 2);
  CHECK(run({"evolve", "--system", "pst_linear", "--n", "50", "--t-min", "5", "--t-max", "1"}).code == 2);
  CHECK(run({"evolve", "--system", "pst_linear", "--n", "50", "--format", "xml"}).code == 2);
}

TEST_CASE("revival peaks of the boundary-controlled chain decay") {
  TempDir dir;
  const Result r = run({"evolve", "--system", "alpha-opt", "--n", "200", "--t-max", "340", "--t-points", "34001",
                        "--format", "json", "--out", dir.file("a.json")});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir.file("a.json")));
  const std::vector<double> t = doc["t"], F = doc["F"];
  // Arrivals at the far end occur near odd multiples of N/2.
  const auto peak = [&](double lo, double hi) {
    double best = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= lo && t[i] <= hi) best = std::max(best, F[i]);
    }
    return best;
  };
  const double first = peak(70, 130), second = peak(280, 340);
  CHECK(first > 0.9);
  CHECK(second < first);
}

TEST_CASE("spectrum command") {
  const Result r = run({"spectrum", "--system", "homogeneous", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.starts_with("system,N,k,E,P_k1\nhomogeneous,3,1,-1.41421356237,0.25\n"));
  CHECK(run({"spectrum", "--preset", "fig9"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
}

TEST_CASE("sweep command, seeding and completeness") {
  TempDir dir;
  const std::vector<std::string> base{"sweep", "--system", "pst_linear", "--n", "20", "--n", "30",
                                      "--epsilon-grid", "0.01:0.1:3", "--model", "asd",
                                      "--realizations", "20", "--no-timestamp"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  const Result one = run(with({"--seed", "5", "--threads", "1", "--out", dir.file("a.csv")}));
  const Result two = run(with({"--seed", "5", "--threads", "3", "--out", dir.file("b.csv")}));
  REQUIRE(one.code == 0);
  REQUIRE(two.code == 0);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
  std::istringstream in(slurp(dir.file("a.csv")));
  const SweepTable t = io::read_sweep_csv(in);
  CHECK(t.rows.size() == 6);
  CHECK(t.rows[0].master_seed == 5);

  CHECK(run(with({"--seed", "6"})).out != run(with({"--seed", "5"})).out);
  setenv("SPINCHAIN_SEED", "5", 1);
  CHECK(run(with({})).out == run(with({"--seed", "5"})).out);
  setenv("SPINCHAIN_SEED", "banana", 1);
  CHECK(run(with({})).code == 2);
  unsetenv("SPINCHAIN_SEED");
  CHECK(run(with({})).out.find(",12345\n") != std::string::npos);

  const Result stamped = run({"sweep", "--system", "pst_linear", "--n", "10", "--epsilon", "0.1", "--realizations", "3"});
  CHECK(stamped.out.starts_with("# generated "));

  const Result json = run(with({"--format", "json"}));
  REQUIRE(json.code == 0);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["complete"] == true);
  CHECK(doc["rows"].size() == 6);

  const Result partial = run({"sweep", "--system", "alpha_opt", "--n", "3", "--n", "6", "--epsilon", "0.1",
                              "--realizations", "3", "--no-timestamp"});
  CHECK(partial.code == 1);
  CHECK(partial.out.starts_with("# complete=false failures=1\n"));
  CHECK(partial.err.find("cell failed") != std::string::npos);

  CHECK(run({"sweep", "--n", "10", "--epsilon", "0.1"}).code == 2);
  CHECK(run({"sweep", "--system", "pst_linear", "--epsilon", "0.1"}).code == 2);
  CHECK(run({"sweep", "--system", "pst_linear", "--n", "10", "--epsilon", "-0.1"}).code == 2);
  CHECK(run({"sweep", "--system", "pst_linear", "--n", "10", "--epsilon", "0.1", "--model", "xsd"}).code != 0);
  CHECK(run({"sweep", "--preset", "fig7"}).code == 2);
  CHECK(run({"sweep", "--system", "pst_linear", "--n-range", "10-20", "--epsilon", "0.1"}).code == 2);
}

TEST_CASE("contour, fit and crossover commands") {
  TempDir dir;
  {
    SweepTable t;
    for (int n = 50; n <= 200; n += 10) {
      for (double e : {0.01, 0.02, 0.04, 0.08, 0.16, 0.32}) {
        t.rows.push_back({"pst_linear", n, e, DisorderModel::rsd, 1.0, std::exp(-2.0 * n * e * e), 0.0, 1, 0});
        t.rows.push_back({"alpha_opt", n, e, DisorderModel::rsd, 1.0, 0.95 - 0.4 * e, 0.0, 1, 0});
      }
    }
    std::ofstream out(dir.file("t.csv"));
    io::write_sweep_csv(out, t);
  }
  const Result c = run({"contour", "--table", dir.file("t.csv"), "--system", "pst_linear", "--out", dir.file("c.json")});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("beta=") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(dir.file("c.json")));
  CHECK(doc["points"].size() == 16);
  CHECK(doc["beta"].get<double>() == doctest::Approx(2.0).epsilon(0.05));

  const Result f = run({"fit", "--contour", dir.file("c.json")});
  REQUIRE(f.code == 0);
  CHECK(f.out.starts_with("beta="));

  const Result x = run({"crossover", "--table", dir.file("t.csv"), "--system-a", "pst_linear", "--system-b",
                        "alpha_opt", "--n", "100", "--out", dir.file("x.json")});
  REQUIRE(x.code == 0);
  CHECK(x.out.starts_with("epsilon_cross="));
  CHECK(x.out.find("none") == std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir.file("x.json")))["epsilon_cross"].is_number());
  const Result none = run({"crossover", "--table", dir.file("t.csv"), "--system-a", "pst_linear", "--system-b",
                           "pst_linear", "--n", "100"});
  CHECK(none.out == "epsilon_cross=none\n");

  const Result missing = run({"contour", "--table", dir.file("t.csv"), "--system", "pst_quadratic"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("bracket") != std::string::npos);
  const Result fig4 = run({"contour", "--table", dir.file("t.csv"), "--preset", "fig4", "--out", dir.file("f4.json")});
  CHECK(fig4.code == 1);
  CHECK(nlohmann::json::parse(slurp(dir.file("f4.json"))).size() == 6);

  CHECK(run({"contour", "--table", dir.file("nope.csv"), "--system", "pst_linear"}).code == 1);
  {
    std::ofstream bad(dir.file("bad.json"));
    bad << "{ not json";
  }
  CHECK(run({"fit", "--contour", dir.file("bad.json")}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"profile", "--system", "pst-linear", "--n", "ten"}).code == 2);
  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("sweep") != std::string::npos);
}
