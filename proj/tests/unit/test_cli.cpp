#include <doctest.h>

#include <cstdlib>
#include <map>
#include <sstream>

#include "hyperspin/cli.hpp"

using namespace hyperspin;
using namespace hyperspin::cli;

namespace {

struct Output {
  int code;
  std::string out, err;
};

Output run_with(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(2.5) == "2.5");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-4.0) == "-4");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(123456.789) == "123456.789");
  CHECK(format_number(std::sqrt(6.0)) == "2.44948974278");
  CHECK(format_number(1e6) == "1.00000000000e+06");
  CHECK(format_number(1.5e-4) == "1.50000000000e-04");
  CHECK(format_number(1e-3) == "0.001");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("m ranges and validation") {
  CHECK(parse_m_range("-3..4") == std::pair<int, int>{-3, 4});
  CHECK(parse_m_range(" -12 .. -2 ") == std::pair<int, int>{-12, -2});
  CHECK_THROWS_AS(parse_m_range("4..-3"), UsageError);
  CHECK_THROWS_AS(parse_m_range("a..b"), UsageError);
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.M = 0.0;
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.format = "xml";
  CHECK_THROWS_AS(cfg.validate(), UsageError);
  cfg = RunConfig{};
  cfg.sections = {"nonsense"};
  CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("spectrum table") {
  RunConfig cfg;
  cfg.B = 5;
  cfg.m_lo = -3;
  cfg.m_hi = 4;
  cfg.n_max = 6;
  cfg.channel = Component::Psi2;
  const Output o = run_with(cfg);
  CHECK(o.code == kOk);
  const auto ls = lines(o.out);
  REQUIRE(!ls.empty());
  CHECK(ls[0] == "channel,variant,m,n,value,kind,threshold,bound");
  std::map<int, int> rows_per_m;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    REQUIRE(f.size() == 8);
    rows_per_m[std::stoi(f[2])]++;
  }
  CHECK(rows_per_m[-2] == 5);
  CHECK(ls[1 + 5 + 5] == "psi2,V1,-1,0,2.5,nonrel,12.625,true");
  // byte-stable
  CHECK(run_with(cfg).out == o.out);
}

TEST_CASE("spectrum edge cases and exit codes") {
  RunConfig cfg;
  cfg.B = 5;
  cfg.m_lo = 7;
  cfg.m_hi = 9;
  Output o = run_with(cfg);
  CHECK(o.code == kOk);
  CHECK(lines(o.out).size() == 1);

  cfg.B = 0;
  o = run_with(cfg);
  CHECK(o.code == kUsage);
  CHECK(o.err.find("no bound states at B=0") != std::string::npos);

  cfg = RunConfig{};
  cfg.M = -1;
  CHECK(run_with(cfg).code == kUsage);

  cfg = RunConfig{};
  cfg.command = Command::wavefunction;
  cfg.m = 9;
  CHECK(run_with(cfg).code == kUsage);
}

TEST_CASE("spectrum with oracle check and relativistic rows") {
  RunConfig cfg;
  cfg.B = 5;
  cfg.m_lo = cfg.m_hi = -2;
  cfg.channel = Component::Psi2;
  cfg.check = true;
  cfg.relativistic = true;
  cfg.grid = oracle::Grid{1e-6, 30, 3000};
  const Output o = run_with(cfg);
  CHECK(o.code == kOk);
  const auto ls = lines(o.out);
  CHECK(ls[0] == "channel,variant,m,n,value,kind,threshold,bound,oracle,abs_diff");
  REQUIRE(ls.size() == 1 + 5 * 4);
  const auto phi2 = split(ls[2]);
  CHECK(phi2[5] == "rel_phi2");
  CHECK(std::stod(phi2[4]) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-10));
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::stod(split(ls[i])[9]) < 1e-6);
}

TEST_CASE("region table") {
  RunConfig cfg;
  cfg.command = Command::region;
  cfg.B = 5;
  cfg.channel = Component::Psi2;
  const auto pos = lines(run_with(cfg).out);
  cfg.B = -5;
  const auto neg = lines(run_with(cfg).out);
  std::map<int, int> count_pos, count_neg;
  for (std::size_t i = 1; i < pos.size(); ++i) count_pos[std::stoi(split(pos[i])[1])] = std::stoi(split(pos[i])[3]);
  for (std::size_t i = 1; i < neg.size(); ++i) count_neg[std::stoi(split(neg[i])[1])] = std::stoi(split(neg[i])[3]);
  CHECK(count_pos.count(4));
  CHECK(count_pos[4] > 0);
  CHECK(count_pos[5] == 0);
  for (auto [m, c] : count_pos) CHECK(count_neg[-m] == c);
  for (int m = 1; m < 6; ++m) CHECK(count_pos[m] <= count_pos[m - 1]);
}

TEST_CASE("wavefunction output") {
  RunConfig cfg;
  cfg.command = Command::wavefunction;
  cfg.B = 5;
  cfg.m = -2;
  cfg.n = 2;
  cfg.samples = 50;
  const auto ls = lines(run_with(cfg).out);
  REQUIRE(ls.size() == 52);
  REQUIRE(ls[0].rfind("# ", 0) == 0);
  const auto header = nlohmann::json::parse(ls[0].substr(2));
  CHECK(header["nodes"] == 2);
  CHECK(header["level"] == 9.5);
  CHECK(header["exponents"]["A"] == -6.0);
  CHECK(ls[1] == "r,psi");
}

TEST_CASE("oracle JSON round trip") {
  const auto r = oracle::solve_nonrel(Component::Psi2, -2, FieldConfig{5, 1}, oracle::Grid{1e-6, 30, 2000});
  const nlohmann::json j = to_json(r);
  const auto back = oracle_result_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.eigenvalues == r.eigenvalues);
  CHECK(back.raw == r.raw);
  CHECK(back.converged == r.converged);
  CHECK(back.drift == r.drift);
  CHECK(back.threshold == r.threshold);
  CHECK(back.count_below == r.count_below);
  CHECK(back.grid_used.N == r.grid_used.N);
  CHECK(back.grids.size() == r.grids.size());
  CHECK(to_json(back) == j);

  RunConfig cfg;
  cfg.command = Command::oracle;
  cfg.B = 5;
  cfg.m = -2;
  cfg.grid = oracle::Grid{1e-6, 30, 2000};
  const Output o = run_with(cfg);
  CHECK(o.code == kOk);
  const auto parsed = nlohmann::json::parse(o.out);
  CHECK(parsed["closed_form"][0] == 5.0);
  CHECK(parsed["eigenvalues"][0].get<double>() == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("verify report: findings and section selection") {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.quick = true;
  cfg.sections = {"kappa", "spectra", "dkp"};
  const Output o = run_with(cfg);
  CHECK(o.code == kOk);
  CHECK(o.out.find("[PASS] dkp.trilinear") != std::string::npos);
  CHECK(o.out.find("finding: kappa = 1") != std::string::npos);
  CHECK(o.out.find("gives -7.5 at (psi2, B=5, m=-2, n=0)") != std::string::npos);
  CHECK(o.out.find("requires 4.5") != std::string::npos);
  CHECK(o.out.find("[FAIL]") == std::string::npos);
  CHECK(o.out.find("operators.") == std::string::npos);
}

TEST_CASE("output directory") {
  ::setenv("HYPERSPIN_OUTPUT_DIR", "/tmp/hs-out", 1);
  CHECK(resolve_output_path("a.csv") == "/tmp/hs-out/a.csv");
  CHECK(resolve_output_path("/abs/a.csv") == "/abs/a.csv");
  ::unsetenv("HYPERSPIN_OUTPUT_DIR");
  CHECK(resolve_output_path("a.csv") == "a.csv");
}
