#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <regex>

#include "hyperspin/cli.hpp"

namespace hyperspin::cli {

using nlohmann::json;

void RunConfig::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(B)) throw UsageError("--B must be a finite number");
  if (!finite(M) || !(M > 0.0)) throw UsageError("--M must be positive");
  if (m_lo > m_hi) throw UsageError("--m-range: lower bound exceeds upper bound");
  if (n_max < -1) throw UsageError("--n-max must be >= 0");
  if (n < 0) throw UsageError("--n must be >= 0");
  if (!(grid.r_min > 0.0)) throw UsageError("--rmin must be positive");
  if (!(grid.r_max > grid.r_min)) throw UsageError("--rmax must exceed --rmin");
  if (grid.N < 2) throw UsageError("--grid-points must be at least 2");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (samples < 2) throw UsageError("--samples must be at least 2");
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  const auto& known = verify_section_names();
  for (const auto& name : sections)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw UsageError("unknown verify section '" + name + "'");
}

std::pair<int, int> parse_m_range(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
  std::smatch mt;
  if (!std::regex_match(text, mt, re)) throw UsageError("--m-range expects a..b, got '" + text + "'");
  const int lo = std::stoi(mt[1].str()), hi = std::stoi(mt[2].str());
  if (lo > hi) throw UsageError("--m-range: lower bound exceeds upper bound");
  return {lo, hi};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const double a = std::fabs(x);
  if (a >= 1e-3 && a < 1e6) {
    const int digits = 11 - static_cast<int>(std::floor(std::log10(a)));
    std::snprintf(buf, sizeof buf, "%.*f", std::max(digits, 0), x);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
    }
    return s == "-0" ? "0" : s;
  }
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

std::string resolve_output_path(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.is_absolute()) return path;
  if (const char* dir = std::getenv("HYPERSPIN_OUTPUT_DIR"); dir && *dir)
    return (fs::path(dir) / p).string();
  return path;
}

namespace {

json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;  // JSON has no inf/nan
}

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json grid_json(const oracle::Grid& g) { return {{"r_min", g.r_min}, {"r_max", g.r_max}, {"N", g.N}}; }

oracle::Grid grid_from(const json& j) {
  return {j.at("r_min").get<double>(), j.at("r_max").get<double>(), j.at("N").get<long>()};
}

}  // namespace

json to_json(const oracle::OracleResult& r) {
  json grids = json::array();
  for (const auto& g : r.grids) grids.push_back(grid_json(g));
  json drift = json::array();
  for (double d : r.drift) drift.push_back(number(d));
  return {{"eigenvalues", r.eigenvalues},
          {"raw", r.raw},
          {"converged", r.converged},
          {"drift", drift},
          {"threshold", r.threshold},
          {"count_below", r.count_below},
          {"grid_used", grid_json(r.grid_used)},
          {"grids", grids},
          {"coarse_warning", r.coarse_warning}};
}

oracle::OracleResult oracle_result_from_json(const json& j) {
  oracle::OracleResult r;
  r.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  r.raw = j.at("raw").get<std::vector<double>>();
  r.converged = j.at("converged").get<std::vector<bool>>();
  for (const auto& d : j.at("drift")) r.drift.push_back(number_from(d));
  r.threshold = j.at("threshold").get<double>();
  r.count_below = j.at("count_below").get<long>();
  r.grid_used = grid_from(j.at("grid_used"));
  for (const auto& g : j.at("grids")) r.grids.push_back(grid_from(g));
  r.coarse_warning = j.at("coarse_warning").get<bool>();
  return r;
}

json to_json(const oracle::RelativisticResult& r) {
  json hyps = json::array();
  for (const auto& h : r.hypotheses)
    hyps.push_back({{"kappa", h.kappa},
                    {"eps", h.eps},
                    {"max_abs_diff", number(h.max_abs_diff)},
                    {"matches", h.matches}});
  json grids = json::array();
  for (const auto& g : r.grids) grids.push_back(grid_json(g));
  return {{"eps_cut", r.eps_cut},
          {"coupled", r.coupled},
          {"coupled_raw", r.coupled_raw},
          {"phi2", r.phi2},
          {"hypotheses", hyps},
          {"verified_kappa", r.verified_kappa ? json(*r.verified_kappa) : json(nullptr)},
          {"measured_kappa", r.measured_kappa},
          {"stable_under_refinement", r.stable_under_refinement},
          {"grids", grids},
          {"converged", r.converged}};
}

}  // namespace hyperspin::cli
