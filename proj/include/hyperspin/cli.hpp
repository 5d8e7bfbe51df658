#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperspin/oracle.hpp"
#include "hyperspin/types.hpp"

namespace hyperspin::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kNotConverged = 3,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Command { spectrum, wavefunction, oracle, verify, region };

struct RunConfig {
  Command command = Command::spectrum;
  double B = 5.0;
  double M = 1.0;
  int m_lo = -3;
  int m_hi = 4;
  bool m_range_set = false;
  int n_max = -1;  ///< highest n to list; -1 lists every bound level
  std::optional<Component> channel;
  int m = 0;
  int n = 0;
  bool relativistic = false;
  bool check = false;
  bool include_unbound = false;
  oracle::Grid grid;
  double tol = 1e-10;
  int samples = 200;
  bool quick = false;
  unsigned threads = 0;
  std::string format = "csv";
  std::string output;  ///< empty: stdout
  /// verify sections to run (dkp, operators, kappa, spectra, decoupling,
  /// wavefunctions, relativistic, oracle); empty runs all.
  std::vector<std::string> sections;

  /// Throws UsageError.
  void validate() const;
};

/// "a..b" (either bound may be negative). Throws UsageError.
std::pair<int, int> parse_m_range(const std::string& text);

/// 12 significant digits; scientific outside 1e-3 <= |x| < 1e6.
std::string format_number(double x);

/// Each returns an ExitCode; tables go to `out`, diagnostics to `err`.
int run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_region(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Names accepted by RunConfig::sections.
const std::vector<std::string>& verify_section_names();

nlohmann::json to_json(const oracle::OracleResult& r);
oracle::OracleResult oracle_result_from_json(const nlohmann::json& j);
nlohmann::json to_json(const oracle::RelativisticResult& r);

/// Resolves an output path against $HYPERSPIN_OUTPUT_DIR when it is relative.
std::string resolve_output_path(const std::string& path);

}  // namespace hyperspin::cli
