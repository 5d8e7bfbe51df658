#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyperspin/cli.hpp"

namespace hs = hyperspin;
namespace cli = hyperspin::cli;

int main(int argc, char** argv) {
  cli::RunConfig rc;
  std::string m_range, channel;

  CLI::App app{"Spin-1 Landau levels on the hyperbolic plane: spectra, wavefunctions, oracle"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; flags on the command line take precedence");

  app.add_option("--B", rc.B, "magnetic field strength (either sign)")->capture_default_str();
  app.add_option("--M", rc.M, "mass parameter")->capture_default_str();
  app.add_option("--m-range", m_range, "inclusive m window a..b (default -3..4)");
  app.add_option("--n-max", rc.n_max, "highest n listed; -1 lists every bound level")
      ->capture_default_str();
  app.add_option("--channel", channel, "psi1, psi2 or psi3 (default: all; psi2 for single runs)");
  app.add_option("--m", rc.m, "magnetic quantum number")->capture_default_str();
  app.add_option("--n", rc.n, "radial quantum number")->capture_default_str();
  app.add_flag("--relativistic", rc.relativistic, "relativistic branches / coupled oracle");
  app.add_flag("--check", rc.check, "compare each closed-form level with the oracle");
  app.add_flag("--include-unbound", rc.include_unbound, "list n up to --n-max even when unbound");
  app.add_option("--rmin", rc.grid.r_min, "oracle grid inner radius")->capture_default_str();
  app.add_option("--rmax", rc.grid.r_max, "oracle grid / sampling outer radius")
      ->capture_default_str();
  app.add_option("--grid-points", rc.grid.N, "oracle interior nodes on the first grid")
      ->capture_default_str();
  app.add_option("--tol", rc.tol, "bisection width")->capture_default_str();
  app.add_option("--samples", rc.samples, "wavefunction sample count")->capture_default_str();
  app.add_option("--threads", rc.threads, "worker threads for sweeps (0: hardware)")
      ->capture_default_str();
  app.add_option("--format", rc.format, "csv or json")->capture_default_str();
  app.add_option("-o,--output", rc.output,
                 "output file (relative paths resolve against $HYPERSPIN_OUTPUT_DIR)");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum table");
  auto* wavefunction = app.add_subcommand("wavefunction", "sampled normalized radial wavefunction");
  auto* oracle = app.add_subcommand("oracle", "finite-difference eigenvalues as JSON");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  auto* region = app.add_subcommand("region", "allowed m values and bound-state counts");
  for (auto* sub : {spectrum, wavefunction, oracle, verify, region}) sub->fallthrough();

  verify->add_flag("--quick", rc.quick, "skip the oracle sweep, small grid for arbitration");
  for (const auto& name : cli::verify_section_names())
    verify->add_flag_callback("--" + name, [&rc, name] { rc.sections.push_back(name); },
                              "run the " + name + " checks (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  if (spectrum->parsed()) rc.command = cli::Command::spectrum;
  if (wavefunction->parsed()) rc.command = cli::Command::wavefunction;
  if (oracle->parsed()) rc.command = cli::Command::oracle;
  if (verify->parsed()) rc.command = cli::Command::verify;
  if (region->parsed()) rc.command = cli::Command::region;

  try {
    if (!m_range.empty()) {
      std::tie(rc.m_lo, rc.m_hi) = cli::parse_m_range(m_range);
      rc.m_range_set = true;
    }
    if (!channel.empty()) {
      rc.channel = hs::parse_component(channel);
      if (!rc.channel) throw cli::UsageError("--channel must be psi1, psi2 or psi3");
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }

  if (rc.output.empty()) return cli::run(rc, std::cout, std::cerr);
  const std::string path = cli::resolve_output_path(rc.output);
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot open " << path << "\n";
    return cli::kUsage;
  }
  return cli::run(rc, file, std::cerr);
}
