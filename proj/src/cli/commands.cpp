#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "hyperspin/cli.hpp"
#include "hyperspin/radial_operators.hpp"
#include "hyperspin/spectra.hpp"
#include "hyperspin/wavefunctions.hpp"

namespace hyperspin::cli {

using nlohmann::json;

namespace {

std::vector<Component> selected_channels(const RunConfig& cfg) {
  if (cfg.channel) return {*cfg.channel};
  return {Component::Psi1, Component::Psi2, Component::Psi3};
}

void require_field(const RunConfig& cfg) {
  if (cfg.B == 0.0) throw UsageError("no bound states at B=0");
}

struct Row {
  Component channel;
  std::string variant;
  int m;
  int n;
  double value;
  LevelKind kind;
  double threshold;
  bool bound;
  double oracle = std::nan("");
};

double spectrum_kappa(const RunConfig& rc) {
  const FieldConfig field{rc.B, rc.M};
  const auto probes = standard_probes();
  return commutator_constant(0, field, probes).value / rc.B;
}

}  // namespace

int run_spectrum(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  rc.validate();
  require_field(rc);
  const FieldConfig field{rc.B, rc.M};
  const std::vector<Component> channels = selected_channels(rc);

  std::vector<oracle::OracleResult> checked;
  std::vector<oracle::NonrelProblem> problems;
  if (rc.check) {
    for (Component ch : channels)
      for (int m = rc.m_lo; m <= rc.m_hi; ++m) problems.push_back({ch, m, field});
    oracle::OracleOptions opt;
    opt.tol = rc.tol;
    checked = oracle::solve_nonrel_sweep(problems, rc.grid, opt, rc.threads);
  }

  const double kappa = rc.relativistic ? spectrum_kappa(rc) : 0.0;
  const LevelKind rel_kinds[] = {LevelKind::rel_phi2, LevelKind::rel_gprime,
                                 LevelKind::rel_phi0prime};

  std::vector<Row> rows;
  bool unconverged = false;
  std::size_t problem = 0;
  for (Component ch : channels) {
    const double threshold = continuum_threshold(ch, field) / 2.0;
    for (int m = rc.m_lo; m <= rc.m_hi; ++m, ++problem) {
      const int count = bound_state_count(ch, m, field);
      const CanonicalFrame f = canonical_frame(ch, m, field);
      const std::string variant(to_string(bound_variant(f.channel, f.m)));
      const int last = rc.n_max < 0 ? count - 1 : rc.n_max;
      const oracle::OracleResult* o = rc.check ? &checked[problem] : nullptr;
      if (o && o->count_below != count) {
        err << "warning: " << to_string(ch) << " m=" << m << ": oracle finds " << o->count_below
            << " levels, closed form " << count << "\n";
      }
      for (int n = 0; n <= last; ++n) {
        const bool bound = n < count;
        if (!bound && !rc.include_unbound) break;
        Row row{ch, variant, m, n, std::nan(""), LevelKind::nonrel, threshold, bound};
        if (bound) row.value = *nonrel_energy(ch, m, n, field);
        if (o && n < static_cast<int>(o->eigenvalues.size())) {
          row.oracle = o->eigenvalues[n] / 2.0;
          unconverged = unconverged || !o->converged[n];
        }
        rows.push_back(row);
        if (!rc.relativistic || ch != Component::Psi2) continue;
        for (LevelKind kind : rel_kinds) {
          Row rel = row;
          rel.kind = kind;
          rel.threshold = relativistic_threshold(kind, field, kappa);
          rel.value = bound ? *relativistic_energy(kind, m, n, field, kappa) : std::nan("");
          if (!std::isnan(row.oracle))
            rel.oracle = relativistic_from_x(kind, 2.0 * row.oracle, field, kappa).value_or(std::nan(""));
          rows.push_back(rel);
        }
      }
    }
  }

  if (rc.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json j = {{"channel", to_string(r.channel)}, {"variant", r.variant}, {"m", r.m},
                {"n", r.n}, {"kind", to_string(r.kind)}, {"bound", r.bound}};
      j["value"] = std::isnan(r.value) ? json(nullptr) : json(r.value);
      j["threshold"] = r.threshold;
      if (rc.check) {
        j["oracle"] = std::isnan(r.oracle) ? json(nullptr) : json(r.oracle);
        j["abs_diff"] = std::isnan(r.oracle - r.value) ? json(nullptr)
                                                       : json(std::fabs(r.oracle - r.value));
      }
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else {
    out << "channel,variant,m,n,value,kind,threshold,bound";
    if (rc.check) out << ",oracle,abs_diff";
    out << "\n";
    for (const Row& r : rows) {
      out << to_string(r.channel) << ',' << r.variant << ',' << r.m << ',' << r.n << ','
          << format_number(r.value) << ',' << to_string(r.kind) << ','
          << format_number(r.threshold) << ',' << (r.bound ? "true" : "false");
      if (rc.check)
        out << ',' << format_number(r.oracle) << ',' << format_number(std::fabs(r.oracle - r.value));
      out << "\n";
    }
  }
  if (unconverged) {
    err << "error: oracle did not converge for some levels\n";
    return kNotConverged;
  }
  return kOk;
}

int run_wavefunction(const RunConfig& rc, std::ostream& out, std::ostream&) {
  rc.validate();
  require_field(rc);
  const FieldConfig field{rc.B, rc.M};
  const Component ch = rc.channel.value_or(Component::Psi2);
  if (rc.n >= bound_state_count(ch, rc.m, field))
    throw UsageError("(" + std::string(to_string(ch)) + ", m=" + std::to_string(rc.m) +
                     ", n=" + std::to_string(rc.n) + ") is not a bound state");
  const BoundWavefunction psi = radial_wavefunction(ch, rc.m, rc.n, field, {rc.grid.r_max});
  const double r_max = rc.grid.r_max;

  json header = {{"channel", to_string(ch)},
                 {"m", rc.m},
                 {"n", rc.n},
                 {"B", rc.B},
                 {"M", rc.M},
                 {"variant", to_string(psi.variant)},
                 {"exponents", {{"A", psi.exponents.A}, {"C", psi.exponents.C}}},
                 {"level", psi.level},
                 {"norm", psi.norm},
                 {"nodes", node_count(psi, r_max)}};

  std::vector<double> r(rc.samples), v(rc.samples);
  for (int i = 0; i < rc.samples; ++i) {
    r[i] = r_max * i / (rc.samples - 1);
    v[i] = psi(r[i]);
  }
  if (rc.format == "json") {
    header["r"] = r;
    header["psi"] = v;
    out << header.dump(2) << "\n";
    return kOk;
  }
  out << "# " << header.dump() << "\n";
  out << "r,psi\n";
  for (int i = 0; i < rc.samples; ++i)
    out << format_number(r[i]) << ',' << format_number(v[i]) << "\n";
  return kOk;
}

int run_oracle(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  rc.validate();
  const FieldConfig field{rc.B, rc.M};
  oracle::OracleOptions opt;
  opt.tol = rc.tol;
  json j;
  bool converged = true;
  if (rc.relativistic) {
    const auto r = oracle::solve_relativistic_coupled(rc.m, field, rc.grid, -1, {}, opt);
    j = to_json(r);
    converged = r.converged;
  } else {
    const Component ch = rc.channel.value_or(Component::Psi2);
    const auto r = oracle::solve_nonrel(ch, rc.m, field, rc.grid, -1, opt);
    j = to_json(r);
    j["channel"] = to_string(ch);
    json closed = json::array();
    for (const auto& e : nonrel_levels(ch, rc.m, field)) closed.push_back(2.0 * e.value);
    j["closed_form"] = closed;
    for (bool c : r.converged) converged = converged && c;
  }
  j["m"] = rc.m;
  j["B"] = rc.B;
  j["M"] = rc.M;
  out << j.dump(2) << "\n";
  if (!converged) {
    err << "error: oracle did not converge\n";
    return kNotConverged;
  }
  return kOk;
}

int run_region(const RunConfig& rc, std::ostream& out, std::ostream&) {
  rc.validate();
  require_field(rc);
  const FieldConfig field{rc.B, rc.M};
  int lo = rc.m_lo, hi = rc.m_hi;
  if (!rc.m_range_set) {
    const int edge = static_cast<int>(std::ceil(std::fabs(rc.B)));
    const int width = std::max(12, edge + 2);
    lo = rc.B > 0 ? -width : -edge - 2;
    hi = rc.B > 0 ? edge + 2 : width;
  }
  const MInterval allowed = allowed_m_interval(field);
  if (rc.format == "json") {
    json arr = json::array();
    for (Component ch : selected_channels(rc))
      for (int m = lo; m <= hi; ++m)
        arr.push_back({{"channel", to_string(ch)},
                       {"m", m},
                       {"allowed", allowed.contains(m)},
                       {"count", bound_state_count(ch, m, field)}});
    out << arr.dump(2) << "\n";
    return kOk;
  }
  out << "channel,m,allowed,count\n";
  for (Component ch : selected_channels(rc))
    for (int m = lo; m <= hi; ++m)
      out << to_string(ch) << ',' << m << ',' << (allowed.contains(m) ? "true" : "false") << ','
          << bound_state_count(ch, m, field) << "\n";
  return kOk;
}

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  try {
    switch (rc.command) {
      case Command::spectrum: return run_spectrum(rc, out, err);
      case Command::wavefunction: return run_wavefunction(rc, out, err);
      case Command::oracle: return run_oracle(rc, out, err);
      case Command::verify: return run_verify(rc, out, err);
      case Command::region: return run_region(rc, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace hyperspin::cli
