#include "hyperspin/radial_operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyperspin {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// cosh r - 1 = 2 sinh^2(r/2)
double cosh_minus_one(double r) {
  const double h = std::sinh(0.5 * r);
  return 2.0 * h * h;
}
Jet cosh_minus_one(const Jet& r) {
  const Jet h = sinh(0.5 * r);
  return 2.0 * (h * h);
}

void require_interior(const Jet& r) {
  if (!(r.value() > 0.0)) throw std::domain_error("radial operator evaluated at r <= 0");
}

struct Trig {
  Jet s, c, cm1;
};
Trig trig(const Jet& r) {
  auto [s, c] = sinh_cosh(r);
  return {s, c, cosh_minus_one(r)};
}

}  // namespace

double nu(double r, int m, const FieldConfig& cfg) { return m + cfg.B * cosh_minus_one(r); }

Jet nu(const Jet& r, int m, const FieldConfig& cfg) { return m + cfg.B * cosh_minus_one(r); }

Jet ladder_weight(LadderKind kind, const Jet& r, int m, const FieldConfig& cfg) {
  require_interior(r);
  const Trig t = trig(r);
  switch (kind) {
    case LadderKind::a_minus:
    case LadderKind::b_minus:
      // nu - cosh r = (m - 1) + (B - 1)(cosh r - 1)
      return ((m - 1) + (cfg.B - 1.0) * t.cm1) / t.s;
    case LadderKind::a_plus:
    case LadderKind::b_plus:
      return ((m + 1) + (cfg.B + 1.0) * t.cm1) / t.s;
    case LadderKind::a:
    case LadderKind::b:
      return (m + cfg.B * t.cm1) / t.s;
  }
  throw std::logic_error("unknown ladder kind");
}

RadialFunction apply_ladder(LadderKind kind, const RadialFunction& f, int m,
                            const FieldConfig& cfg) {
  const bool is_a =
      kind == LadderKind::a_minus || kind == LadderKind::a_plus || kind == LadderKind::a;
  const double sign = is_a ? 1.0 : -1.0;
  return f.transform([kind, m, cfg, sign](const Jet& F, const Jet& r) {
    const Jet w = ladder_weight(kind, r, m, cfg);
    return kInvSqrt2 * (sign * F.differentiate() + w * F);
  });
}

RadialFunction laplacian2(const RadialFunction& f, int m, const FieldConfig& cfg) {
  return f.transform([m, cfg](const Jet& F, const Jet& r) {
    require_interior(r);
    const Trig t = trig(r);
    const Jet d1 = F.differentiate();
    const Jet d2 = d1.differentiate();
    const Jet ratio = nu(r, m, cfg) / t.s;
    return d2 + (t.c / t.s) * d1 - (ratio * ratio) * F;
  });
}

RadialOperator compose_pauli_operator(Component channel, int m, const FieldConfig& cfg) {
  using K = LadderKind;
  switch (channel) {
    case Component::Psi1:
      return [m, cfg](const RadialFunction& f) {
        const RadialFunction inner = apply_ladder(K::b_minus, f, m, cfg);
        const RadialFunction outer = apply_ladder(K::a, inner, m, cfg);
        return RadialFunction::combine(-2.0, outer, 0.0, outer);
      };
    case Component::Psi2:
      return [m, cfg](const RadialFunction& f) {
        const RadialFunction ba = apply_ladder(K::b_minus, apply_ladder(K::a, f, m, cfg), m, cfg);
        const RadialFunction ab = apply_ladder(K::a_plus, apply_ladder(K::b, f, m, cfg), m, cfg);
        return RadialFunction::combine(-1.0, ba, -1.0, ab);
      };
    case Component::Psi3:
      return [m, cfg](const RadialFunction& f) {
        const RadialFunction inner = apply_ladder(K::a_plus, f, m, cfg);
        const RadialFunction outer = apply_ladder(K::b, inner, m, cfg);
        return RadialFunction::combine(-2.0, outer, 0.0, outer);
      };
  }
  throw std::logic_error("unknown channel");
}

RadialOperator explicit_pauli_operator(Component channel, int m, const FieldConfig& cfg) {
  // Psi'' + (c/s) Psi' + sigma B Psi - (1 + 2 sigma nu c)/s^2 Psi - nu^2/s^2 Psi
  // with sigma = -1, 0, +1 for Psi1, Psi2, Psi3; Psi2 has no 1/s^2 term.
  const int sigma = channel_offset(channel);
  return [sigma, m, cfg](const RadialFunction& f) {
    return f.transform([sigma, m, cfg](const Jet& F, const Jet& r) {
      require_interior(r);
      const Trig t = trig(r);
      const Jet d1 = F.differentiate();
      const Jet d2 = d1.differentiate();
      const Jet v = nu(r, m, cfg);
      const Jet s2 = t.s * t.s;
      Jet out = d2 + (t.c / t.s) * d1 - ((v * v) / s2) * F;
      if (sigma != 0) {
        out += (sigma * cfg.B) * F;
        out -= ((1.0 + 2.0 * sigma * (v * t.c)) / s2) * F;
      }
      return out;
    });
  };
}

double channel_potential(Component channel, int m, const FieldConfig& cfg, double r) {
  if (!(r > 0.0)) throw std::domain_error("channel_potential: r <= 0");
  const double s = std::sinh(r);
  const double cm1 = cosh_minus_one(r);
  switch (channel) {
    case Component::Psi1: {
      const double w = ((m - 1) + (cfg.B - 1.0) * cm1) / s;
      return cfg.B - 1.0 + w * w;
    }
    case Component::Psi2: {
      const double w = (m + cfg.B * cm1) / s;
      return w * w;
    }
    case Component::Psi3: {
      const double w = ((m + 1) + (cfg.B + 1.0) * cm1) / s;
      return -cfg.B - 1.0 + w * w;
    }
  }
  throw std::logic_error("unknown channel");
}

double effective_potential(Component channel, int m, const FieldConfig& cfg, double r) {
  const double s = std::sinh(r);
  return channel_potential(channel, m, cfg, r) + 0.25 - 0.25 / (s * s);
}

RadialFunction commutator_action(const RadialFunction& f, int m, const FieldConfig& cfg) {
  using K = LadderKind;
  const RadialFunction ab = apply_ladder(K::a_plus, apply_ladder(K::b, f, m, cfg), m, cfg);
  const RadialFunction ba = apply_ladder(K::b_minus, apply_ladder(K::a, f, m, cfg), m, cfg);
  return RadialFunction::combine(1.0, ab, -1.0, ba);
}

CommutatorResult commutator_constant(int m, const FieldConfig& cfg,
                                     std::span<const RadialFunction> probes,
                                     const CommutatorOptions& opt) {
  if (probes.empty()) throw std::invalid_argument("commutator_constant: no probes");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  long count = 0;
  for (const RadialFunction& f : probes) {
    const RadialFunction g = commutator_action(f, m, cfg);
    for (int i = 0; i < opt.samples; ++i) {
      const double r = opt.r_lo + (opt.r_hi - opt.r_lo) * i / (opt.samples - 1);
      const double fv = f(r);
      if (std::fabs(fv) < 1e-8) continue;
      const double ratio = g(r) / fv;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      sum += ratio;
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("commutator_constant: probes vanish on the interval");
  CommutatorResult res{sum / count, hi - lo};
  if (res.spread > opt.tolerance * std::max(1.0, std::fabs(res.value)))
    throw std::runtime_error("commutator_constant: ratio is not constant, operator defect");
  return res;
}

double commutator_profile(double r, int m, const FieldConfig& cfg) {
  static const RadialFunction unit =
      RadialFunction::analytic([](const Jet& x) { return Jet::constant(1.0, x.order()); });
  return commutator_action(unit, m, cfg)(r);
}

}  // namespace hyperspin
