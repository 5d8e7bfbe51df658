#include "hyperspin/wavefunctions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hyperspin/radial_operators.hpp"

namespace hyperspin {

namespace {

using cd = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

bool nonpositive_integer(double g) { return g <= 0.0 && g == std::floor(g); }

double log_prefactor(const BoundWavefunction& w, double r) {
  const double h = 0.5 * r;
  double out = 2.0 * (w.exponents.A + w.n) * std::log(std::cosh(h));
  if (w.exponents.C != 0.0) out += 2.0 * w.exponents.C * std::log(std::sinh(h));
  return out;
}

// Above this z the expansion about z = 1 has the smaller argument.
constexpr double kReflectAbove = 0.4;

double integrate(const std::function<double(double)>& f, double a, double b, double* err) {
  // Panel edges follow the scale on which bound states vary.
  static constexpr double kEdges[] = {0.5, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0};
  std::vector<std::pair<double, double>> panels;
  double lo = a;
  for (double edge : kEdges) {
    if (edge <= lo) continue;
    if (edge >= b) break;
    panels.emplace_back(lo, edge);
    lo = edge;
  }
  panels.emplace_back(lo, b);

  // One fixed rule per panel gives the scale; panels then refine to an
  // error target relative to the whole integral, not to their own size.
  std::vector<double> l1(panels.size());
  double total = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    gauss_kronrod<double, 31>::integrate(f, panels[i].first, panels[i].second, 0, 0.0, nullptr,
                                         &l1[i]);
    total += l1[i];
  }
  double sum = 0.0, e = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (l1[i] == 0.0) continue;
    const double tol = std::clamp(1e-12 * total / l1[i], 1e-11, 1e-3);
    double pe = 0.0;
    sum += gauss_kronrod<double, 31>::integrate(f, panels[i].first, panels[i].second, 15, tol,
                                                &pe);
    e += pe;
  }
  if (err) *err = e;
  return sum;
}

}  // namespace

double HypergeoSeries::operator()(double x) const {
  return static_cast<double>((*this)(static_cast<long double>(x)));
}

long double HypergeoSeries::operator()(long double x) const {
  long double acc = 0.0L;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Jet HypergeoSeries::operator()(const Jet& x) const {
  Jet dx = x;
  dx.coeff(0) = 0.0;
  return compose(x.value(), dx);
}

Jet HypergeoSeries::compose(long double x0, const Jet& dx) const {
  // Horner with derivatives: t[j] = P^(j)(x0) / j!.
  const int order = dx.order();
  std::array<long double, kJetCapacity + 1> t{};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    for (int j = order; j >= 1; --j) t[j] = t[j] * x0 + t[j - 1];
    t[0] = t[0] * x0 + *it;
  }
  Jet acc = Jet::constant(static_cast<double>(t[order]), order);
  for (int j = order - 1; j >= 0; --j) acc = acc * dx + static_cast<double>(t[j]);
  return acc;
}

HypergeoSeries hypergeo_series(int n, double beta, double gamma) {
  if (n < 0) throw std::invalid_argument("hypergeo_series: n must be non-negative");
  if (nonpositive_integer(gamma))
    throw std::invalid_argument("hypergeo_series: gamma is a non-positive integer");
  HypergeoSeries s;
  s.degree = n;
  s.coefficients.resize(n + 1);
  s.coefficients[0] = 1.0L;
  for (int k = 0; k < n; ++k)
    s.coefficients[k + 1] = s.coefficients[k] * (k - n) * (static_cast<long double>(beta) + k) /
                            ((static_cast<long double>(gamma) + k) * (k + 1.0L));
  return s;
}

double terminating_2F1(int n, double beta, double gamma, double y) {
  if (y > 0.0) throw std::domain_error("terminating_2F1: y must be <= 0");
  if (y >= -1.0) return hypergeo_series(n, beta, gamma)(y);
  // Sum whichever series has the smaller absolute terms.
  auto magnitude = [](const HypergeoSeries& s, long double x) {
    long double acc = 0.0L;
    for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it)
      acc = acc * std::fabs(x) + std::fabs(*it);
    return acc;
  };
  const long double z = y / (y - 1.0L);
  const long double scale = std::pow(1.0L - y, n);
  const HypergeoSeries direct = hypergeo_series(n, beta, gamma);
  const HypergeoSeries pfaff = hypergeo_series(n, gamma - beta, gamma);
  if (magnitude(direct, y) <= scale * magnitude(pfaff, z)) return direct(y);
  return static_cast<double>(scale * pfaff(z));
}

double BoundWavefunction::operator()(double r) const {
  if (r < 0.0) throw std::domain_error("wavefunction: r < 0");
  if (r == 0.0) return exponents.C == 0.0 ? std::exp(log_amplitude) : 0.0;
  return std::exp(log_prefactor(*this, r) + log_amplitude) * polynomial(r);
}

double BoundWavefunction::polynomial(double r) const {
  const long double t = std::tanh(0.5L * r);
  if (t * t <= kReflectAbove || reflected.coefficients.empty())
    return static_cast<double>(pfaff(t * t));
  const long double c = std::cosh(0.5L * r);
  return reflected_scale * static_cast<double>(reflected(1.0L / (c * c)));
}

Jet BoundWavefunction::polynomial(const Jet& r) const {
  auto [s, c] = sinh_cosh(0.5 * r);
  const long double t0 = std::tanh(0.5L * r.value());
  if (t0 * t0 <= kReflectAbove || reflected.coefficients.empty()) {
    Jet dz = (s * s) / (c * c);
    dz.coeff(0) = 0.0;
    return pfaff.compose(t0 * t0, dz);
  }
  const long double c0 = std::cosh(0.5L * r.value());
  Jet dw = 1.0 / (c * c);
  dw.coeff(0) = 0.0;
  return reflected_scale * reflected.compose(1.0L / (c0 * c0), dw);
}

Jet BoundWavefunction::operator()(const Jet& r) const {
  if (!(r.value() > 0.0)) throw std::domain_error("wavefunction jet: r <= 0");
  auto [s, c] = sinh_cosh(0.5 * r);
  Jet lp = (2.0 * (exponents.A + n)) * log(c) + log_amplitude;
  if (exponents.C != 0.0) lp += (2.0 * exponents.C) * log(s);
  return exp(lp) * polynomial(r);
}

RadialFunction BoundWavefunction::function() const {
  return RadialFunction::analytic([w = *this](const Jet& r) { return w(r); },
                                  [w = *this](double r) { return w(r); });
}

double BoundWavefunction::tail_exponent() const {
  return 2.0 * (exponents.A + exponents.C + n) + 1.0;
}

BoundWavefunction radial_wavefunction(Component channel, int m, int n, const FieldConfig& cfg,
                                      const RadialOptions& opt) {
  const auto level = nonrel_energy(channel, m, n, cfg);
  if (!level) throw std::invalid_argument("radial_wavefunction: (m, n) is not a bound level");
  const CanonicalFrame f = canonical_frame(channel, m, cfg);

  BoundWavefunction w;
  w.channel = channel;
  w.m = m;
  w.n = n;
  w.cfg = cfg;
  w.variant = bound_variant(f.channel, f.m);
  w.exponents = exponent_pair(f.channel, w.variant, f.m, f.cfg);
  w.level = *level;
  const HypergeometricParams p = hypergeo_params(f.channel, w.variant, f.m, f.cfg, 2.0 * *level);
  w.series = hypergeo_series(n, p.beta, p.gamma);
  w.pfaff = hypergeo_series(n, p.gamma - p.beta, p.gamma);
  // 2F1(-n, b; c; z) = (c - b)_n / (c)_n 2F1(-n, b; b - c - n + 1; 1 - z)
  const double reflected_gamma = -p.beta - n + 1.0;
  if (!nonpositive_integer(reflected_gamma)) {
    w.reflected = hypergeo_series(n, p.gamma - p.beta, reflected_gamma);
    for (int k = 0; k < n; ++k) w.reflected_scale *= (p.beta + k) / (p.gamma + k);
  }

  // Scale by the peak of the power prefactor before integrating.
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 4000; ++i) peak = std::max(peak, log_prefactor(w, opt.r_max * i / 4000.0));
  w.log_amplitude = -peak;
  const NormResult nr = normalize(w.function(), opt.r_max, w.tail_exponent());
  if (nr.divergent || !(nr.norm > 0.0))
    throw std::runtime_error("radial_wavefunction: normalization failed");
  w.norm = nr.norm;
  w.log_amplitude -= 0.5 * std::log(nr.norm);
  return w;
}

NormResult normalize(const RadialFunction& psi, double r_max, std::optional<double> decay_rate) {
  const double r_lo = psi.is_sampled() ? psi.grid().front() : 0.0;
  if (!(r_max > r_lo)) throw std::invalid_argument("normalize: empty interval");
  auto integrand = [&psi](double r) {
    const double v = psi(r);
    return v * v * std::sinh(r);
  };
  NormResult res;
  res.norm = integrate(integrand, r_lo, r_max, &res.quadrature_error);

  const double edge = integrand(r_max);
  if (edge == 0.0) return res;
  double rate;
  if (decay_rate) {
    rate = *decay_rate;
  } else {
    const double inner = integrand(r_max - 1.0);
    rate = inner > 0.0 ? std::log(edge / inner) : 0.0;
  }
  if (!(rate < 0.0)) {
    res.divergent = true;
    res.norm = std::numeric_limits<double>::infinity();
    return res;
  }
  res.tail_estimate = edge / -rate;
  res.norm += res.tail_estimate;
  return res;
}

double overlap(const RadialFunction& a, const RadialFunction& b, double r_max) {
  const double r_lo = std::max(a.is_sampled() ? a.grid().front() : 0.0,
                               b.is_sampled() ? b.grid().front() : 0.0);
  return integrate([&](double r) { return a(r) * b(r) * std::sinh(r); }, r_lo, r_max, nullptr);
}

int node_count(const BoundWavefunction& psi, double r_max, int samples) {
  int nodes = 0;
  double prev = psi.polynomial(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double g = psi.polynomial(r_max * i / samples);
    if (g == 0.0) continue;
    if ((g < 0.0) != (prev < 0.0)) ++nodes;
    prev = g;
  }
  return nodes;
}

double ode_residual(const BoundWavefunction& psi, std::optional<double> level) {
  const double X = 2.0 * level.value_or(psi.level);
  const RadialFunction f = psi.function();
  const RadialFunction Lf = explicit_pauli_operator(psi.channel, psi.m, psi.cfg)(f);
  double worst = 0.0, scale = 0.0;
  constexpr int kSamples = 600;
  for (int i = 0; i < kSamples; ++i) {
    const double r = 0.05 + (12.0 - 0.05) * i / (kSamples - 1);
    const double v = f(r);
    scale = std::max(scale, std::fabs(v));
    worst = std::max(worst, std::fabs(Lf(r) + X * v));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

cd ModeComponent::operator()(double r) const {
  if (is_zero()) return 0.0;
  return factor * (*profile)(r);
}

Phi2ModeFields phi2_mode_fields(const BoundWavefunction& psi2, double eps) {
  if (psi2.channel != Component::Psi2)
    throw std::invalid_argument("phi2_mode_fields: needs a Psi2-channel profile");
  const double M = psi2.cfg.M;
  const double X = eps * eps - M * M;
  if (std::fabs(X - 2.0 * psi2.level) > 1e-9 * (1.0 + std::fabs(X)))
    throw std::invalid_argument("phi2_mode_fields: eps does not match the profile's level");
  const cd i(0.0, 1.0);
  Phi2ModeFields out;
  out.Phi2 = psi2;
  out.eps = eps;
  const RadialFunction phi = psi2.function();
  auto& c = out.fields.c;
  c[kPhi2] = {1.0, phi};
  c[kH1] = {-i / M, apply_ladder(LadderKind::a, phi, psi2.m, psi2.cfg)};
  c[kH3] = {i / M, apply_ladder(LadderKind::b, phi, psi2.m, psi2.cfg)};
  c[kE2] = {-i * eps / M, phi};
  return out;
}

std::array<double, 10> first_order_residuals(const RadialFields& f, int m, const FieldConfig& cfg,
                                             double eps, std::span<const double> radii) {
  using K = LadderKind;
  const double M = cfg.M;
  const cd i(0.0, 1.0);

  std::map<std::pair<K, int>, std::optional<RadialFunction>> ladders;
  auto ladder_of = [&](K k, int idx) {
    auto key = std::make_pair(k, idx);
    auto it = ladders.find(key);
    if (it == ladders.end()) {
      std::optional<RadialFunction> g;
      if (!f.c[idx].is_zero()) g = apply_ladder(k, *f.c[idx].profile, m, cfg);
      it = ladders.emplace(key, std::move(g)).first;
    }
    return &it->second;
  };
  const std::pair<K, int> needed[] = {{K::b_minus, kE1}, {K::a_plus, kE3}, {K::b_minus, kH1},
                                      {K::a_plus, kH3},  {K::a, kH2},      {K::b, kH2},
                                      {K::a, kPhi0},     {K::a, kPhi2},    {K::b, kPhi0},
                                      {K::b, kPhi2},     {K::b_minus, kPhi1}, {K::a_plus, kPhi3}};
  for (auto [k, idx] : needed) ladder_of(k, idx);

  std::array<double, 10> worst{};
  double scale = 0.0;
  for (double r : radii) {
    std::array<cd, kFieldCount> v;
    for (int k = 0; k < kFieldCount; ++k) {
      v[k] = f.c[k](r);
      scale = std::max(scale, std::abs(v[k]));
    }
    auto L = [&](K k, int idx) -> cd {
      const auto* g = ladder_of(k, idx);
      return *g ? f.c[idx].factor * (**g)(r) : cd(0.0);
    };
    const std::array<cd, 10> res = {
        -L(K::b_minus, kE1) - L(K::a_plus, kE3) - M * v[kPhi0],
        -i * L(K::b_minus, kH1) + i * L(K::a_plus, kH3) + i * eps * v[kE2] - M * v[kPhi2],
        i * L(K::a, kH2) + i * eps * v[kE1] - M * v[kPhi1],
        -i * L(K::b, kH2) + i * eps * v[kE3] - M * v[kPhi3],
        L(K::a, kPhi0) - i * eps * v[kPhi1] - M * v[kE1],
        -i * L(K::a, kPhi2) - M * v[kH1],
        L(K::b, kPhi0) - i * eps * v[kPhi3] - M * v[kE3],
        i * L(K::b, kPhi2) - M * v[kH3],
        -i * eps * v[kPhi2] - M * v[kE2],
        i * L(K::b_minus, kPhi1) - i * L(K::a_plus, kPhi3) - M * v[kH2],
    };
    for (int k = 0; k < 10; ++k) worst[k] = std::max(worst[k], std::abs(res[k]));
  }
  const double denom = scale * std::max({1.0, M, std::fabs(eps)});
  if (denom > 0.0)
    for (double& w : worst) w /= denom;
  return worst;
}

}  // namespace hyperspin
