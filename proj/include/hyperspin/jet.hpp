#pragma once

// Truncated Taylor arithmetic ("jets") used to differentiate radial
// functions exactly through operator compositions.
//
// A Jet stores normalized Taylor coefficients c[k] = f^(k)(r0) / k! up to
// the compile-time capacity kJetCapacity, together with the number of
// coefficients that are still valid. Differentiation consumes one order.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hyperspin {

inline constexpr int kJetCapacity = 5;

class Jet {
 public:
  Jet() = default;

  /// Constant with every valid derivative equal to zero.
  static Jet constant(double value, int order = kJetCapacity) {
    Jet j;
    j.order_ = order;
    j.c_[0] = value;
    return j;
  }

  /// The independent variable r expanded around r0.
  static Jet variable(double r0, int order = kJetCapacity) {
    Jet j = constant(r0, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[k]; }
  double& coeff(int k) { return c_[k]; }

  /// k-th derivative at the expansion point.
  double derivative(int k) const {
    if (k > order_) throw std::domain_error("jet: derivative order exceeds valid order");
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  /// d/dr; the result has one fewer valid coefficient.
  Jet differentiate() const {
    if (order_ < 1) throw std::domain_error("jet: no derivative information left");
    Jet d;
    d.order_ = order_ - 1;
    for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
    return d;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a += -s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= r.order_; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c_[0] == 0.0) throw std::domain_error("jet: division by a jet with zero value");
    Jet q;
    q.order_ = std::min(a.order_, b.order_);
    for (int k = 0; k <= q.order_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * q.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }
  friend Jet operator/(double s, const Jet& b) { return constant(s, b.order_) / b; }

  friend Jet exp(const Jet& a) {
    Jet e;
    e.order_ = a.order_;
    e.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= e.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * e.c_[k - j];
      e.c_[k] = s / k;
    }
    return e;
  }

  friend Jet log(const Jet& a) {
    if (a.c_[0] <= 0.0) throw std::domain_error("jet: log of non-positive value");
    Jet l;
    l.order_ = a.order_;
    l.c_[0] = std::log(a.c_[0]);
    for (int k = 1; k <= l.order_; ++k) {
      double s = 0.0;
      for (int j = 1; j < k; ++j) s += j * l.c_[j] * a.c_[k - j];
      l.c_[k] = (a.c_[k] - s / k) / a.c_[0];
    }
    return l;
  }

  /// Returns {sinh(a), cosh(a)} from the coupled recurrence.
  friend std::array<Jet, 2> sinh_cosh(const Jet& a) {
    Jet s, c;
    s.order_ = c.order_ = a.order_;
    s.c_[0] = std::sinh(a.c_[0]);
    c.c_[0] = std::cosh(a.c_[0]);
    for (int k = 1; k <= a.order_; ++k) {
      double ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += j * a.c_[j] * c.c_[k - j];
        cc += j * a.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / k;
      c.c_[k] = cc / k;
    }
    return {s, c};
  }
  friend Jet sinh(const Jet& a) { return sinh_cosh(a)[0]; }
  friend Jet cosh(const Jet& a) { return sinh_cosh(a)[1]; }

  /// a^p for a > 0.
  friend Jet pow(const Jet& a, double p) {
    if (p == 0.0) return constant(1.0, a.order_);
    return exp(p * log(a));
  }
  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

 private:
  void clear_tail() {
    for (int k = order_ + 1; k <= kJetCapacity; ++k) c_[k] = 0.0;
  }

  std::array<double, kJetCapacity + 1> c_{};
  int order_ = kJetCapacity;
};

}  // namespace hyperspin
