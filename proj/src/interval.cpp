#include "gibbs/interval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace gibbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

double widen_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = down(x);
  return x;
}
double widen_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = up(x);
  return x;
}

// Rounding error of a + b as a sign; zero means the sum is exact.
double sum_error(double a, double b, double s) {
  if (!std::isfinite(s)) return 0.0;
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

double quot_down(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return std::isinf(q) && q > 0 ? std::numeric_limits<double>::max() : q;
  const double r = std::fma(-q, b, a);  // a - q*b, exact
  if (r == 0.0) return q;
  return ((r > 0.0) == (b > 0.0)) ? q : down(q);
}

double quot_up(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return std::isinf(q) && q < 0 ? -std::numeric_limits<double>::max() : q;
  const double r = std::fma(-q, b, a);
  if (r == 0.0) return q;
  return ((r > 0.0) == (b > 0.0)) ? up(q) : q;
}

}  // namespace

double add_down(double a, double b) {
  const double s = a + b;
  return sum_error(a, b, s) < 0.0 ? down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  return sum_error(a, b, s) > 0.0 ? up(s) : s;
}

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  const double e = std::fma(a, b, -p);
  return e < 0.0 ? down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  const double e = std::fma(a, b, -p);
  return e > 0.0 ? up(p) : p;
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw std::invalid_argument("Interval: invalid bounds");
}

Interval Interval::hull(double a, double b) { return Interval(std::min(a, b), std::max(a, b)); }

Interval Interval::entire() { return Interval(-kInf, kInf); }

Interval Interval::around(double x, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("Interval::around: negative radius");
  return Interval(add_down(x, -radius), add_up(x, radius));
}

double Interval::mid() const noexcept {
  if (std::isinf(lo_) || std::isinf(hi_)) return (std::isinf(lo_) && std::isinf(hi_)) ? 0.0 : (std::isinf(lo_) ? lo_ : hi_);
  return lo_ + 0.5 * (hi_ - lo_);
}

double Interval::width() const noexcept { return hi_ - lo_; }

double Interval::rel_width() const noexcept {
  const double w = width();
  if (w == 0.0) return 0.0;
  const double m = std::fabs(mid());
  return m == 0.0 ? kInf : w / m;
}

Interval Interval::operator-() const noexcept {
  Interval r;
  r.lo_ = -hi_;
  r.hi_ = -lo_;
  return r;
}

Interval& Interval::operator+=(const Interval& o) {
  const double lo = add_down(lo_, o.lo_);
  const double hi = add_up(hi_, o.hi_);
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Interval& Interval::operator-=(const Interval& o) { return *this += -o; }

Interval& Interval::operator*=(const Interval& o) {
  const double a = lo_, b = hi_, c = o.lo_, d = o.hi_;
  const double lo = std::min({mul_down(a, c), mul_down(a, d), mul_down(b, c), mul_down(b, d)});
  const double hi = std::max({mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d)});
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (o.lo_ <= 0.0 && o.hi_ >= 0.0) throw std::domain_error("Interval: division by an interval containing zero");
  const double a = lo_, b = hi_, c = o.lo_, d = o.hi_;
  const double lo = std::min({quot_down(a, c), quot_down(a, d), quot_down(b, c), quot_down(b, d)});
  const double hi = std::max({quot_up(a, c), quot_up(a, d), quot_up(b, c), quot_up(b, d)});
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval max(const Interval& a, const Interval& b) {
  return Interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval exp(const Interval& x) {
  double lo = x.lo() == -kInf ? 0.0 : std::max(0.0, widen_down(std::exp(x.lo()), 2));
  double hi = x.hi() == -kInf ? 0.0 : widen_up(std::exp(x.hi()), 2);
  if (x.lo() == 0.0) lo = 1.0;
  if (x.hi() == 0.0) hi = 1.0;
  return Interval(lo, hi);
}

Interval log(const Interval& x) {
  if (!(x.lo() > 0.0)) throw std::domain_error("Interval log: argument must be positive");
  double lo = x.lo() == 1.0 ? 0.0 : widen_down(std::log(x.lo()), 2);
  double hi = x.hi() == 1.0 ? 0.0 : widen_up(std::log(x.hi()), 2);
  return Interval(lo, hi);
}

Interval log1p(const Interval& x) {
  if (!(x.lo() > -1.0)) throw std::domain_error("Interval log1p: argument must exceed -1");
  double lo = x.lo() == 0.0 ? 0.0 : widen_down(std::log1p(x.lo()), 2);
  double hi = x.hi() == 0.0 ? 0.0 : widen_up(std::log1p(x.hi()), 2);
  return Interval(lo, hi);
}

Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw std::domain_error("Interval sqrt: negative argument");
  auto sd = [](double v) {
    const double s = std::sqrt(v);
    if (!std::isfinite(s) || s == 0.0) return s;
    return std::fma(-s, s, v) < 0.0 ? down(s) : s;
  };
  auto su = [](double v) {
    const double s = std::sqrt(v);
    if (!std::isfinite(s) || s == 0.0) return s;
    return std::fma(-s, s, v) > 0.0 ? up(s) : s;
  };
  return Interval(sd(x.lo()), su(x.hi()));
}

Interval pow(const Interval& x, double p) {
  if (x.lo() < 0.0) throw std::domain_error("Interval pow: negative base");
  if (p == 0.0) return Interval(1.0);
  if (p == 1.0) return x;
  if (p == 0.5) return sqrt(x);
  auto pd = [p](double v) {
    if (v == 0.0) return p > 0.0 ? 0.0 : kInf;
    if (std::isinf(v)) return p > 0.0 ? kInf : 0.0;
    return std::max(0.0, widen_down(std::pow(v, p), 2));
  };
  auto pu = [p](double v) {
    if (v == 0.0) return p > 0.0 ? 0.0 : kInf;
    if (std::isinf(v)) return p > 0.0 ? kInf : 0.0;
    return widen_up(std::pow(v, p), 2);
  };
  if (p > 0.0) return Interval(pd(x.lo()), pu(x.hi()));
  return Interval(pd(x.hi()), pu(x.lo()));
}

Interval tgamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("tgamma: argument must be positive");
  if (x == 1.0 || x == 2.0) return Interval(1.0);
  if (x == 0.5) return sqrt(constants::pi());
  // glibc tgamma is accurate to a few ulps on the positive axis.
  const double g = std::tgamma(x);
  return Interval(widen_down(g, 8), widen_up(g, 8));
}

namespace constants {
Interval pi() { return Interval(3.141592653589793, 3.1415926535897936); }
Interval euler_gamma() { return Interval(0.5772156649015328, 0.5772156649015329); }
Interval zeta2() { return Interval(1.6449340668482264, 1.6449340668482266); }
}  // namespace constants

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  const auto prec = os.precision(17);
  os << '[' << x.lo() << ", " << x.hi() << ']';
  os.precision(prec);
  return os;
}

}  // namespace gibbs
