#pragma once

#include <iosfwd>
#include <limits>

namespace gibbs {

/// Closed interval [lo, hi] of reals with outward-rounded arithmetic.
///
/// Every operation returns an interval that contains the exact result of the
/// operation applied to any points of the operands. Sums, products, quotients
/// and square roots detect exact results with error-free transformations, so
/// exact arithmetic on representable values stays a point. Transcendentals
/// are widened by two ulps on each side. Infinite endpoints are allowed;
/// NaN is not.
class Interval {
 public:
  constexpr Interval() = default;
  constexpr explicit Interval(double point) : lo_(point), hi_(point) {}
  Interval(double lo, double hi);

  static Interval hull(double a, double b);
  static Interval entire();
  /// [x - r, x + r] with outward rounding, r >= 0.
  static Interval around(double x, double radius);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double mid() const noexcept;
  double width() const noexcept;
  /// width / |mid|; 0 for a point, +inf when mid == 0 and width > 0.
  double rel_width() const noexcept;

  bool is_point() const noexcept { return lo_ == hi_; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool certainly_less(const Interval& other) const noexcept { return hi_ < other.lo_; }
  bool certainly_less(double x) const noexcept { return hi_ < x; }
  bool certainly_greater_equal(double x) const noexcept { return lo_ >= x; }

  Interval operator-() const noexcept;
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval hull(const Interval& a, const Interval& b);
Interval exp(const Interval& x);
/// Natural log; requires x.lo() > 0.
Interval log(const Interval& x);
Interval log1p(const Interval& x);
/// Square root; requires x.lo() >= 0.
Interval sqrt(const Interval& x);
/// x^p for x >= 0 and real p.
Interval pow(const Interval& x, double p);
/// Gamma function on a positive argument.
Interval tgamma(double x);
Interval max(const Interval& a, const Interval& b);

namespace constants {
Interval pi();
Interval euler_gamma();
/// Riemann zeta at 2.
Interval zeta2();
}  // namespace constants

/// Directed rounding helpers (exact result lies in [down, up]).
double add_down(double a, double b);
double add_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);

std::ostream& operator<<(std::ostream& os, const Interval& x);

}  // namespace gibbs
