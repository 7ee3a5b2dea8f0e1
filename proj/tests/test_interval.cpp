#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gibbs/interval.hpp"

using gibbs::Interval;

namespace {

// long double carries 11 extra bits, enough to see one-ulp misrounding.
bool holds(const Interval& x, long double exact) { return x.lo() <= exact && exact <= x.hi(); }

}  // namespace

TEST_CASE("construction and predicates") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS(Interval(NAN, 1.0));
  const Interval x(1.0, 3.0);
  CHECK(x.mid() == 2.0);
  CHECK(x.width() == 2.0);
  CHECK(x.contains(1.0));
  CHECK_FALSE(x.contains(3.5));
  CHECK(x.certainly_less(Interval(3.5, 4.0)));
  CHECK_FALSE(x.certainly_less(Interval(3.0, 4.0)));
  CHECK(Interval(2.0).is_point());
  CHECK(Interval::entire().contains(1e308));
  CHECK(Interval::hull(5.0, -1.0) == Interval(-1.0, 5.0));
}

TEST_CASE("exact operations on representable values stay points") {
  CHECK((Interval(0.5) + Interval(0.25)).is_point());
  CHECK((Interval(3.0) * Interval(7.0)).is_point());
  CHECK((Interval(1.0) / Interval(4.0)).is_point());
  CHECK(sqrt(Interval(9.0)) == Interval(3.0));
  CHECK_FALSE((Interval(1.0) / Interval(3.0)).is_point());
}

TEST_CASE("random arithmetic encloses the long double result") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 20000; ++i) {
    const double a = u(rng), b = u(rng);
    const Interval A(a), B(b);
    const long double la = a, lb = b;
    CHECK(holds(A + B, la + lb));
    CHECK(holds(A - B, la - lb));
    CHECK(holds(A * B, la * lb));
    if (b != 0.0) CHECK(holds(A / B, la / lb));
    if (a > 0.0) {
      CHECK(holds(sqrt(A), std::sqrt(la)));
      CHECK(holds(log(A), std::log(la)));
      CHECK(holds(pow(A, 0.37), std::pow(la, 0.37L)));
    }
    CHECK(holds(exp(A), std::exp(la)));
  }
}

TEST_CASE("interval operands: monotone endpoints") {
  const Interval x(-1.0, 2.0), y(3.0, 4.0);
  CHECK((x * y).contains(Interval(-4.0, 8.0)));
  CHECK((y / Interval(2.0, 4.0)).contains(Interval(0.75, 2.0)));
  CHECK(holds(exp(Interval(0.0, 1.0)), std::exp(0.5L)));
  CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), std::domain_error);
  CHECK_THROWS(log(Interval(0.0, 1.0)));
  CHECK_THROWS(sqrt(Interval(-1.0, 1.0)));
}

TEST_CASE("directed rounding helpers bracket the exact result") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 5000; ++i) {
    const double a = u(rng), b = u(rng);
    CHECK(gibbs::add_down(a, b) <= static_cast<long double>(a) + b);
    CHECK(gibbs::add_up(a, b) >= static_cast<long double>(a) + b);
    CHECK(gibbs::mul_down(a, b) <= static_cast<long double>(a) * b);
    CHECK(gibbs::mul_up(a, b) >= static_cast<long double>(a) * b);
  }
}

TEST_CASE("constants and special values") {
  const long double pi = 3.141592653589793238462643383279502884L;
  CHECK(holds(gibbs::constants::pi(), pi));
  CHECK(holds(gibbs::constants::euler_gamma(), 0.577215664901532860606512090082402431L));
  CHECK(holds(gibbs::constants::zeta2(), pi * pi / 6.0L));
  const Interval g = gibbs::tgamma(0.5);
  CHECK(holds(g, std::sqrt(pi)));
  CHECK(std::fabs(g.mid() - std::sqrt(static_cast<double>(pi))) <= 1e-12);
  CHECK(gibbs::tgamma(1.0) == Interval(1.0));
  CHECK(holds(gibbs::tgamma(0.6), 1.489192248812817102394407L));
  CHECK_THROWS(gibbs::tgamma(0.0));
}

TEST_CASE("log1p and hull") {
  CHECK(holds(log1p(Interval(1e-10)), std::log1p(1e-10L)));
  CHECK(hull(Interval(0.0, 1.0), Interval(3.0)) == Interval(0.0, 3.0));
  CHECK(max(Interval(0.0, 1.0), Interval(0.5, 0.7)) == Interval(0.5, 1.0));
}
