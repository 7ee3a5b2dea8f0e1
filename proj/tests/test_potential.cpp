#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gibbs/potential.hpp"

using namespace gibbs;

namespace {

const long double kPi = 3.141592653589793238462643383279502884L;

PairPotential power(double q, double beta, std::optional<long> R = std::nullopt) {
  return PairPotential(CouplingLaw::power_law(q), beta, R);
}

bool intersects(const Interval& a, long double lo, long double hi) { return a.lo() <= hi && lo <= a.hi(); }

}  // namespace

TEST_CASE("coupling laws validate their parameters") {
  CHECK_THROWS_AS(CouplingLaw::power_law(1.0), std::invalid_argument);
  CHECK_THROWS_AS(CouplingLaw::power_law(0.5), std::invalid_argument);
  CHECK_THROWS_AS(CouplingLaw::power_law(2.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(CouplingLaw::finite_table({1.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(CouplingLaw::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PairPotential(CouplingLaw::power_law(2.0), -0.1), std::invalid_argument);
  CHECK_THROWS_AS(PairPotential(CouplingLaw::power_law(2.0), 1.0, 0L), std::invalid_argument);
  CHECK_THROWS_AS(power_tail(1.0, 1), std::invalid_argument);
}

TEST_CASE("pair energy and ranges") {
  const auto p = power(2.0, 0.6);
  CHECK(p.pair_energy(2, 1, 1) == doctest::Approx(-0.3 / 4.0));
  CHECK(p.pair_energy(2, 1, -1) == doctest::Approx(0.3 / 4.0));
  CHECK_FALSE(p.range().has_value());
  CHECK(p.truncated(5).range() == 5L);
  CHECK(PairPotential(CouplingLaw::finite_table({1.0, 0.0, 2.0, 0.0}), 1.0).range() == 3L);
  CHECK(PairPotential(CouplingLaw::power_law(2.0), 0.0).range() == 0L);
  CHECK(PairPotential(CouplingLaw::finite_table({}), 1.0).is_zero());
}

TEST_CASE("tail_variation: power law q = 2 at n = 1 encloses pi^2/6") {
  const Interval t = tail_variation(power(2.0, 1.0), 1);
  CHECK(t.contains(static_cast<double>(kPi * kPi / 6)));
  CHECK(t.lo() <= kPi * kPi / 6);
  CHECK(t.hi() >= kPi * kPi / 6);
  CHECK(t.rel_width() <= 1e-10);
}

TEST_CASE("tail_variation: zero coupling and exact finite tables") {
  CHECK(tail_variation(PairPotential(CouplingLaw::finite_table({0.0, 0.0}), 0.7), 1) == Interval(0.0));
  CHECK(tail_variation(power(2.0, 0.0), 3) == Interval(0.0));
  CHECK(tail_variation(PairPotential(CouplingLaw::finite_table({1.0, 0.5}), 0.4), 2) == Interval(0.2));
  CHECK(tail_variation(PairPotential(CouplingLaw::finite_table({1.0, 0.5}), 0.4), 3) == Interval(0.0));
}

TEST_CASE("tail_variation: non-integer exponent against zeta(5/2)") {
  // zeta(2.5) = 1.341487257250917179756769...
  const Interval t = tail_variation(power(2.5, 1.0), 1);
  CHECK(t.lo() <= 1.341487257250917179756769L);
  CHECK(t.hi() >= 1.341487257250917179756769L);
  CHECK(t.rel_width() <= 1e-10);
}

TEST_CASE("tail_variation: exponential closed form") {
  const PairPotential p(CouplingLaw::exponential(0.7, 2.0), 0.3);
  for (long n : {1L, 2L, 5L, 40L}) {
    const long double exact = 0.3L * 2.0L * std::exp(-0.7L * n) / (1.0L - std::exp(-0.7L));
    const Interval t = tail_variation(p, n);
    CHECK(t.lo() <= exact);
    CHECK(t.hi() >= exact);
  }
}

TEST_CASE("tail_variation: soundness against a long partial sum") {
  // sum_{j=n}^{N} j^{-2} plus the remainder sum_{j>N} j^{-2} in [1/(N+1), 1/N]
  // brackets T(n); our enclosure must meet that bracket.
  const long N = 10'000'000;
  std::vector<long double> partial(101);
  long double s = 0.0L, comp = 0.0L;
  for (long j = N; j >= 1; --j) {
    const long double t = 1.0L / (static_cast<long double>(j) * j) - comp;
    const long double u = s + t;
    comp = (u - s) - t;
    s = u;
    if (j <= 100) partial[j] = s;
  }
  const auto p = power(2.0, 1.0);
  for (long n = 1; n <= 100; ++n) {
    CAPTURE(n);
    const Interval t = tail_variation(p, n);
    CHECK(t.hi() >= partial[n]);
    CHECK(t.lo() <= partial[n] + 1.0L / N);
    CHECK(intersects(t, partial[n] + 1.0L / (N + 1) - 1e-15L, partial[n] + 1.0L / N + 1e-15L));
  }
}

TEST_CASE("tail_variation: monotone, scales with beta, truncation vanishes") {
  const auto p = power(2.0, 0.3), p2 = power(2.0, 0.6);
  for (long n = 1; n <= 200; ++n) {
    CHECK(tail_variation(p, n + 1).hi() <= tail_variation(p, n).hi());
    const Interval a = tail_variation(p, n), b = tail_variation(p2, n);
    CHECK(std::fabs(b.lo() - 2.0 * a.lo()) <= 1e-14 * b.lo());
    CHECK(std::fabs(b.hi() - 2.0 * a.hi()) <= 1e-14 * b.hi());
  }
  const auto t = power(2.0, 0.3, 6);
  for (long n = 7; n <= 20; ++n) CHECK(tail_variation(t, n) == Interval(0.0));
  const long double t6 = 0.3L * (1.0L / 36);
  CHECK(tail_variation(t, 6).contains(static_cast<double>(t6)));
}

TEST_CASE("variation_tail_table agrees with the pointwise enclosures") {
  for (const auto& p : {power(2.0, 0.3), power(3.0, 1.7), power(2.5, 0.2), power(2.0, 0.3, 9),
                        PairPotential(CouplingLaw::exponential(0.5), 1.0)}) {
    const TailTable table = variation_tail_table(p, 300);
    for (long m = 1; m <= 300; ++m) {
      const Interval a = table.at(m), b = tail_variation(p, m);
      CHECK(a.lo() <= b.hi());
      CHECK(b.lo() <= a.hi());
      CHECK(a.width() <= 1e-9 * a.hi() + 1e-300);
    }
    if (p.range()) CHECK(table.at(301) == Interval(0.0));
    else CHECK_THROWS_AS(table.at(301), std::out_of_range);
  }
}

TEST_CASE("envelopes bracket the tail") {
  const auto p = power(2.0, 0.45);
  const DecayEnvelope e = p.tail_envelope();
  CHECK(e.kind == DecayEnvelope::Kind::power);
  CHECK(e.exponent == 1.0);
  CHECK(e.coefficient.contains(0.45));
  for (long n : {1L, 2L, 10L, 1000L, 100000L}) {
    const Interval t = tail_variation(p, n), b = e.bound(n);
    CHECK(b.lo() <= t.hi());
    CHECK(t.lo() <= b.hi());
  }
  CHECK(PairPotential(CouplingLaw::finite_table({1.0, 1.0}), 1.0).tail_envelope().kind ==
        DecayEnvelope::Kind::vanishing);
  CHECK(variation_profile(p).asymptotic_slope().contains(0.45));
}

TEST_CASE("Ruelle and Coelho-Quas sums") {
  const Verdict r3 = ruelle_sum(power(3.0, 1.0));
  CHECK(r3.outcome == Outcome::holds);
  REQUIRE(r3.value);
  CHECK(r3.value->lo() <= kPi * kPi / 6);
  CHECK(r3.value->hi() >= kPi * kPi / 6);
  const Verdict c3 = coelho_quas_sum(power(3.0, 1.0));
  CHECK(c3.outcome == Outcome::holds);
  CHECK(c3.value->lo() <= kPi * kPi / 12);
  CHECK(c3.value->hi() >= kPi * kPi / 12);
  CHECK(ruelle_sum(power(2.0, 1.0)).outcome == Outcome::fails);
  CHECK(coelho_quas_sum(power(2.0, 0.01)).outcome == Outcome::fails);
  CHECK(ruelle_sum(power(1.5, 0.01)).outcome == Outcome::fails);
  const Verdict z = ruelle_sum(PairPotential(CouplingLaw::finite_table({}), 1.0));
  CHECK(z.outcome == Outcome::holds);
  CHECK(*z.value == Interval(0.0));
  CHECK(coelho_quas_sum(power(2.0, 0.0)).outcome == Outcome::holds);
  // finite table (1, 0.5): beta * (1 + 2 * 0.5)
  const Verdict f = ruelle_sum(PairPotential(CouplingLaw::finite_table({1.0, 0.5}), 0.25));
  CHECK(f.value->contains(0.5));
  // exponential: sum j e^{-r j} = e^{-r} / (1 - e^{-r})^2
  const Verdict e = ruelle_sum(PairPotential(CouplingLaw::exponential(1.0), 1.0));
  const long double em = std::exp(-1.0L);
  CHECK(e.value->lo() <= em / ((1 - em) * (1 - em)));
  CHECK(e.value->hi() >= em / ((1 - em) * (1 - em)));
  CHECK(r3.strength == Conclusion::unique_invariant_gibbs);
}
