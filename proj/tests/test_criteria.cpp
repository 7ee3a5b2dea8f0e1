#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gibbs/criteria.hpp"

using namespace gibbs;

namespace {

PairPotential power(double q, double beta) { return PairPotential(CouplingLaw::power_law(q), beta); }
VariationProfile vp(double q, double beta) { return variation_profile(power(q, beta)); }

// c n^{-s} exactly, as a variation profile with its own one-sweep table
VariationProfile exact_power(double c, double s) {
  return VariationProfile(DecayProfile::power(Interval(c), s));
}

const long double kZeta2 = 1.644934066848226436472415166646025189L;
const long double kEulerGamma = 0.577215664901532860606512090082402431L;

}  // namespace

TEST_CASE("thm_bern2") {
  const Verdict v = check_thm_bern2(vp(2.0, 0.3));
  CHECK(v.outcome == Outcome::holds);
  CHECK(v.margin.mid() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(v.strength == Conclusion::unique_gibbs_bernoulli);
  CHECK(check_thm_bern2(vp(2.0, 0.49)).outcome == Outcome::holds);
  // hypothesis fails; no converse is drawn
  CHECK(check_thm_bern2(vp(2.0, 0.51)).outcome != Outcome::holds);
  CHECK(check_thm_bern2(vp(2.0, 0.51)).outcome == Outcome::fails);
  for (double beta : {0.1, 1.0, 5.0, 50.0}) CHECK(check_thm_bern2(vp(3.0, beta)).outcome == Outcome::holds);
  CHECK(check_thm_bern2(variation_profile(PairPotential(CouplingLaw::exponential(0.5), 3.0))).outcome == Outcome::holds);
  CHECK(check_thm_bern2(exact_power(0.5, 1.0)).outcome == Outcome::fails);
}

TEST_CASE("Berbee") {
  CHECK(check_berbee(vp(2.0, 0.25)).outcome == Outcome::holds);
  CHECK(check_berbee(vp(2.0, 0.26)).outcome == Outcome::fails);
  CHECK(check_berbee(vp(2.0, 0.3)).outcome == Outcome::fails);
  CHECK(check_berbee(vp(2.0, 0.3)).margin.mid() == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(check_berbee(FSequence::from_potential(PairPotential(CouplingLaw::finite_table({}), 1.0))).outcome ==
        Outcome::holds);
  CHECK(check_berbee(vp(3.0, 10.0)).outcome == Outcome::holds);
  CHECK(check_berbee(vp(1.5, 0.01)).outcome == Outcome::fails);
}

TEST_CASE("Berbee partial sums grow like N^{1-4 beta}") {
  for (double beta : {0.15, 0.2}) {
    const auto F = FSequence::from_potential(power(2.0, beta));
    const double slope = berbee_growth_slope(F, 256, 16384);
    CAPTURE(beta);
    CHECK(std::fabs(slope - (1.0 - 4.0 * beta)) <= 0.05);
  }
  const auto Z = FSequence::from_potential(PairPotential(CouplingLaw::finite_table({}), 1.0));
  const auto s = berbee_log_partial_sums(Z, 10);
  for (long n = 0; n <= 10; ++n) CHECK(s[n] == doctest::Approx(std::log(n + 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(berbee_growth_slope(Z, 10, 5), std::invalid_argument);
}

TEST_CASE("thm_bern1") {
  const Verdict v = check_thm_bern1(vp(2.0, 0.3), 0.6);
  CHECK(v.outcome == Outcome::holds);
  CHECK(v.margin.mid() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(check_thm_bern1(vp(2.0, 0.3)).outcome == Outcome::holds);
  CHECK(check_thm_bern1(vp(2.0, 0.3), 0.8).outcome == Outcome::fails);
  CHECK(check_thm_bern1(vp(2.0, 0.6)).outcome != Outcome::holds);
  for (double a : default_alpha_grid()) CHECK(check_thm_bern1(vp(2.0, 0.6), a).outcome == Outcome::fails);
  const auto Z = FSequence::from_potential(PairPotential(CouplingLaw::finite_table({}), 1.0));
  CHECK(check_thm_bern1(Z, 1.0).outcome == Outcome::holds);
  CHECK_THROWS_AS(check_thm_bern1(vp(2.0, 0.3), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_thm_bern1(vp(2.0, 0.3), 1.5), std::invalid_argument);

  const auto grid = default_alpha_grid();
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == 0.51);
  CHECK(grid[1] == 0.55);
  CHECK(grid.back() == 1.0);
}

TEST_CASE("JOP block sums") {
  CHECK(check_jop_blocksum(DecayProfile::power(Interval(0.7), 1.0)).outcome == Outcome::holds);
  const Verdict f = check_jop_blocksum(DecayProfile::power(Interval(0.7), 0.5));
  CHECK(f.outcome == Outcome::fails);
  REQUIRE(f.value);
  CHECK(f.value->mid() == doctest::Approx(0.49 * std::log(2.0)).epsilon(1e-14));
  CHECK(check_jop_blocksum(DecayProfile(nullptr, DecayEnvelope::vanishing(5))).outcome == Outcome::holds);
  CHECK(check_jop_blocksum(DecayProfile::power(Interval(0.7), 1.0), 3.0).outcome == Outcome::holds);
  CHECK_THROWS_AS(check_jop_blocksum(DecayProfile::zero(), 1.0), std::invalid_argument);
  CHECK(check_jop_blocksum(DecayProfile([](long) { return Interval(0.1); }, DecayEnvelope::unknown(), 100)).outcome ==
        Outcome::inconclusive);
}

TEST_CASE("BCJO") {
  const Verdict a = check_bcjo(DecayProfile::power(Interval(1.5), 0.5));
  CHECK(a.outcome == Outcome::holds);
  CHECK(a.margin.mid() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a.strength == Conclusion::unique_invariant_gibbs);
  CHECK(check_bcjo(DecayProfile::power(Interval(2.5), 0.5)).outcome == Outcome::fails);
  CHECK(check_bcjo(DecayProfile::power(Interval(1.9, 2.1), 0.5)).outcome == Outcome::inconclusive);
  const Verdict b = check_bcjo(DecayProfile::power(Interval(5.0), 1.0));
  CHECK(b.outcome == Outcome::holds);
  CHECK(*b.value == Interval(0.0));
  CHECK(check_bcjo(DecayProfile::power(Interval(0.1), 0.0)).outcome == Outcome::fails);
}

TEST_CASE("gamma condition") {
  // at(n) = 1/(2n): alpha = 1/2, K = exp(gamma/2)
  const auto half = exact_power(0.5, 1.0);
  const Interval K = product_constant(half);
  CHECK(K.lo() <= std::exp(kEulerGamma / 2));
  CHECK(K.hi() >= std::exp(kEulerGamma / 2));
  const Verdict v = check_gamma_condition(half);
  CHECK(v.outcome == Outcome::holds);
  CHECK(v.strength == Conclusion::unique_invariant_gibbs);
  // K chosen so that Gamma(1/2)/K is exactly the limsup 1/sqrt(2): a tie, never certified
  const Interval crit = sqrt(Interval(2.0) * constants::pi());
  CHECK(check_gamma_condition(half, 0.5, crit).outcome == Outcome::inconclusive);
  CHECK(check_gamma_condition(half, 0.5, 1.5).outcome == Outcome::holds);
  // the product limit exp(gamma/2) ~ 1.33 exceeds K = 1
  CHECK(check_gamma_condition(half, 0.5, 1.0).outcome == Outcome::fails);
  CHECK(check_gamma_condition(half, 0.5, 3.0).outcome == Outcome::fails);

  const Interval g = gibbs::tgamma(0.5);
  CHECK(std::fabs(g.mid() - 1.7724538509055160273) <= 1e-12);

  CHECK(check_gamma_condition(exact_power(0.0, 1.0)).outcome == Outcome::holds);
  CHECK(check_gamma_condition(vp(2.0, 0.3)).outcome == Outcome::holds);
  CHECK(check_gamma_condition(vp(2.0, 0.6)).outcome == Outcome::fails);
  CHECK_THROWS_AS(check_gamma_condition(half, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(check_gamma_condition(half, 0.5, std::nullopt), std::invalid_argument);
}

TEST_CASE("gamma condition at q = 2, beta = 1/2") {
  const auto profile = vp(2.0, 0.5);
  const Interval K = product_constant(profile);
  // oracle: n^{-1/2} prod_{i<=n} exp(at(i+1)) at n = 10^6, at(m) = (zeta(2) - H2(m-1)) / 2
  const long n = 1000000;
  long double head = 0.0L, log_prod = 0.0L;
  for (long i = 0; i <= n; ++i) {
    log_prod += 0.5L * (kZeta2 - head);
    head += 1.0L / (static_cast<long double>(i + 1) * (i + 1));
  }
  const double oracle = std::exp(static_cast<double>(log_prod - 0.5L * std::log(static_cast<long double>(n))));
  CHECK(K.mid() == doctest::Approx(oracle).epsilon(1e-5));
  CHECK(K.mid() == doctest::Approx(2.2003).epsilon(1e-4));
  const Verdict v = check_gamma_condition(profile);
  CHECK(v.outcome == Outcome::holds);
  // sqrt(1/2) K* ~ 1.556 against Gamma(1/2) ~ 1.7725
  CHECK((Interval(std::sqrt(0.5)) * K).hi() < 1.7724538509055160273);
}

TEST_CASE("Dobrushin") {
  const Verdict z = check_dobrushin(PairPotential(CouplingLaw::finite_table({}), 1.0));
  CHECK(z.outcome == Outcome::holds);
  CHECK(*z.value == Interval(0.0));

  // threshold on the table (1, 1/2, 1/4), pinned by an independent enumeration oracle
  const auto tab = [](double beta) { return PairPotential(CouplingLaw::finite_table({1.0, 0.5, 0.25}), beta); };
  double lo = 0.1, hi = 5.0;
  REQUIRE(check_dobrushin(tab(lo)).outcome == Outcome::holds);
  REQUIRE(check_dobrushin(tab(hi)).outcome == Outcome::fails);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (check_dobrushin(tab(mid)).outcome == Outcome::holds ? lo : hi) = mid;
  }
  CHECK(std::fabs(lo - 0.5822687150805) <= 1e-6);

  // long range truncated at 8 with far-field slack 2 beta T(9)
  const Verdict t = check_dobrushin(power(2.0, 0.3), 8);
  long double h8 = 0.0L;
  for (int j = 1; j <= 8; ++j) h8 += 1.0L / (j * j);
  CHECK(t.outcome == Outcome::holds);
  CHECK(t.certificate.find("far-field slack") != std::string::npos);
  CHECK(t.value->hi() >= static_cast<double>(2 * 0.3L * (kZeta2 - h8)));
  const Verdict big = check_dobrushin(power(2.0, 3.0), 8);
  CHECK(big.outcome == Outcome::inconclusive);
}

TEST_CASE("evaluate_all") {
  const auto r = evaluate_all(power(2.0, 0.3));
  REQUIRE(r.verdicts.size() == 9);
  CHECK(r.find("berbee")->outcome == Outcome::fails);
  CHECK(r.find("thm_bern2")->outcome == Outcome::holds);
  CHECK(r.strongest == Conclusion::unique_gibbs_bernoulli);
  CHECK(r.find("nope") == nullptr);

  const auto s = evaluate_all(power(3.0, 5.0));
  CHECK(s.find("ruelle")->outcome == Outcome::holds);
  CHECK(s.find("coelho_quas")->outcome == Outcome::holds);
  CHECK(s.find("thm_bern2")->outcome == Outcome::holds);

  const auto z = evaluate_all(PairPotential(CouplingLaw::finite_table({}), 1.0));
  for (const auto& v : z.verdicts) {
    CAPTURE(v.criterion);
    CHECK(v.outcome == Outcome::holds);
  }
  CHECK(z.strongest_by.size() == 3);

  CriteriaOptions bad;
  bad.dobrushin_truncation = 40;
  const auto e = evaluate_all(power(2.0, 0.3), bad);
  CHECK(e.find("dobrushin")->outcome == Outcome::inconclusive);
  CHECK(e.find("dobrushin")->certificate.rfind("error: ", 0) == 0);

  CHECK(rank(Conclusion::unique_gibbs_bernoulli) > rank(Conclusion::unique_gibbs));
  CHECK(rank(Conclusion::unique_gibbs) > rank(Conclusion::unique_invariant_gibbs));
}

TEST_CASE("Ruelle implies thm_bern2 on a (q, beta) grid") {
  int ruelle_holds = 0;
  for (double q : {1.5, 2.0, 2.5, 3.0, 4.0})
    for (double beta : {0.1, 0.4, 1.0, 5.0}) {
      const auto p = power(q, beta);
      CAPTURE(q);
      CAPTURE(beta);
      if (ruelle_sum(p).outcome == Outcome::holds) {
        ++ruelle_holds;
        CHECK(check_thm_bern2(variation_profile(p)).outcome == Outcome::holds);
      }
    }
  CHECK(ruelle_holds >= 8);
}

TEST_CASE("verdicts are stable as tail enclosures tighten") {
  for (double q : {1.5, 2.0, 3.0})
    for (double beta : {0.2, 0.25, 0.3, 0.5}) {
      std::vector<CriteriaReport> reports;
      for (double w : {1e-4, 1e-7, 1e-10}) {
        CriteriaOptions o;
        o.tail.rel_width = w;
        reports.push_back(evaluate_all(power(q, beta), o));
      }
      for (std::size_t k = 1; k < reports.size(); ++k)
        for (std::size_t i = 0; i < reports[k].verdicts.size(); ++i) {
          const Outcome before = reports[k - 1].verdicts[i].outcome, after = reports[k].verdicts[i].outcome;
          CAPTURE(reports[k].verdicts[i].criterion);
          if (before != Outcome::inconclusive) CHECK(after == before);
        }
    }
}
