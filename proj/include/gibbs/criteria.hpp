#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbs/fseq.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/profile.hpp"
#include "gibbs/ratiobound.hpp"
#include "gibbs/verdict.hpp"

// Uniqueness criteria as hypothesis checks. `holds` and `fails` are only
// reported from closed-form envelopes; everything a finite computation cannot
// settle is `inconclusive`. `fails` never asserts non-uniqueness.
namespace gibbs {

/// at(n) <= b/n + a_n with b < 1/2 and sum a_n < inf.
Verdict check_thm_bern2(const VariationProfile& profile);

/// Divergence of the Berbee series over the two-sided enumeration
/// [-k, k], [-k, k+1], ... For at(n) ~ c/n the k-th product term is of
/// order k^{-4c}, so the series diverges iff 4c <= 1.
Verdict check_berbee(const VariationProfile& profile);
inline Verdict check_berbee(const FSequence& F) { return check_berbee(F.variation()); }

/// Default alpha grid {0.51, 0.55, 0.60, ..., 1.0}.
std::vector<double> default_alpha_grid();

/// The product condition prod_{i<=n} r(f) = O(n^{1-alpha}) together with
/// dyadic block sums of at(i+1)^{2 alpha} tending to 0. Searches the default
/// grid when alpha is absent; throws std::invalid_argument for alpha outside (0, 1].
Verdict check_thm_bern1(const VariationProfile& profile, std::optional<double> alpha = std::nullopt);
inline Verdict check_thm_bern1(const FSequence& F, std::optional<double> alpha = std::nullopt) {
  return check_thm_bern1(F.variation(), alpha);
}

/// Block sums over [lambda^{n-1}, lambda^n] of logr_g(i)^2 tend to 0.
/// Throws std::invalid_argument for lambda <= 1.
Verdict check_jop_blocksum(const DecayProfile& logr_g, double lambda = 2.0);

/// limsup sqrt(n) logr_g(n) < 2.
Verdict check_bcjo(const DecayProfile& logr_g);

struct GammaOptions {
  /// at(1..N) summed exactly; the rest comes from the envelope.
  long partial_terms = 65536;
};

/// limsup n^{alpha-1} prod_{i<=n} r_{(-inf,i]}(f_0) <= K and
/// limsup sqrt(n) (log r_{[-n,inf)}(f_0))^alpha < Gamma(alpha) / K.
/// (alpha, K) are fitted when absent; K is an enclosure of the constant.
/// Throws std::invalid_argument for alpha outside (0, 1].
Verdict check_gamma_condition(const VariationProfile& profile, std::optional<double> alpha = std::nullopt,
                              std::optional<Interval> K = std::nullopt, const GammaOptions& opts = {});
inline Verdict check_gamma_condition(const VariationProfile& profile, double alpha, double K,
                                     const GammaOptions& opts = {}) {
  return check_gamma_condition(profile, alpha, Interval(K), opts);
}

/// exp(sum_{m>=1} (at(m) - c/m) + c gamma) for at(m) ~ c/m, or
/// exp(sum_{m>=1} at(m)) for summable profiles; entire() when unknown.
Interval product_constant(const VariationProfile& profile, const GammaOptions& opts = {});

/// Dobrushin's sum against 2. Truncated sums only ever certify `holds`.
Verdict check_dobrushin(const PairPotential& p, long truncation = 8);

/// n -> g_variation_bound(F, n), vanishing past the range for finite-range
/// potentials and carrying no envelope otherwise.
DecayProfile g_bound_profile(const FSequence& F, const SeriesOptions& opts = {});

/// log S(N) for the Berbee partial sums S(N) = sum_{n<=N} prod_{k<=n} rbar_k,
/// N = 0..n_max (point values from interval midpoints).
std::vector<double> berbee_log_partial_sums(const FSequence& F, long n_max);
/// Least-squares slope of log S(N) against log N over every integer N in [lo, hi].
double berbee_growth_slope(const FSequence& F, long lo = 256, long hi = 16384);

struct CriteriaOptions {
  std::optional<double> alpha;
  std::optional<double> gamma_alpha;
  std::optional<double> gamma_K;
  long dobrushin_truncation = 8;
  double jop_lambda = 2.0;
  TailOptions tail;
  SeriesOptions series;
};

struct CriteriaReport {
  std::vector<Verdict> verdicts;
  /// Strongest conclusion among holding criteria.
  std::optional<Conclusion> strongest;
  std::vector<std::string> strongest_by;

  const Verdict* find(const std::string& criterion) const;
};

/// Every criterion on one potential; per-criterion errors become
/// inconclusive entries whose certificate carries the message.
CriteriaReport evaluate_all(const PairPotential& p, const CriteriaOptions& opts = {});

/// Higher is stronger: unique_gibbs_bernoulli > unique_gibbs > unique_invariant_gibbs.
int rank(Conclusion c) noexcept;

}  // namespace gibbs
