#include "gibbs/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gibbs/kernel.hpp"

namespace gibbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using Kind = DecayEnvelope::Kind;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string fmt(const Interval& x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

Verdict make(std::string name, Conclusion strength) {
  Verdict v;
  v.criterion = std::move(name);
  v.strength = strength;
  return v;
}

bool summable_kind(const DecayEnvelope& e) {
  return e.kind == Kind::vanishing || e.kind == Kind::geometric || (e.kind == Kind::power && e.exponent > 1.0);
}

// Power envelope with vanishing coefficient behaves like the zero profile.
bool zero_power(const DecayEnvelope& e) {
  return e.kind == Kind::power && e.coefficient.hi() == 0.0 && e.remainder_coefficient == 0.0;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

// Outcome of hyp "prod_{i<=n} exp(at(i+1)) = O(n^{1-alpha})".
Outcome product_growth(const DecayEnvelope& e, double alpha, std::string& why) {
  if (summable_kind(e) || zero_power(e)) {
    why = "sum at(n) < inf, product bounded";
    return Outcome::holds;
  }
  if (e.kind == Kind::unknown) {
    why = "no closed-form envelope";
    return Outcome::inconclusive;
  }
  if (e.exponent < 1.0) {
    why = "at(n) ~ c n^{-" + fmt(e.exponent) + "}: product grows faster than any power";
    return e.coefficient.lo() > 0.0 ? Outcome::fails : Outcome::inconclusive;
  }
  // exponent 1: product ~ n^c
  const Interval& c = e.coefficient;
  why = "product ~ n^c with c in " + fmt(c) + ", need c <= 1 - alpha = " + fmt(1.0 - alpha);
  if (add_up(c.hi(), alpha) <= 1.0) return Outcome::holds;
  if (add_down(c.lo(), alpha) > 1.0) return Outcome::fails;
  return Outcome::inconclusive;
}

// Outcome of hyp "dyadic block sums of at(i+1)^{2 alpha} -> 0".
Outcome block_sums(const DecayEnvelope& e, double alpha, std::string& why) {
  if (e.kind == Kind::vanishing || e.kind == Kind::geometric || zero_power(e)) {
    why = "block sums vanish geometrically";
    return Outcome::holds;
  }
  if (e.kind == Kind::unknown) {
    why = "no closed-form envelope";
    return Outcome::inconclusive;
  }
  const double p = 2.0 * alpha * e.exponent;
  why = "block sums ~ 2^{n(1 - " + fmt(p) + ")}";
  if (p > 1.0) return Outcome::holds;
  return e.coefficient.lo() > 0.0 ? Outcome::fails : Outcome::inconclusive;
}

Outcome both(Outcome a, Outcome b) {
  if (a == Outcome::fails || b == Outcome::fails) return Outcome::fails;
  if (a == Outcome::holds && b == Outcome::holds) return Outcome::holds;
  return Outcome::inconclusive;
}

// limsup sqrt(n) at(n+1)^alpha.
Interval gamma_limsup(const DecayEnvelope& e, double alpha) {
  if (e.kind == Kind::vanishing || e.kind == Kind::geometric || zero_power(e)) return Interval(0.0);
  if (e.kind == Kind::unknown) return Interval(0.0, kInf);
  const double p = e.exponent * alpha;
  if (p > 0.5) return Interval(0.0);
  if (p == 0.5) return pow(e.coefficient, alpha);
  return e.coefficient.lo() > 0.0 ? Interval(kInf, kInf) : Interval(0.0, kInf);
}

// limsup n^{alpha-1} prod_{i<=n} exp(at(i+1)).
Interval product_limsup(const VariationProfile& profile, double alpha, const GammaOptions& opts) {
  const DecayEnvelope& e = profile.envelope();
  if (e.kind == Kind::unknown) return Interval(0.0, kInf);
  if (summable_kind(e) || zero_power(e)) return alpha < 1.0 ? Interval(0.0) : product_constant(profile, opts);
  if (e.exponent < 1.0) return e.coefficient.lo() > 0.0 ? Interval(kInf, kInf) : Interval(0.0, kInf);
  const Interval& c = e.coefficient;
  if (add_up(c.hi(), alpha) < 1.0) return Interval(0.0);
  if (add_down(c.lo(), alpha) > 1.0) return Interval(kInf, kInf);
  if (c.is_point() && add_down(c.lo(), alpha) == 1.0 && add_up(c.hi(), alpha) == 1.0)
    return product_constant(profile, opts);
  return Interval(0.0, kInf);
}

}  // namespace

int rank(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::unique_gibbs_bernoulli: return 2;
    case Conclusion::unique_gibbs: return 1;
    case Conclusion::unique_invariant_gibbs: return 0;
  }
  return 0;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid{0.51};
  for (int k = 11; k <= 20; ++k) grid.push_back(k / 20.0);
  return grid;
}

Verdict check_thm_bern2(const VariationProfile& profile) {
  Verdict v = make("thm_bern2", Conclusion::unique_gibbs_bernoulli);
  const DecayEnvelope& e = profile.envelope();
  const Interval slope = profile.asymptotic_slope();
  v.value = slope;
  v.margin = Interval(0.5) - slope;
  if (e.kind == Kind::unknown) {
    v.outcome = Outcome::inconclusive;
    v.certificate = "no closed-form envelope for at(n)";
    return v;
  }
  if (summable_kind(e) || zero_power(e)) {
    v.outcome = Outcome::holds;
    v.certificate = "at(n) summable (" + e.describe() + "): slope 0, a_n = at(n)";
    return v;
  }
  if (e.exponent < 1.0) {
    v.outcome = e.coefficient.lo() > 0.0 ? Outcome::fails : Outcome::inconclusive;
    v.certificate = "at(n) >= c n^{-" + fmt(e.exponent) + "}: n at(n) unbounded";
    return v;
  }
  // at(n) = c/n + a_n with 0 <= a_n <= d n^{-t}, t > 1
  const std::string rem = "remainder <= " + fmt(e.remainder_coefficient) + " n^{-" + fmt(e.remainder_exponent) + "}";
  if (slope.hi() < 0.5) {
    v.outcome = Outcome::holds;
    v.certificate = "at(n) = c/n + a_n, c in " + fmt(slope) + " < 1/2, " + rem;
  } else if (slope.lo() >= 0.5) {
    v.outcome = Outcome::fails;
    v.certificate = "exact slope c in " + fmt(slope) + " >= 1/2";
  } else {
    v.outcome = Outcome::inconclusive;
    v.certificate = "slope enclosure " + fmt(slope) + " straddles 1/2";
  }
  return v;
}

Verdict check_berbee(const VariationProfile& profile) {
  Verdict v = make("berbee", Conclusion::unique_gibbs);
  const DecayEnvelope& e = profile.envelope();
  if (e.kind == Kind::unknown) {
    v.outcome = Outcome::inconclusive;
    v.margin = Interval::entire();
    v.certificate = "no closed-form envelope for at(n)";
    return v;
  }
  if (summable_kind(e) || zero_power(e)) {
    v.outcome = Outcome::holds;
    v.margin = Interval(1.0);
    v.value = Interval(0.0);
    v.certificate = "sum at(n) < inf: product terms bounded below, series diverges";
    return v;
  }
  // log of the k-th product term is -sum of b_j with b_{2k} = 2 at(k+1),
  // b_{2k+1} = at(k+1) + at(k+2); at ~ c/n gives -4c log k + O(1).
  const Interval four_c = Interval(4.0) * e.coefficient;
  v.value = four_c;
  v.margin = Interval(1.0) - four_c;
  if (e.exponent < 1.0) {
    v.outcome = e.coefficient.lo() > 0.0 ? Outcome::fails : Outcome::inconclusive;
    v.certificate = "log product term ~ -k^{" + fmt(1.0 - e.exponent) + "}: series converges";
    v.margin = Interval(-kInf, v.margin.hi());
    return v;
  }
  if (four_c.hi() <= 1.0) {
    v.outcome = Outcome::holds;
    v.certificate = "product term >= C k^{-4c}, 4c in " + fmt(four_c) + " <= 1: series diverges";
  } else if (four_c.lo() > 1.0) {
    v.outcome = Outcome::fails;
    v.certificate = "product term <= C k^{-4c}, 4c in " + fmt(four_c) + " > 1: series converges";
  } else {
    v.outcome = Outcome::inconclusive;
    v.certificate = "4c enclosure " + fmt(four_c) + " straddles 1";
  }
  return v;
}

Verdict check_thm_bern1(const VariationProfile& profile, std::optional<double> alpha) {
  if (alpha) check_alpha(*alpha);
  Verdict v = make("thm_bern1", Conclusion::unique_gibbs_bernoulli);
  const DecayEnvelope& e = profile.envelope();
  const std::vector<double> grid = alpha ? std::vector<double>{*alpha} : default_alpha_grid();

  bool any_inconclusive = false;
  std::ostringstream log;
  for (double a : grid) {
    std::string w2, w4;
    const Outcome o = both(product_growth(e, a, w2), block_sums(e, a, w4));
    if (o == Outcome::holds) {
      v.outcome = Outcome::holds;
      v.certificate = "alpha = " + fmt(a) + ": " + w2 + "; " + w4;
      if (e.kind == Kind::power && e.exponent == 1.0)
        v.margin = Interval(1.0 - a) - e.coefficient;
      else
        v.margin = Interval(1.0 - a);
      v.value = Interval(a);
      return v;
    }
    if (o == Outcome::inconclusive) any_inconclusive = true;
    log << "alpha = " << fmt(a) << ": " << to_string(o) << " (" << w2 << "; " << w4 << ") ";
  }
  v.outcome = any_inconclusive ? Outcome::inconclusive : Outcome::fails;
  v.certificate = alpha ? log.str() : "no grid alpha certifies both conditions: " + log.str();
  if (e.kind == Kind::power && e.exponent == 1.0)
    v.margin = Interval(0.5) - e.coefficient;  // best case alpha -> 1/2
  else
    v.margin = Interval::entire();
  if (!v.certificate.empty() && v.certificate.back() == ' ') v.certificate.pop_back();
  return v;
}

Verdict check_jop_blocksum(const DecayProfile& logr_g, double lambda) {
  if (!(lambda > 1.0)) throw std::invalid_argument("check_jop_blocksum: lambda must exceed 1");
  Verdict v = make("jop_blocksum", Conclusion::unique_gibbs_bernoulli);
  const DecayEnvelope& e = logr_g.envelope();
  if (e.kind == Kind::vanishing || e.kind == Kind::geometric || zero_power(e)) {
    v.outcome = Outcome::holds;
    v.margin = Interval(kInf, kInf);
    v.value = Interval(0.0);
    v.certificate = "log r(g) " + e.describe() + ": block sums -> 0 for lambda = " + fmt(lambda);
    return v;
  }
  if (e.kind == Kind::unknown) {
    v.outcome = Outcome::inconclusive;
    v.margin = Interval::entire();
    v.certificate = "no closed-form envelope for log r(g)";
    return v;
  }
  const double s = e.exponent;
  v.margin = Interval(2.0 * s - 1.0);
  if (2.0 * s > 1.0) {
    v.outcome = Outcome::holds;
    v.value = Interval(0.0);
    v.certificate = "log r(g) <= C n^{-" + fmt(s) + "}: block sums ~ lambda^{n(1 - 2s)} -> 0";
  } else if (e.coefficient.lo() > 0.0) {
    v.outcome = Outcome::fails;
    v.value = 2.0 * s == 1.0 ? pow(e.coefficient, 2.0) * log(Interval(lambda)) : Interval(kInf, kInf);
    v.certificate = "log r(g) >= c n^{-" + fmt(s) + "}: block sums do not tend to 0";
  } else {
    v.outcome = Outcome::inconclusive;
    v.certificate = "coefficient enclosure " + fmt(e.coefficient) + " reaches 0";
  }
  return v;
}

Verdict check_bcjo(const DecayProfile& logr_g) {
  Verdict v = make("bcjo", Conclusion::unique_invariant_gibbs);
  const Interval L = logr_g.envelope().limsup_scaled(0.5);
  v.value = L;
  v.margin = Interval(2.0) - L;
  if (L.hi() < 2.0) {
    v.outcome = Outcome::holds;
    v.certificate = "limsup sqrt(n) log r(g) in " + fmt(L) + " < 2";
  } else if (L.lo() >= 2.0) {
    v.outcome = Outcome::fails;
    v.certificate = "limsup sqrt(n) log r(g) in " + fmt(L) + " >= 2";
  } else {
    v.outcome = Outcome::inconclusive;
    v.certificate = logr_g.envelope().kind == Kind::unknown ? "no closed-form envelope for log r(g)"
                                                             : "limsup enclosure " + fmt(L) + " straddles 2";
  }
  return v;
}

Interval product_constant(const VariationProfile& profile, const GammaOptions& opts) {
  const DecayEnvelope& e = profile.envelope();
  if (e.kind == Kind::unknown || (e.kind == Kind::power && e.exponent < 1.0)) return Interval(0.0, kInf);
  if (e.kind == Kind::vanishing) {
    const TailTable t = profile.table(std::max(1L, e.vanishes_after));
    Interval s(0.0);
    for (long m = t.size(); m >= 1; --m) s += t.at(m);
    return exp(s);
  }
  const long N = opts.partial_terms;
  const TailTable t = profile.table(N);
  Interval s(0.0), remainder(0.0);
  const Interval NN(static_cast<double>(N));
  if (e.kind == Kind::geometric) {
    for (long m = N; m >= 1; --m) s += t.at(m);
    const Interval r(e.ratio);
    remainder = Interval(0.0, (Interval(e.scale.hi()) * pow(r, static_cast<double>(N + 1)) / (Interval(1.0) - r)).hi());
    return exp(s + remainder);
  }
  const double d = e.remainder_coefficient, tt = e.remainder_exponent;
  const Interval rem_hi = d == 0.0 ? Interval(0.0)
                                   : Interval(d) * pow(NN, 1.0 - tt) / Interval(tt - 1.0);
  if (e.exponent > 1.0) {
    // sum_{m>N} at(m) <= c N^{1-s}/(s-1) + d N^{1-t}/(t-1)
    for (long m = N; m >= 1; --m) s += t.at(m);
    const Interval main = e.coefficient * pow(NN, 1.0 - e.exponent) / Interval(e.exponent - 1.0);
    return exp(s + Interval(0.0, (main + rem_hi).hi()));
  }
  // at(m) - c/m lies in [0, d m^{-t}]
  const Interval& c = e.coefficient;
  for (long m = N; m >= 1; --m) {
    Interval term = t.at(m) - c / Interval(static_cast<double>(m));
    s += term;
  }
  return exp(c * constants::euler_gamma() + s + Interval(0.0, rem_hi.hi()));
}

Verdict check_gamma_condition(const VariationProfile& profile, std::optional<double> alpha, std::optional<Interval> K,
                              const GammaOptions& opts) {
  if (alpha) check_alpha(*alpha);
  if (K && !(K->lo() > 0.0)) throw std::invalid_argument("check_gamma_condition: K must be positive");
  Verdict v = make("gamma_condition", Conclusion::unique_invariant_gibbs);
  const DecayEnvelope& e = profile.envelope();

  double a = 1.0;
  Interval k(1.0);
  std::string how;
  if (alpha && K) {
    a = *alpha;
    k = *K;
    how = "supplied";
  } else if (alpha || K) {
    throw std::invalid_argument("check_gamma_condition: supply both alpha and K or neither");
  } else {
    // Fit: the smallest admissible alpha with the product limit as K.
    if (e.kind == Kind::unknown) {
      v.outcome = Outcome::inconclusive;
      v.margin = Interval::entire();
      v.certificate = "no closed-form envelope for at(n)";
      return v;
    }
    if (summable_kind(e) || zero_power(e)) {
      a = 1.0;
      k = Interval(product_constant(profile, opts).hi());
    } else if (e.exponent < 1.0) {
      v.outcome = e.coefficient.lo() > 0.0 ? Outcome::fails : Outcome::inconclusive;
      v.margin = Interval::entire();
      v.certificate = "product grows faster than any power of n";
      return v;
    } else {
      const Interval& c = e.coefficient;
      if (c.hi() < 0.5) {
        a = 0.5 * (0.5 + (1.0 - c.hi()));
        k = Interval(1.0);
      } else if (c.is_point() && c.lo() == 0.5) {
        a = 0.5;
        k = Interval(product_constant(profile, opts).hi());
      } else if (c.lo() > 0.5) {
        v.outcome = Outcome::fails;
        v.margin = Interval(0.5) - c;
        v.certificate = "c in " + fmt(c) + " > 1/2: the product needs alpha <= 1 - c < 1/2, the root condition alpha >= 1/2";
        return v;
      } else {
        v.outcome = Outcome::inconclusive;
        v.margin = Interval(0.5) - c;
        v.certificate = "c enclosure " + fmt(c) + " straddles 1/2";
        return v;
      }
    }
    how = "fitted";
  }

  const Interval P = product_limsup(profile, a, opts);
  const Interval L = gamma_limsup(e, a);
  const Interval G = tgamma(a);
  Outcome o2 = Outcome::inconclusive, o4 = Outcome::inconclusive;
  if (P.hi() <= k.lo()) o2 = Outcome::holds;
  else if (P.lo() > k.hi()) o2 = Outcome::fails;
  const Interval LK = L * k;
  if (L.hi() == 0.0 || LK.hi() < G.lo()) o4 = Outcome::holds;
  else if (LK.lo() >= G.hi()) o4 = Outcome::fails;

  v.outcome = both(o2, o4);
  v.value = L;
  v.margin = L.hi() == 0.0 ? G / k : G / k - L;
  v.certificate = how + " alpha = " + fmt(a) + ", K in " + fmt(k) + ": limsup n^{alpha-1} prod in " + fmt(P) + " (" +
                  std::string(to_string(o2)) + "), limsup sqrt(n) at^alpha in " + fmt(L) + " vs Gamma(alpha)/K in " +
                  fmt(G / k) + " (" + std::string(to_string(o4)) + ")";
  return v;
}

Verdict check_dobrushin(const PairPotential& p, long truncation) {
  Verdict v = make("dobrushin", Conclusion::unique_gibbs);
  const DobrushinResult r = dobrushin_sum(p, truncation);
  v.value = r.total;
  v.margin = Interval(2.0) - r.total;
  std::string body = r.reading + "; sites within " + std::to_string(r.range) + ": " + fmt(r.near);
  if (r.truncated) body += ", far-field slack <= " + fmt(r.far_slack);
  if (r.total.hi() < 2.0) {
    v.outcome = Outcome::holds;
    v.certificate = body + ", total < 2";
  } else if (!r.truncated && r.total.lo() >= 2.0) {
    v.outcome = Outcome::fails;
    v.certificate = body + ", total >= 2";
  } else {
    v.outcome = Outcome::inconclusive;
    v.certificate = body + (r.truncated ? ", truncated sum does not certify < 2" : ", total straddles 2");
  }
  return v;
}

DecayProfile g_bound_profile(const FSequence& F, const SeriesOptions& opts) {
  auto eval = [F, opts](long n) { return g_variation_bound(F, n, opts); };
  const auto range = F.source().range();
  // R_n diverges once the window covers the range, so the bound is 0 there.
  const DecayEnvelope env = range ? DecayEnvelope::vanishing(std::max(0L, *range - 1)) : DecayEnvelope::unknown();
  return DecayProfile(eval, env);
}

std::vector<double> berbee_log_partial_sums(const FSequence& F, long n_max) {
  if (n_max < 0) throw std::invalid_argument("berbee_log_partial_sums: n_max must be >= 0");
  const TailTable t = F.tail_table(n_max / 2 + 2);
  std::vector<double> out;
  out.reserve(n_max + 1);
  double log_term = 0.0, log_sum = -kInf;
  for (long n = 0; n <= n_max; ++n) {
    const long k = n / 2;
    const double b = n % 2 == 0 ? 2.0 * t.at(k + 1).mid() : t.at(k + 1).mid() + t.at(k + 2).mid();
    log_term -= b;
    const double hi = std::max(log_sum, log_term), lo = std::min(log_sum, log_term);
    log_sum = hi + std::log1p(std::exp(lo - hi));
    out.push_back(log_sum);
  }
  return out;
}

double berbee_growth_slope(const FSequence& F, long lo, long hi) {
  if (lo < 1 || hi <= lo) throw std::invalid_argument("berbee_growth_slope: need 1 <= lo < hi");
  const auto s = berbee_log_partial_sums(F, hi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(hi - lo + 1);
  for (long n = lo; n <= hi; ++n) {
    const double x = std::log(static_cast<double>(n)), y = s[n];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

const Verdict* CriteriaReport::find(const std::string& criterion) const {
  for (const auto& v : verdicts)
    if (v.criterion == criterion) return &v;
  return nullptr;
}

CriteriaReport evaluate_all(const PairPotential& p, const CriteriaOptions& opts) {
  CriteriaReport report;
  const FSequence F = FSequence::from_potential(p, opts.tail);
  const VariationProfile profile = F.variation();
  const DecayProfile g = g_bound_profile(F, opts.series);

  auto guarded = [&](const char* name, Conclusion strength, auto&& fn) {
    try {
      report.verdicts.push_back(fn());
    } catch (const std::exception& ex) {
      Verdict v = make(name, strength);
      v.outcome = Outcome::inconclusive;
      v.margin = Interval::entire();
      v.certificate = std::string("error: ") + ex.what();
      report.verdicts.push_back(std::move(v));
    }
  };

  guarded("dobrushin", Conclusion::unique_gibbs, [&] { return check_dobrushin(p, opts.dobrushin_truncation); });
  guarded("ruelle", Conclusion::unique_invariant_gibbs, [&] { return ruelle_sum(p, opts.tail); });
  guarded("coelho_quas", Conclusion::unique_invariant_gibbs, [&] { return coelho_quas_sum(p, opts.tail); });
  guarded("berbee", Conclusion::unique_gibbs, [&] { return check_berbee(profile); });
  guarded("thm_bern2", Conclusion::unique_gibbs_bernoulli, [&] { return check_thm_bern2(profile); });
  guarded("thm_bern1", Conclusion::unique_gibbs_bernoulli, [&] { return check_thm_bern1(profile, opts.alpha); });
  guarded("jop_blocksum", Conclusion::unique_gibbs_bernoulli, [&] { return check_jop_blocksum(g, opts.jop_lambda); });
  guarded("bcjo", Conclusion::unique_invariant_gibbs, [&] { return check_bcjo(g); });
  guarded("gamma_condition", Conclusion::unique_invariant_gibbs, [&] {
    if (opts.gamma_alpha || opts.gamma_K)
      return check_gamma_condition(profile, opts.gamma_alpha, opts.gamma_K ? std::optional<Interval>(Interval(*opts.gamma_K)) : std::nullopt);
    return check_gamma_condition(profile);
  });

  for (const auto& v : report.verdicts) {
    if (v.outcome != Outcome::holds) continue;
    if (!report.strongest || rank(v.strength) > rank(*report.strongest)) {
      report.strongest = v.strength;
      report.strongest_by.clear();
    }
    if (rank(v.strength) == rank(*report.strongest)) report.strongest_by.push_back(v.criterion);
  }
  return report;
}

}  // namespace gibbs
