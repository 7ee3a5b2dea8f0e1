#include "gibbs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gibbs/simd/kernels.hpp"

namespace gibbs {
namespace {

constexpr double kUnit = 0x1p-53;  // unit roundoff

bool integer_kernel_exponent(double q) { return q == 2.0 || q == 3.0 || q == 4.0; }

// Relative error bound of one computed term j^{-q}.
double term_rel_error(double q) { return integer_kernel_exponent(q) ? (q + 3.0) * kUnit : 4.0 * kUnit; }

double term(double q, double j) {
  if (integer_kernel_exponent(q)) {
    double d = j;
    for (int k = 1; k < static_cast<int>(q); ++k) d *= j;
    return 1.0 / d;
  }
  return std::pow(j, -q);
}

// Encloses an error-free accumulation hi + lo of `count` terms whose individual
// relative errors are at most `rel`.
Interval enclose(const simd::CompensatedSum& s, double count, double rel) {
  const double mag = std::fabs(s.hi) + std::fabs(s.lo);
  const double err = rel * mag * (1.0 + 4.0 * kUnit) + (count + 8.0) * (count + 8.0) * kUnit * kUnit * mag +
                     2.0 * kUnit * std::fabs(s.lo);
  return Interval(s.hi) + Interval::around(s.lo, err);
}

simd::CompensatedSum power_partial_raw(double q, long a, long b) {
  if (integer_kernel_exponent(q))
    return simd::inverse_power_sum(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b), static_cast<int>(q));
  simd::CompensatedSum acc;
  for (long j = b; j >= a; --j) {
    const double t = term(q, static_cast<double>(j));
    const double s = acc.hi + t;
    const double bb = s - acc.hi;
    acc.lo += (acc.hi - (s - bb)) + (t - bb);
    acc.hi = s;
  }
  return acc;
}

// Integral remainder of sum_{j >= m} j^{-q}: [int_m^inf, m^{-q} + int_m^inf].
Interval power_integral_remainder(double q, long m) {
  const Interval mm(static_cast<double>(m));
  const Interval integral = pow(mm, 1.0 - q) / Interval(q - 1.0) ;
  const Interval first = pow(mm, -q);
  return Interval(integral.lo(), (integral + first).hi());
}

long choose_cutoff(double q, long n, const TailOptions& opts) {
  // The remainder enclosure has width (M+1)^{-q}; the tail is at least
  // n^{1-q}/(q-1). Pick M so that the ratio is below rel_width.
  const double tail_lo = std::pow(static_cast<double>(n), 1.0 - q) / (q - 1.0);
  const double target = opts.rel_width * tail_lo;
  double m1 = std::ceil(std::pow(target, -1.0 / q));
  if (!std::isfinite(m1)) m1 = static_cast<double>(opts.max_cutoff);
  long cutoff = static_cast<long>(std::min(m1, static_cast<double>(opts.max_cutoff))) - 1;
  return std::max(cutoff, n - 1);
}

Interval finite_sum(const std::vector<Interval>& terms) {
  Interval s(0.0);
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) s += *it;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Power-law sums

Interval power_partial_sum(double q, long a, long b) {
  if (a < 1) throw std::invalid_argument("power_partial_sum: first index must be >= 1");
  if (b < a) return Interval(0.0);
  const auto raw = power_partial_raw(q, a, b);
  return enclose(raw, static_cast<double>(b - a + 1), term_rel_error(q));
}

Interval power_tail(double q, long n, const TailOptions& opts) {
  if (!(q > 1.0)) throw std::invalid_argument("power_tail: exponent must exceed 1 (tail diverges)");
  if (n < 1) throw std::invalid_argument("power_tail: n must be >= 1");
  const long cutoff = choose_cutoff(q, n, opts);
  return power_partial_sum(q, n, cutoff) + power_integral_remainder(q, cutoff + 1);
}

// ---------------------------------------------------------------------------
// CouplingLaw

CouplingLaw CouplingLaw::power_law(double q, double amplitude) {
  if (!(q > 1.0)) throw std::invalid_argument("power_law coupling: q must exceed 1 (tail diverges)");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("power_law coupling: amplitude must be >= 0");
  CouplingLaw c;
  c.kind_ = Kind::power_law;
  c.q_ = q;
  c.amplitude_ = amplitude;
  return c;
}

CouplingLaw CouplingLaw::finite_table(std::vector<double> values) {
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("finite_table coupling: values must be finite and >= 0");
  CouplingLaw c;
  c.kind_ = Kind::finite_table;
  c.table_ = std::move(values);
  return c;
}

CouplingLaw CouplingLaw::exponential(double rate, double amplitude) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("exponential coupling: rate must be > 0");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("exponential coupling: amplitude must be >= 0");
  CouplingLaw c;
  c.kind_ = Kind::exponential;
  c.rate_ = rate;
  c.amplitude_ = amplitude;
  return c;
}

double CouplingLaw::value(long n) const {
  if (n < 1) throw std::invalid_argument("CouplingLaw::value: n must be >= 1");
  switch (kind_) {
    case Kind::power_law: return amplitude_ * term(q_, static_cast<double>(n));
    case Kind::finite_table: return n <= static_cast<long>(table_.size()) ? table_[n - 1] : 0.0;
    case Kind::exponential: return amplitude_ * std::exp(-rate_ * static_cast<double>(n));
  }
  return 0.0;
}

Interval CouplingLaw::value_enclosure(long n) const {
  if (n < 1) throw std::invalid_argument("CouplingLaw::value_enclosure: n must be >= 1");
  switch (kind_) {
    case Kind::power_law: {
      const double t = term(q_, static_cast<double>(n));
      return Interval(amplitude_) * Interval::around(t, term_rel_error(q_) * t);
    }
    case Kind::finite_table: return Interval(value(n));
    case Kind::exponential:
      return Interval(amplitude_) * exp(-(Interval(rate_) * Interval(static_cast<double>(n))));
  }
  return Interval(0.0);
}

bool CouplingLaw::is_zero() const noexcept {
  if (kind_ == Kind::finite_table) return std::all_of(table_.begin(), table_.end(), [](double v) { return v == 0.0; });
  return amplitude_ == 0.0;
}

std::optional<long> CouplingLaw::natural_range() const {
  if (is_zero()) return 0L;
  if (kind_ != Kind::finite_table) return std::nullopt;
  long last = 0;
  for (long i = 0; i < static_cast<long>(table_.size()); ++i)
    if (table_[i] != 0.0) last = i + 1;
  return last;
}

// ---------------------------------------------------------------------------
// PairPotential

PairPotential::PairPotential(CouplingLaw coupling, double beta, std::optional<long> truncation_range)
    : coupling_(std::move(coupling)), beta_(beta), truncation_(truncation_range) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("PairPotential: beta must be finite and >= 0");
  if (truncation_ && *truncation_ < 1) throw std::invalid_argument("PairPotential: truncation_range must be >= 1");
}

bool PairPotential::is_zero() const noexcept { return beta_ == 0.0 || coupling_.is_zero(); }

std::optional<long> PairPotential::range() const {
  if (is_zero()) return 0L;
  auto natural = coupling_.natural_range();
  if (natural && truncation_) return std::min(*natural, *truncation_);
  if (natural) return natural;
  return truncation_;
}

double PairPotential::coupling_at(long n) const {
  if (truncation_ && n > *truncation_) return 0.0;
  return coupling_.value(n);
}

Interval PairPotential::coupling_enclosure(long n) const {
  if (truncation_ && n > *truncation_) return Interval(0.0);
  return coupling_.value_enclosure(n);
}

Interval PairPotential::coupling_tail(long n, const TailOptions& opts) const {
  if (n < 1) throw std::invalid_argument("coupling_tail: n must be >= 1");
  if (coupling_.is_zero()) return Interval(0.0);
  const auto r = range();
  if (r) {
    if (n > *r) return Interval(0.0);
    if (coupling_.kind() == CouplingLaw::Kind::power_law)
      return Interval(coupling_.amplitude()) * power_partial_sum(coupling_.q(), n, *r);
    std::vector<Interval> terms;
    for (long j = n; j <= *r; ++j) terms.push_back(coupling_.value_enclosure(j));
    return finite_sum(terms);
  }
  switch (coupling_.kind()) {
    case CouplingLaw::Kind::power_law: return Interval(coupling_.amplitude()) * power_tail(coupling_.q(), n, opts);
    case CouplingLaw::Kind::exponential: {
      const Interval rate(coupling_.rate());
      const Interval one(1.0);
      return Interval(coupling_.amplitude()) * exp(-(rate * Interval(static_cast<double>(n)))) / (one - exp(-rate));
    }
    case CouplingLaw::Kind::finite_table: break;
  }
  return Interval(0.0);
}

std::optional<Interval> PairPotential::coupling_moment(const TailOptions& opts) const {
  if (coupling_.is_zero()) return Interval(0.0);
  const auto r = range();
  if (r) {
    std::vector<Interval> terms;
    for (long j = 1; j <= *r; ++j) terms.push_back(Interval(static_cast<double>(j)) * coupling_enclosure(j));
    return finite_sum(terms);
  }
  switch (coupling_.kind()) {
    case CouplingLaw::Kind::power_law:
      if (coupling_.q() <= 2.0) return std::nullopt;
      return Interval(coupling_.amplitude()) * power_tail(coupling_.q() - 1.0, 1, opts);
    case CouplingLaw::Kind::exponential: {
      const Interval e = exp(-Interval(coupling_.rate()));
      const Interval d = Interval(1.0) - e;
      return Interval(coupling_.amplitude()) * e / (d * d);
    }
    case CouplingLaw::Kind::finite_table: break;
  }
  return Interval(0.0);
}

double PairPotential::pair_energy(long distance, double xi, double xj) const {
  return -(beta_ / 2.0) * coupling_at(distance) * xi * xj;
}

DecayEnvelope PairPotential::tail_envelope() const {
  if (is_zero()) return DecayEnvelope::vanishing(0);
  if (auto r = range()) return DecayEnvelope::vanishing(*r);
  const Interval beta(beta_);
  switch (coupling_.kind()) {
    case CouplingLaw::Kind::power_law: {
      // int_n^inf x^{-q} <= T(n) <= n^{-q} + int_n^inf x^{-q}
      const double q = coupling_.q();
      const Interval amp(coupling_.amplitude());
      const Interval c = beta * amp / Interval(q - 1.0);
      const double d = (beta * amp).hi();
      return DecayEnvelope::power(c, q - 1.0, d, q);
    }
    case CouplingLaw::Kind::exponential: {
      const Interval rate(coupling_.rate());
      const Interval scale = beta * Interval(coupling_.amplitude()) / (Interval(1.0) - exp(-rate));
      return DecayEnvelope::geometric(scale, exp(-rate).hi());
    }
    case CouplingLaw::Kind::finite_table: break;
  }
  return DecayEnvelope::vanishing(0);
}

PairPotential PairPotential::truncated(long R) const {
  long cap = truncation_ ? std::min(*truncation_, R) : R;
  return PairPotential(coupling_, beta_, cap);
}

// ---------------------------------------------------------------------------
// Variation sums

Interval tail_variation(const PairPotential& p, long n, const TailOptions& opts) {
  if (n < 1) throw std::invalid_argument("tail_variation: n must be >= 1");
  if (p.is_zero()) return Interval(0.0);
  return Interval(p.beta()) * p.coupling_tail(n, opts);
}

TailTable::TailTable(std::vector<Interval> values, DecayEnvelope envelope)
    : values_(std::move(values)), envelope_(envelope) {}

Interval TailTable::at(long m) const {
  if (m < 1) throw std::invalid_argument("TailTable::at: m must be >= 1");
  if (m > size()) {
    if (envelope_.kind == DecayEnvelope::Kind::vanishing && m > envelope_.vanishes_after) return Interval(0.0);
    throw std::out_of_range("TailTable::at: beyond table");
  }
  return values_[m - 1];
}

TailTable variation_tail_table(const PairPotential& p, long m_max, const TailOptions& opts) {
  if (m_max < 1) throw std::invalid_argument("variation_tail_table: m_max must be >= 1");
  std::vector<Interval> values(m_max, Interval(0.0));
  const DecayEnvelope env = p.tail_envelope();
  if (p.is_zero()) return TailTable(std::move(values), env);
  const Interval beta(p.beta());
  const auto& c = p.coupling();

  if (!p.range() && c.kind() == CouplingLaw::Kind::power_law) {
    // One backward sweep from the cutoff: T(m) = sum_{j=m}^{M} j^{-q} + remainder.
    const double q = c.q();
    const long cutoff = std::max(choose_cutoff(q, m_max, opts), m_max);
    const Interval remainder = power_integral_remainder(q, cutoff + 1);
    simd::CompensatedSum acc = power_partial_raw(q, m_max + 1, cutoff);
    const double rel = term_rel_error(q);
    const Interval scale = beta * Interval(c.amplitude());
    for (long m = m_max; m >= 1; --m) {
      const double t = term(q, static_cast<double>(m));
      const double s = acc.hi + t;
      const double bb = s - acc.hi;
      acc.lo += (acc.hi - (s - bb)) + (t - bb);
      acc.hi = s;
      values[m - 1] = scale * (enclose(acc, static_cast<double>(cutoff - m + 1), rel) + remainder);
    }
    return TailTable(std::move(values), env);
  }

  if (auto r = p.range()) {
    Interval running(0.0);
    for (long j = *r; j >= 1; --j) {
      running += p.coupling_enclosure(j);
      if (j <= m_max) values[j - 1] = beta * running;
    }
    return TailTable(std::move(values), env);
  }

  for (long m = 1; m <= m_max; ++m) values[m - 1] = tail_variation(p, m, opts);
  return TailTable(std::move(values), env);
}

TailTable VariationProfile::table(long m_max) const {
  if (table_builder_) return table_builder_(m_max);
  std::vector<Interval> values;
  values.reserve(m_max);
  for (long m = 1; m <= m_max; ++m) values.push_back(at(m));
  return TailTable(std::move(values), envelope());
}

VariationProfile variation_profile(const PairPotential& p, const TailOptions& opts) {
  auto eval = [p, opts](long n) { return tail_variation(p, n, opts); };
  auto table = [p, opts](long m_max) { return variation_tail_table(p, m_max, opts); };
  return VariationProfile(DecayProfile(eval, p.tail_envelope()), table);
}

// ---------------------------------------------------------------------------
// Diameter-weighted sums

namespace {

Verdict diameter_sum(const PairPotential& p, const TailOptions& opts, bool one_sided) {
  Verdict v;
  v.criterion = one_sided ? "coelho_quas" : "ruelle";
  v.strength = Conclusion::unique_invariant_gibbs;
  const Interval weight = one_sided ? Interval(p.beta() / 2.0) : Interval(p.beta());
  std::ostringstream cert;
  cert.precision(17);
  if (p.is_zero()) {
    v.outcome = Outcome::holds;
    v.value = Interval(0.0);
    v.margin = Interval(std::numeric_limits<double>::infinity());
    v.certificate = "zero interaction: every diameter-weighted norm vanishes";
    return v;
  }
  auto moment = p.coupling_moment(opts);
  if (!moment) {
    v.outcome = Outcome::fails;
    v.margin = Interval(-std::numeric_limits<double>::infinity());
    cert << "sum_j j J(j) = amplitude * sum_j j^(1-q) diverges for q = " << p.coupling().q() << " <= 2";
    v.certificate = cert.str();
    return v;
  }
  const Interval value = weight * *moment;
  v.outcome = Outcome::holds;
  v.value = value;
  v.margin = Interval(std::numeric_limits<double>::infinity());
  cert << (one_sided ? "(beta/2)" : "beta") << " * sum_j j J(j) in " << value.lo() << ", " << value.hi()
       << (one_sided ? " over Lambda = {0, j}" : " over Lambda = {0, j} and {-j, 0}");
  if (!one_sided) cert << "; Bernoulli property follows for this class";
  v.certificate = cert.str();
  return v;
}

}  // namespace

Verdict ruelle_sum(const PairPotential& p, const TailOptions& opts) { return diameter_sum(p, opts, false); }

Verdict coelho_quas_sum(const PairPotential& p, const TailOptions& opts) { return diameter_sum(p, opts, true); }

}  // namespace gibbs
