#pragma once

#include <functional>
#include <limits>
#include <string>

#include "gibbs/interval.hpp"

namespace gibbs {

/// Closed-form asymptotic envelope of a non-negative sequence f(n), n >= 1.
///
///   vanishing:  f(n) = 0 for n > vanishes_after
///   geometric:  f(n) <= scale.hi * ratio^n, 0 < ratio < 1
///   power:      c n^{-s} <= f(n) <= c n^{-s} + d n^{-t},  t > s >= 0, for one
///               true coefficient c enclosed by `coefficient` (s = 0 is a constant)
///   unknown:    no certificate beyond the sequence's numeric horizon
struct DecayEnvelope {
  enum class Kind { vanishing, geometric, power, unknown };

  Kind kind = Kind::unknown;
  long vanishes_after = 0;
  Interval scale;
  double ratio = 0.0;
  Interval coefficient;
  double exponent = 0.0;
  double remainder_coefficient = 0.0;
  double remainder_exponent = 0.0;

  static DecayEnvelope vanishing(long after);
  static DecayEnvelope geometric(Interval scale, double ratio);
  static DecayEnvelope power(Interval coefficient, double exponent, double remainder_coefficient = 0.0,
                             double remainder_exponent = 0.0);
  static DecayEnvelope unknown();

  /// Enclosure of limsup n^p f(n); hi may be +inf.
  Interval limsup_scaled(double p) const;
  /// Enclosure of f(n) from the envelope alone ([0, inf] when unknown).
  Interval bound(long n) const;
  /// True when sum f(n) is certified finite.
  bool summable() const;
  std::string describe() const;
};

/// A sequence n -> Interval (n >= 1) carried with its envelope.
class DecayProfile {
 public:
  DecayProfile() = default;
  DecayProfile(std::function<Interval(long)> eval, DecayEnvelope envelope,
               long horizon = std::numeric_limits<long>::max());

  /// Exact closed form c * n^{-s}.
  static DecayProfile power(Interval coefficient, double exponent);
  static DecayProfile zero();

  Interval at(long n) const;
  const DecayEnvelope& envelope() const noexcept { return envelope_; }
  long horizon() const noexcept { return horizon_; }

 private:
  std::function<Interval(long)> eval_;
  DecayEnvelope envelope_ = DecayEnvelope::vanishing(0);
  long horizon_ = std::numeric_limits<long>::max();
};

}  // namespace gibbs
