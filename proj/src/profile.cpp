#include "gibbs/profile.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gibbs/verdict.hpp"

namespace gibbs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails-hypothesis";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Conclusion c) noexcept {
  switch (c) {
    case Conclusion::unique_gibbs_bernoulli: return "unique Gibbs state, T-invariant and Bernoulli";
    case Conclusion::unique_gibbs: return "unique Gibbs state";
    case Conclusion::unique_invariant_gibbs: return "unique T-invariant Gibbs state";
  }
  return "?";
}

DecayEnvelope DecayEnvelope::vanishing(long after) {
  DecayEnvelope e;
  e.kind = Kind::vanishing;
  e.vanishes_after = after;
  return e;
}

DecayEnvelope DecayEnvelope::geometric(Interval scale, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("geometric envelope: ratio must lie in (0,1)");
  DecayEnvelope e;
  e.kind = Kind::geometric;
  e.scale = scale;
  e.ratio = ratio;
  return e;
}

DecayEnvelope DecayEnvelope::power(Interval coefficient, double exponent, double remainder_coefficient,
                                   double remainder_exponent) {
  if (!(exponent >= 0.0)) throw std::invalid_argument("power envelope: exponent must be >= 0");
  if (coefficient.lo() < 0.0 || remainder_coefficient < 0.0)
    throw std::invalid_argument("power envelope: coefficients must be non-negative");
  DecayEnvelope e;
  e.kind = Kind::power;
  e.coefficient = coefficient;
  e.exponent = exponent;
  e.remainder_coefficient = remainder_coefficient;
  e.remainder_exponent = remainder_coefficient == 0.0 ? exponent + 1.0 : remainder_exponent;
  if (!(e.remainder_exponent > exponent)) throw std::invalid_argument("power envelope: remainder must decay faster");
  return e;
}

DecayEnvelope DecayEnvelope::unknown() { return DecayEnvelope{}; }

Interval DecayEnvelope::limsup_scaled(double p) const {
  switch (kind) {
    case Kind::vanishing:
    case Kind::geometric: return Interval(0.0);
    case Kind::power:
      if (coefficient.hi() == 0.0) return Interval(0.0);
      if (exponent > p) return Interval(0.0);
      if (exponent == p) return coefficient;
      return coefficient.lo() > 0.0 ? Interval(kInf, kInf) : Interval(0.0, kInf);
    case Kind::unknown: return Interval(0.0, kInf);
  }
  return Interval(0.0, kInf);
}

Interval DecayEnvelope::bound(long n) const {
  if (n < 1) throw std::invalid_argument("DecayEnvelope::bound: n must be >= 1");
  const Interval nn(static_cast<double>(n));
  switch (kind) {
    case Kind::vanishing:
      if (n > vanishes_after) return Interval(0.0);
      return Interval(0.0, kInf);
    case Kind::geometric: return Interval(0.0, (Interval(scale.hi()) * pow(Interval(ratio), static_cast<double>(n))).hi());
    case Kind::power: {
      const Interval main = coefficient * pow(nn, -exponent);
      const Interval rest = Interval(remainder_coefficient) * pow(nn, -remainder_exponent);
      return Interval(main.lo(), (main + rest).hi());
    }
    case Kind::unknown: break;
  }
  return Interval(0.0, kInf);
}

bool DecayEnvelope::summable() const {
  switch (kind) {
    case Kind::vanishing:
    case Kind::geometric: return true;
    case Kind::power: return coefficient.hi() == 0.0 || exponent > 1.0;
    case Kind::unknown: return false;
  }
  return false;
}

std::string DecayEnvelope::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::vanishing: os << "vanishes for n > " << vanishes_after; break;
    case Kind::geometric: os << "<= " << scale.hi() << " * " << ratio << "^n"; break;
    case Kind::power:
      os << "in [" << coefficient.lo() << " n^-" << exponent << ", " << coefficient.hi() << " n^-" << exponent;
      if (remainder_coefficient > 0.0) os << " + " << remainder_coefficient << " n^-" << remainder_exponent;
      os << "]";
      break;
    case Kind::unknown: os << "no closed-form envelope"; break;
  }
  return os.str();
}

DecayProfile::DecayProfile(std::function<Interval(long)> eval, DecayEnvelope envelope, long horizon)
    : eval_(std::move(eval)), envelope_(envelope), horizon_(horizon) {}

DecayProfile DecayProfile::power(Interval coefficient, double exponent) {
  auto eval = [coefficient, exponent](long n) { return coefficient * pow(Interval(static_cast<double>(n)), -exponent); };
  return DecayProfile(eval, DecayEnvelope::power(coefficient, exponent));
}

DecayProfile DecayProfile::zero() {
  return DecayProfile([](long) { return Interval(0.0); }, DecayEnvelope::vanishing(0));
}

Interval DecayProfile::at(long n) const {
  if (n < 1) throw std::invalid_argument("DecayProfile::at: n must be >= 1");
  if (n > horizon_) throw std::out_of_range("DecayProfile::at: beyond numeric horizon");
  if (!eval_) return Interval(0.0);
  return eval_(n);
}

}  // namespace gibbs
