#include "gibbs/fseq.hpp"

#include <algorithm>
#include <stdexcept>

#include "gibbs/errors.hpp"

namespace gibbs {

Window Window::finite(long n) {
  if (n < 0) throw std::invalid_argument("Window: n must be >= 0");
  return Window{n};
}

FSequence FSequence::from_potential(PairPotential p, TailOptions opts) {
  // Every admitted coupling law has a finite tail; a diverging one cannot be
  // constructed, so the summability precondition holds by construction.
  return FSequence(std::move(p), opts);
}

Interval FSequence::at(long n) const { return tail_variation(potential_, n, opts_); }

TailTable FSequence::tail_table(long m_max) const { return variation_tail_table(potential_, m_max, opts_); }

VariationProfile FSequence::variation() const { return variation_profile(potential_, opts_); }

std::vector<long> FSequence::dependency(long i, long horizon) const {
  if (i < 0) throw std::invalid_argument("dependency: i must be >= 0");
  std::vector<long> sites;
  const auto r = potential_.range();
  const long reach = r ? std::min(*r, horizon) : horizon;
  for (long j = reach; j > i; --j)
    if (potential_.coupling_at(j) != 0.0) sites.push_back(i - j);
  sites.push_back(i);
  for (long j = 1; j <= reach; ++j)
    if (potential_.coupling_at(j) != 0.0) sites.push_back(i + j);
  return sites;
}

Interval FSequence::log_f(long i, const Word& word) const {
  if (i < 0) throw std::invalid_argument("log_f: i must be >= 0");
  if (!word.covers(i)) throw CoverageError("log_f: word does not cover site " + std::to_string(i));
  if (potential_.is_zero()) return Interval(0.0);

  const Interval half_beta(potential_.beta() / 2.0);
  const long a = word.first(), b = word.last();
  const auto r = potential_.range();
  const double xi = word.at(i);
  Interval sum(0.0);

  long right_end = b - i;
  if (r) right_end = std::min(right_end, *r);
  for (long j = 1; j <= right_end; ++j) {
    const double sign = xi * word.at(i + j);
    sum += Interval(sign) * potential_.coupling_enclosure(j);
  }
  long left_end = i - a;
  if (r) left_end = std::min(left_end, *r);
  for (long j = i + 1; j <= left_end; ++j) {
    const double sign = xi * word.at(i - j);
    sum += Interval(sign) * potential_.coupling_enclosure(j);
  }

  // Uncovered sites: each contributes at most J(j) in absolute value.
  Interval slack = potential_.coupling_tail(b - i + 1, opts_);
  slack += potential_.coupling_tail(std::max(i, i - a) + 1, opts_);
  sum += Interval(-slack.hi(), slack.hi());
  return half_beta * sum;
}

Interval FSequence::log_ratio_left(long n) const {
  if (n < 0) throw std::invalid_argument("log_ratio_left: n must be >= 0");
  return at(n + 1);
}

Interval FSequence::log_ratio_right(long n) const {
  if (n < 0) throw std::invalid_argument("log_ratio_right: n must be >= 0");
  return at(n + 1);
}

Interval berbee_log_rbar(const VariationProfile& profile, long index) {
  if (index < 0) throw std::invalid_argument("berbee_log_rbar: index must be >= 0");
  const long k = index / 2;
  const Interval t = profile.at(k + 1);
  if (index % 2 == 0) return -(t + t);
  // [-k, k+1]: the left tail starts at k+1, the right tail at k+2.
  return -(t + profile.at(k + 2));
}

Interval FSequence::berbee_log_rbar(long index) const {
  if (index < 0) throw std::invalid_argument("berbee_log_rbar: index must be >= 0");
  const long k = index / 2;
  const Interval t = at(k + 1);
  if (index % 2 == 0) return -(t + t);
  return -(t + t) + Interval(potential_.beta()) * potential_.coupling_enclosure(k + 1);
}

std::vector<Interval> FSequence::log_v_profile(Window window, long k_max) const {
  if (k_max < 0) throw std::invalid_argument("v_profile: k_max must be >= 0");
  const TailTable table = tail_table(k_max + 1);
  const Interval past = window.infinite() ? Interval(0.0) : at(*window.n + 1);
  std::vector<Interval> out;
  out.reserve(k_max + 1);
  for (long k = 0; k <= k_max; ++k) out.push_back(-(table.at(k + 1) + past));
  return out;
}

std::vector<Interval> FSequence::v_profile(Window window, long k_max) const {
  auto logs = log_v_profile(window, k_max);
  std::vector<Interval> out;
  out.reserve(logs.size());
  for (const auto& l : logs) {
    const Interval v = exp(l);
    out.push_back(Interval(v.lo(), std::min(v.hi(), 1.0)));
  }
  return out;
}

std::vector<double> FSequence::v_lower(Window window, long k_max) const {
  auto v = v_profile(window, k_max);
  std::vector<double> out;
  out.reserve(v.size());
  double run = 0.0;
  for (const auto& x : v) {
    run = std::max(run, x.lo());
    out.push_back(run);
  }
  return out;
}

}  // namespace gibbs
