#pragma once

#include <optional>
#include <vector>

#include "gibbs/interval.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/word.hpp"

namespace gibbs {

/// Conditioned past A for v-profiles: [-n, -1], or all negative sites.
struct Window {
  std::optional<long> n;

  static Window finite(long n);
  static Window infinite_past() { return Window{}; }
  bool infinite() const noexcept { return !n.has_value(); }
};

/// Specification sequence {[0,n], f_n} of a pair potential:
///
///   log f_i(x) = (beta/2) [ sum_{j>=1} J(j) x_i x_{i+j} + sum_{j>i} J(j) x_i x_{i-j} ]
///
/// so each pair is charged to its leftmost site in [0, inf), and pairs
/// reaching into the negative half-line are charged to their non-negative end.
/// Every ratio functional below reduces to the tail sums at(n) = beta T(n).
class FSequence {
 public:
  static FSequence from_potential(PairPotential p, TailOptions opts = {});

  const PairPotential& source() const noexcept { return potential_; }
  const TailOptions& tail_options() const noexcept { return opts_; }

  /// at(n) = beta * sum_{j>=n} J(j), n >= 1.
  Interval at(long n) const;
  /// at(1..m_max) in one sweep.
  TailTable tail_table(long m_max) const;
  VariationProfile variation() const;

  /// Sites f_i depends on, restricted to |site - i| <= horizon.
  std::vector<long> dependency(long i, long horizon) const;

  /// log f_i on `word`; sites the word does not cover contribute an interval
  /// of radius (beta/2) J(|site - i|). Throws CoverageError unless i is covered.
  Interval log_f(long i, const Word& word) const;

  /// log r_{(-inf, n]}(f_0) and log r_{[-n, inf)}(f_0); both equal at(n+1).
  Interval log_ratio_left(long n) const;
  Interval log_ratio_right(long n) const;

  /// log rbar of f_0 on Lambda_index of the two-sided enumeration
  /// Lambda_{2k} = [-k, k], Lambda_{2k+1} = [-k, k+1].
  Interval berbee_log_rbar(long index) const;

  /// v_k = inf_i rbar_{A u [0, i+k]}(f_i) for k = 0..k_max; translation
  /// invariance puts the infimum at i = 0, so log v_k = -(at(k+1) + at(n+1)).
  std::vector<Interval> v_profile(Window window, long k_max) const;
  std::vector<Interval> log_v_profile(Window window, long k_max) const;
  /// Non-decreasing lower representatives of v_0..v_{k_max}.
  std::vector<double> v_lower(Window window, long k_max) const;

 private:
  FSequence(PairPotential p, TailOptions opts) : potential_(std::move(p)), opts_(opts) {}

  PairPotential potential_;
  TailOptions opts_;
};

/// Berbee log-rbar from a variation profile alone (index as above).
Interval berbee_log_rbar(const VariationProfile& profile, long index);

}  // namespace gibbs
