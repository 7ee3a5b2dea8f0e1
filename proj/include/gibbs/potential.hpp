#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gibbs/interval.hpp"
#include "gibbs/profile.hpp"
#include "gibbs/verdict.hpp"

namespace gibbs {

/// Knobs for infinite tail enclosures.
struct TailOptions {
  /// Target relative width of a tail enclosure; the partial-sum cutoff M is
  /// chosen so that the integral remainder alone stays under it.
  double rel_width = 1e-10;
  long max_cutoff = 400'000'000;
};

/// Non-negative coupling magnitudes J(n), n >= 1.
class CouplingLaw {
 public:
  enum class Kind { power_law, finite_table, exponential };

  /// J(n) = amplitude * n^{-q}; q > 1.
  static CouplingLaw power_law(double q, double amplitude = 1.0);
  /// J(n) = values[n-1], zero beyond the table.
  static CouplingLaw finite_table(std::vector<double> values);
  /// J(n) = amplitude * exp(-rate n); rate > 0.
  static CouplingLaw exponential(double rate, double amplitude = 1.0);

  Kind kind() const noexcept { return kind_; }
  double q() const noexcept { return q_; }
  double amplitude() const noexcept { return amplitude_; }
  double rate() const noexcept { return rate_; }
  const std::vector<double>& table() const noexcept { return table_; }

  double value(long n) const;
  Interval value_enclosure(long n) const;
  bool is_zero() const noexcept;
  /// Largest n with J(n) != 0 for tables; nullopt for infinite families.
  std::optional<long> natural_range() const;

 private:
  Kind kind_ = Kind::finite_table;
  double q_ = 0.0;
  double amplitude_ = 0.0;
  double rate_ = 0.0;
  std::vector<double> table_;
};

/// Ising-type pair potential Phi_{i,j}(x) = -(beta/2) J(|i-j|) x_i x_j on
/// spins x in {-1, +1}.
class PairPotential {
 public:
  PairPotential(CouplingLaw coupling, double beta, std::optional<long> truncation_range = std::nullopt);

  const CouplingLaw& coupling() const noexcept { return coupling_; }
  double beta() const noexcept { return beta_; }
  std::optional<long> truncation_range() const noexcept { return truncation_; }

  /// Finite interaction range (0 for the zero potential), nullopt if infinite.
  std::optional<long> range() const;
  bool is_zero() const noexcept;

  /// J(n) with truncation applied.
  double coupling_at(long n) const;
  Interval coupling_enclosure(long n) const;
  /// Sum over j >= n of J(j), truncation applied.
  Interval coupling_tail(long n, const TailOptions& opts = {}) const;
  /// Sum over j >= 1 of j J(j), or nullopt when it provably diverges.
  std::optional<Interval> coupling_moment(const TailOptions& opts = {}) const;

  /// Phi_{{i,j}} evaluated on letter values xi, xj.
  double pair_energy(long distance, double xi, double xj) const;

  /// Envelope of n -> beta * sum_{j>=n} J(j).
  DecayEnvelope tail_envelope() const;

  /// Copy truncated to range R (a no-op range cap if already shorter).
  PairPotential truncated(long R) const;

 private:
  CouplingLaw coupling_;
  double beta_;
  std::optional<long> truncation_;
};

/// Enclosure of sum over j >= n of j^{-q} (q > 1, n >= 1).
Interval power_tail(double q, long n, const TailOptions& opts = {});
/// Enclosure of sum over a <= j <= b of j^{-q}.
Interval power_partial_sum(double q, long a, long b);

/// Sum over finite Lambda containing 0 and meeting [n, inf) of var(Phi_Lambda),
/// which for a pair potential is beta * sum_{j>=n} J(j).
Interval tail_variation(const PairPotential& p, long n, const TailOptions& opts = {});

/// Enclosures of beta * sum_{j>=m} J(j) for m = 1..m_max, built in one sweep.
class TailTable {
 public:
  TailTable() = default;
  TailTable(std::vector<Interval> values, DecayEnvelope envelope);
  /// m >= 1; values beyond the table come from the envelope-free direct path
  /// and throw std::out_of_range.
  Interval at(long m) const;
  long size() const noexcept { return static_cast<long>(values_.size()); }
  const DecayEnvelope& envelope() const noexcept { return envelope_; }

 private:
  std::vector<Interval> values_;
  DecayEnvelope envelope_;
};

TailTable variation_tail_table(const PairPotential& p, long m_max, const TailOptions& opts = {});

/// n -> tail_variation(p, n) together with its closed-form envelope.
class VariationProfile {
 public:
  explicit VariationProfile(DecayProfile profile, std::function<TailTable(long)> table_builder = {})
      : profile_(std::move(profile)), table_builder_(std::move(table_builder)) {}
  Interval at(long n) const { return profile_.at(n); }
  const DecayEnvelope& envelope() const noexcept { return profile_.envelope(); }
  const DecayProfile& profile() const noexcept { return profile_; }
  /// limsup n * at(n); hi = +inf when the family decays slower than 1/n.
  Interval asymptotic_slope() const { return profile_.envelope().limsup_scaled(1.0); }
  /// at(1..m_max), in one sweep when the source supports it.
  TailTable table(long m_max) const;

 private:
  DecayProfile profile_;
  std::function<TailTable(long)> table_builder_;
};

VariationProfile variation_profile(const PairPotential& p, const TailOptions& opts = {});

/// Sum over Lambda containing 0 of diam(Lambda) ||Phi_Lambda||.
Verdict ruelle_sum(const PairPotential& p, const TailOptions& opts = {});
/// Sum over Lambda with min Lambda = 0 of diam(Lambda) ||Phi_Lambda||.
Verdict coelho_quas_sum(const PairPotential& p, const TailOptions& opts = {});

}  // namespace gibbs
