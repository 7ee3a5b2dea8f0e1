#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "gibbs/fseq.hpp"
#include "gibbs/interval.hpp"
#include "gibbs/potential.hpp"
#include "gibbs/word.hpp"

// Exact finite-range computations.
//
// Weight convention, used by every function here: a configuration restricted
// to a window Lambda has weight exp(-H_Lambda) with
//
//   -H_Lambda(x) = sum over pairs {a, b} meeting Lambda, 0 < b - a <= R, of (beta/2) J(b-a) x_a x_b,
//
// each unordered pair counted once. The transfer matrix charges a pair to its
// right endpoint: appending letter c after the block (x_{t-R}, ..., x_{t-1})
// multiplies by exp(c * sum_d (beta/2) J(d) x_{t-d}).
namespace gibbs {

namespace guards {
/// Raw enumeration of window interiors (oracles, phi_window is one above).
inline constexpr long raw_window = 12;
inline constexpr long phi_window = 14;
/// n - m for L_{m,n}.
inline constexpr long apply_L = 14;
inline constexpr long rho_window = 6;
inline constexpr long dobrushin_range = 12;
/// |S|^R for transfer-matrix states.
inline constexpr std::size_t transfer_states = 4096;
/// |S|^R for dense Perron computations.
inline constexpr std::size_t perron_states = 1024;
/// |S|^(2R) boundary words in empirical_g_variation.
inline constexpr std::size_t boundary_pairs = std::size_t{1} << 20;
}  // namespace guards

/// A finite-range pair potential on an alphabet, in the form the kernels use.
class FiniteModel {
 public:
  /// Requires p.range(); a zero potential is treated as range 1 with J = 0.
  explicit FiniteModel(const PairPotential& p, Alphabet alphabet = Alphabet::spins());

  long range() const noexcept { return R_; }
  long nominal_range() const noexcept { return nominal_R_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t letters() const noexcept { return alphabet_.size(); }
  /// (beta/2) J(d) for 1 <= d <= R, else 0.
  double half_coupling(long d) const noexcept;
  /// |S|^R.
  std::size_t states() const noexcept { return states_; }

  /// Log weight of all pairs meeting [lo, hi]; x must cover [lo - R, hi + R].
  double log_weight(const Word& x, long lo, long hi) const;
  /// log f_i(x) of the potential's specification sequence.
  double log_f(long i, const Word& x) const;

 private:
  long R_ = 1;
  long nominal_R_ = 0;
  Alphabet alphabet_;
  std::vector<double> half_;
  std::size_t states_ = 1;
};

struct KernelResult {
  double value = 0.0;
  /// Sites actually consulted.
  long window_lo = 0;
  long window_hi = 0;
};

/// phi_{[0,n]}(interior | boundary) by explicit normalization over all
/// |S|^{n+1} interiors. boundary covers [-R, n+R] (its [0, n] part is ignored);
/// interior covers [0, n].
double phi_window(const PairPotential& p, const Word& boundary, long n, const Word& interior,
                  const Alphabet& alphabet = Alphabet::spins());

/// pi_{[0,n]}([s]_0 | boundary) by transfer-matrix contraction.
KernelResult pi_window_at_zero(const PairPotential& p, const Word& boundary, long n, int s,
                               const Alphabet& alphabet = Alphabet::spins());
/// The full law of site 0 (indexed like the alphabet).
std::vector<double> pi_window_law(const FiniteModel& model, const Word& boundary, long n);
/// Same quantity by raw enumeration of interiors (n <= guards::raw_window).
KernelResult pi_window_enumerate(const PairPotential& p, const Word& boundary, long n, int s,
                                 const Alphabet& alphabet = Alphabet::spins());

/// Constrained log partition function of the window [lo, hi]: sites in
/// `fixed` (keyed by site - lo, -1 = free) are pinned to a letter index.
double log_partition(const FiniteModel& model, const Word& boundary, long lo, long hi,
                     const std::vector<int>& fixed = {});

/// Dense R-step block transfer matrix B = D^R (all entries positive) and its
/// Perron data. D is the one-letter transfer operator on blocks of R letters.
class TransferMatrix {
 public:
  explicit TransferMatrix(const FiniteModel& model);

  const FiniteModel& model() const noexcept { return model_; }
  std::size_t size() const noexcept { return n_; }
  /// Row-major B.
  const std::vector<double>& block() const noexcept { return B_; }
  double block_lambda() const noexcept { return lambda_B_; }
  /// Perron root of D, lambda_B^{1/R}.
  double lambda() const noexcept { return lambda_D_; }
  /// Right and left Perron vectors (max-normalized right, <l, r> = 1).
  const std::vector<double>& right() const noexcept { return r_; }
  const std::vector<double>& left() const noexcept { return l_; }
  /// max |B r - lambda_B r| / lambda_B, with r max-normalized.
  double residual() const noexcept { return residual_; }

  /// Block index reached by appending letter index c.
  std::size_t shift(std::size_t state, std::size_t c) const noexcept;
  /// D(state, shift(state, c)).
  double step_weight(std::size_t state, std::size_t c) const;
  /// Stationary law of R-blocks, l(a) r(a).
  std::vector<double> stationary() const;

 private:
  FiniteModel model_;
  std::size_t n_;
  std::vector<double> B_;
  std::vector<double> field_;
  double lambda_B_ = 0.0;
  double lambda_D_ = 0.0;
  std::vector<double> r_;
  std::vector<double> l_;
  double residual_ = 0.0;
};

/// The R-step Markov conditional g(s | x_{-R..-1}) of a finite-range potential.
class MarkovG {
 public:
  explicit MarkovG(const TransferMatrix& tm);

  long range() const noexcept { return R_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  /// g(letter | past); past covers [-R, -1].
  double operator()(const Word& past, int letter) const;
  /// Row for block index `state` (block digit d = letter index at site -d).
  const double* row(std::size_t state) const { return &table_[state * alphabet_.size()]; }
  std::size_t states() const noexcept { return table_.size() / alphabet_.size(); }
  double eigen_residual() const noexcept { return residual_; }

 private:
  long R_;
  Alphabet alphabet_;
  std::vector<double> table_;
  double residual_;
};

MarkovG g_exact_markov(const PairPotential& p, const Alphabet& alphabet = Alphabet::spins());

/// Block index of the letters at sites t-1, ..., t-R of `x`.
std::size_t block_index(const Word& x, long t, long R, const Alphabet& alphabet);

/// L_{m,n} f(x) = sum over y agreeing with x off [m, n] of prod_{i=m}^n f_i(y) f(y).
/// Needs n - m <= guards::apply_L and x covering [m - R, n + R].
double apply_L(const FSequence& F, long m, long n, const std::function<double(const Word&)>& f, const Word& x,
               const Alphabet& alphabet = Alphabet::spins());

/// rho_k^{(n)}(x, y): infimum over m in m_grid and zeta in S^{[m, m+k]} of
/// L_{m,m+n} 1[zeta](x) / L_{m,m+n} 1[zeta](y). k = -1 uses f = 1.
double rho_bruteforce(const FSequence& F, long k, long n, const Word& x, const Word& y, const std::vector<long>& m_grid,
                      const Alphabet& alphabet = Alphabet::spins());

struct DobrushinResult {
  /// sup_i sum_s sum_{j != i} sup |phi_{i}(x) - phi_{i}(y)| over the sites
  /// within `range` of i (point value and rounding enclosure).
  double near_value = 0.0;
  Interval near;
  /// Upper bound for the sites beyond `range` (zero for finite range).
  double far_slack = 0.0;
  /// near + far slack.
  Interval total;
  long range = 0;
  bool truncated = false;
  /// Contribution of one flipped site at distance d = 1..range.
  std::vector<double> per_distance;
  std::string reading;
};

/// Dobrushin's single-site interdependence sum for a spin pair potential,
/// read literally (the sum over s counts both letters). Finite range is exact;
/// longer ranges are truncated at `truncation` with a far-field slack.
DobrushinResult dobrushin_sum(const PairPotential& p, long truncation = 8);

/// max over s and over pairs of left boundaries agreeing on [-m, -1] (the
/// right boundary shared) of log pi(s|x) / pi(s|y) on the window [0, n].
double empirical_g_variation(const PairPotential& p, long m, long n, const Alphabet& alphabet = Alphabet::spins());

/// n^{-1} sum_{i<n} pi_{[0,n-1]}(1[zeta] o T^i | boundary); zeta is a cylinder
/// word (empty means f = 1). boundary covers [-R, n-1+R].
double cesaro_estimate(const PairPotential& p, const Word& zeta, long n, const Word& boundary,
                       const Alphabet& alphabet = Alphabet::spins());
double cesaro_gap(const PairPotential& p, const Word& zeta, long n, const Word& boundary_a, const Word& boundary_b,
                  const Alphabet& alphabet = Alphabet::spins());

}  // namespace gibbs
