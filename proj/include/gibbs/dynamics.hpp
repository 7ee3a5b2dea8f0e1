#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gibbs/potential.hpp"
#include "gibbs/word.hpp"

namespace gibbs {

/// Counter-based random numbers: the value at (seed, chain, site) is a pure
/// function of the triple, so coupled chains and replays never share state.
///
///   mix(z)  = SplitMix64 finalizer:
///             z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///             z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///             z ^ (z >> 31)
///   key     = mix(seed + 0x9E3779B97F4A7C15 * (chain + 1))
///   draw    = mix(key ^ (0xD1B54A32D192ED03 * (site + 1)))
///   uniform = (draw >> 11) * 2^-53
///
/// All arithmetic is modulo 2^64.
namespace rng {
std::uint64_t mix(std::uint64_t z) noexcept;
std::uint64_t draw(std::uint64_t seed, std::uint64_t chain, std::uint64_t site) noexcept;
double uniform(std::uint64_t seed, std::uint64_t chain, std::uint64_t site) noexcept;
}  // namespace rng

/// A g-function with finite memory R, tabulated over the |S|^R pasts.
class GFunction {
 public:
  /// The exact R-step Markov conditional from the Perron data.
  static GFunction exact_markov(const PairPotential& p, const Alphabet& alphabet = Alphabet::spins());
  /// pi_{[0,n]}([s]_0 | past) with every right boundary site set to `right_letter`.
  static GFunction window(const PairPotential& p, long n, int right_letter = 1, const Alphabet& alphabet = Alphabet::spins());

  long memory() const noexcept { return R_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t states() const noexcept { return table_.size() / alphabet_.size(); }
  /// Conditional law for block index `state` (digit d = letter at site t-d).
  const double* law(std::size_t state) const { return &table_[state * alphabet_.size()]; }
  std::size_t shift(std::size_t state, std::size_t c) const noexcept { return (state * alphabet_.size() + c) % states(); }
  /// Block index of the last R letters of `past`, which must cover [-R, -1].
  std::size_t state_of(const Word& past) const;

 private:
  GFunction(long R, Alphabet a, std::vector<double> table, std::string source)
      : R_(R), alphabet_(std::move(a)), table_(std::move(table)), source_(std::move(source)) {}
  long R_;
  Alphabet alphabet_;
  std::vector<double> table_;
  std::string source_;
};

struct ChainRun {
  std::uint64_t seed = 0;
  std::uint64_t chain = 0;
  Word past;
  /// Letters on sites 0..N-1.
  std::vector<int> samples;
  std::string g_source;
};

ChainRun sample_chain(const GFunction& g, const Word& past, long N, std::uint64_t seed, std::uint64_t chain = 0);

struct CouplingRun {
  ChainRun a;
  ChainRun b;
  std::vector<std::uint8_t> disagree;
  /// Total-variation distance of the two conditional laws at each site.
  std::vector<double> tv;
  /// First site from which the chains agree forever (N if never).
  long coalescence = 0;

  /// Mean disagreement over `blocks` equal consecutive blocks.
  std::vector<double> block_density(long blocks) const;
};

/// Both chains read one uniform per site and use it through a maximal
/// coupling: with probability sum_s min(p_a(s), p_b(s)) they take a common
/// letter, otherwise letters from the disjoint residual laws.
CouplingRun couple_two_pasts(const GFunction& g, const Word& past_a, const Word& past_b, long N, std::uint64_t seed);

/// CSV with header site,letter_a,letter_b,disagree,tv.
void write_coupling_csv(std::ostream& os, const CouplingRun& run);
/// CSV with header site,letter.
void write_chain_csv(std::ostream& os, const ChainRun& run);

}  // namespace gibbs
