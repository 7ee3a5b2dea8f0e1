#include "gibbs/dynamics.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "gibbs/errors.hpp"
#include "gibbs/kernel.hpp"

namespace gibbs {

namespace rng {

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t draw(std::uint64_t seed, std::uint64_t chain, std::uint64_t site) noexcept {
  const std::uint64_t key = mix(seed + 0x9E3779B97F4A7C15ULL * (chain + 1));
  return mix(key ^ (0xD1B54A32D192ED03ULL * (site + 1)));
}

double uniform(std::uint64_t seed, std::uint64_t chain, std::uint64_t site) noexcept {
  return static_cast<double>(draw(seed, chain, site) >> 11) * 0x1p-53;
}

}  // namespace rng

GFunction GFunction::exact_markov(const PairPotential& p, const Alphabet& alphabet) {
  const MarkovG g = g_exact_markov(p, alphabet);
  const std::size_t S = alphabet.size();
  std::vector<double> table(g.states() * S);
  for (std::size_t st = 0; st < g.states(); ++st) std::copy(g.row(st), g.row(st) + S, table.begin() + st * S);
  return GFunction(g.range(), alphabet, std::move(table), "exact_markov");
}

GFunction GFunction::window(const PairPotential& p, long n, int right_letter, const Alphabet& alphabet) {
  const FiniteModel model(p, alphabet);
  const long R = model.range();
  const std::size_t S = alphabet.size(), ns = model.states();
  if (ns > guards::transfer_states) throw GuardViolation("transfer_states", "|S|^R too large for a tabulated g");
  alphabet.index_of(right_letter);
  Word x = Word::constant(-R, n + 2 * R + 1, right_letter);
  std::vector<double> table(ns * S);
  for (std::size_t st = 0; st < ns; ++st) {
    std::size_t rest = st;
    for (long d = 1; d <= R; ++d) {
      x.set(-d, alphabet.values[rest % S]);
      rest /= S;
    }
    const auto law = pi_window_law(model, x, n);
    std::copy(law.begin(), law.end(), table.begin() + st * S);
  }
  return GFunction(R, alphabet, std::move(table), "pi_window(" + std::to_string(n) + ")");
}

std::size_t GFunction::state_of(const Word& past) const { return block_index(past, 0, R_, alphabet_); }

namespace {

std::size_t pick(const double* mass, std::size_t S, double u) {
  double cum = 0.0;
  std::size_t last = S - 1;
  for (std::size_t c = 0; c < S; ++c) {
    if (mass[c] <= 0.0) continue;
    last = c;
    cum += mass[c];
    if (u < cum) return c;
  }
  return last;  // u landed in rounding slack at the top
}

void check_past(const GFunction& g, const Word& past) {
  if (!past.covers(-g.memory(), -1))
    throw CoverageError("past " + past.str() + " must cover the dependency window [" + std::to_string(-g.memory()) + ", -1]");
}

}  // namespace

ChainRun sample_chain(const GFunction& g, const Word& past, long N, std::uint64_t seed, std::uint64_t chain) {
  if (N < 0) throw std::invalid_argument("sample_chain: N must be >= 0");
  check_past(g, past);
  const std::size_t S = g.alphabet().size();
  ChainRun run{seed, chain, past, {}, g.source()};
  run.samples.reserve(static_cast<std::size_t>(N));
  std::size_t state = g.state_of(past);
  for (long t = 0; t < N; ++t) {
    const double u = rng::uniform(seed, chain, static_cast<std::uint64_t>(t));
    const std::size_t c = pick(g.law(state), S, u);
    run.samples.push_back(g.alphabet().values[c]);
    state = g.shift(state, c);
  }
  return run;
}

CouplingRun couple_two_pasts(const GFunction& g, const Word& past_a, const Word& past_b, long N, std::uint64_t seed) {
  if (N < 0) throw std::invalid_argument("couple_two_pasts: N must be >= 0");
  check_past(g, past_a);
  check_past(g, past_b);
  const std::size_t S = g.alphabet().size();
  CouplingRun run;
  run.a = ChainRun{seed, 0, past_a, {}, g.source()};
  run.b = ChainRun{seed, 0, past_b, {}, g.source()};
  std::size_t sa = g.state_of(past_a), sb = g.state_of(past_b);
  std::vector<double> common(S), ra(S), rb(S);
  run.coalescence = N;
  bool agreeing = false;
  for (long t = 0; t < N; ++t) {
    const double* pa = g.law(sa);
    const double* pb = g.law(sb);
    double w = 0.0;
    for (std::size_t c = 0; c < S; ++c) {
      common[c] = std::min(pa[c], pb[c]);
      ra[c] = pa[c] - common[c];
      rb[c] = pb[c] - common[c];
      w += common[c];
    }
    const double u = rng::uniform(seed, 0, static_cast<std::uint64_t>(t));
    std::size_t ca, cb;
    if (u < w) {
      ca = cb = pick(common.data(), S, u);
    } else {
      ca = pick(ra.data(), S, u - w);
      cb = pick(rb.data(), S, u - w);
    }
    run.a.samples.push_back(g.alphabet().values[ca]);
    run.b.samples.push_back(g.alphabet().values[cb]);
    const bool differ = ca != cb;
    run.disagree.push_back(differ ? 1 : 0);
    run.tv.push_back(std::max(0.0, 1.0 - w));
    if (differ) agreeing = false;
    else if (!agreeing) {
      agreeing = true;
      run.coalescence = t;
    }
    sa = g.shift(sa, ca);
    sb = g.shift(sb, cb);
  }
  if (!agreeing) run.coalescence = N;
  return run;
}

std::vector<double> CouplingRun::block_density(long blocks) const {
  if (blocks < 1) throw std::invalid_argument("block_density: blocks must be >= 1");
  const long N = static_cast<long>(disagree.size());
  std::vector<double> out(static_cast<std::size_t>(blocks), 0.0);
  for (long b = 0; b < blocks; ++b) {
    const long lo = N * b / blocks, hi = N * (b + 1) / blocks;
    long count = 0;
    for (long t = lo; t < hi; ++t) count += disagree[t];
    out[b] = hi > lo ? static_cast<double>(count) / static_cast<double>(hi - lo) : 0.0;
  }
  return out;
}

void write_coupling_csv(std::ostream& os, const CouplingRun& run) {
  char buf[64];
  os << "site,letter_a,letter_b,disagree,tv\n";
  for (std::size_t t = 0; t < run.disagree.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", run.tv[t]);
    os << t << ',' << run.a.samples[t] << ',' << run.b.samples[t] << ',' << int(run.disagree[t]) << ',' << buf << '\n';
  }
}

void write_chain_csv(std::ostream& os, const ChainRun& run) {
  os << "site,letter\n";
  for (std::size_t t = 0; t < run.samples.size(); ++t) os << t << ',' << run.samples[t] << '\n';
}

}  // namespace gibbs
