#include "gibbs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gibbs/errors.hpp"
#include "gibbs/simd/kernels.hpp"

namespace gibbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t ipow(std::size_t base, long exp, std::size_t cap) {
  std::size_t r = 1;
  for (long i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::size_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

void require_cover(const Word& w, long a, long b, const char* what) {
  if (!w.covers(a, b))
    throw CoverageError(std::string(what) + ": word " + w.str() + " must cover [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
}

double log_sum_exp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// Per-state field sum_d (beta/2) J(d) x_{t-d} and the one-letter weights.
struct StepTable {
  std::size_t S, ns;
  std::vector<double> field;
  std::vector<double> weight;  // [state * S + c]

  explicit StepTable(const FiniteModel& m) : S(m.letters()), ns(m.states()) {
    field.assign(ns, 0.0);
    weight.assign(ns * S, 0.0);
    for (std::size_t st = 0; st < ns; ++st) {
      std::size_t rest = st;
      double h = 0.0;
      for (long d = 1; d <= m.range(); ++d) {
        h += m.half_coupling(d) * m.alphabet().values[rest % S];
        rest /= S;
      }
      field[st] = h;
      for (std::size_t c = 0; c < S; ++c) weight[st * S + c] = std::exp(m.alphabet().values[c] * h);
    }
  }
  std::size_t shift(std::size_t st, std::size_t c) const { return (st * S + c) % ns; }
};

std::size_t digit(std::size_t st, long d, std::size_t S) {
  for (long i = 1; i < d; ++i) st /= S;
  return st % S;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteModel

FiniteModel::FiniteModel(const PairPotential& p, Alphabet alphabet) : alphabet_(std::move(alphabet)) {
  if (alphabet_.size() < 2) throw std::invalid_argument("FiniteModel: alphabet needs at least two letters");
  const auto r = p.range();
  if (!r) throw std::invalid_argument("FiniteModel: potential has infinite range; truncate it first");
  nominal_R_ = *r;
  R_ = std::max<long>(1, *r);
  half_.assign(static_cast<std::size_t>(R_) + 1, 0.0);
  if (!p.is_zero())
    for (long d = 1; d <= R_; ++d) half_[d] = p.beta() / 2.0 * p.coupling_at(d);
  states_ = ipow(alphabet_.size(), R_, std::numeric_limits<std::size_t>::max() / 4);
}

double FiniteModel::half_coupling(long d) const noexcept { return d >= 1 && d <= R_ ? half_[d] : 0.0; }

double FiniteModel::log_weight(const Word& x, long lo, long hi) const {
  require_cover(x, lo - R_, hi + R_, "log_weight");
  double s = 0.0;
  for (long a = lo - R_; a <= hi; ++a) {
    for (long d = 1; d <= R_; ++d) {
      const long b = a + d;
      const bool meets = (a >= lo && a <= hi) || (b >= lo && b <= hi);
      if (meets) s += half_[d] * x.at(a) * x.at(b);
    }
  }
  return s;
}

double FiniteModel::log_f(long i, const Word& x) const {
  const double xi = x.at(i);
  double s = 0.0;
  for (long j = 1; j <= R_; ++j) s += half_[j] * xi * x.at(i + j);
  for (long j = i + 1; j <= R_; ++j) s += half_[j] * xi * x.at(i - j);
  return s;
}

std::size_t block_index(const Word& x, long t, long R, const Alphabet& alphabet) {
  std::size_t idx = 0, scale = 1;
  for (long d = 1; d <= R; ++d) {
    idx += alphabet.index_of(x.at(t - d)) * scale;
    scale *= alphabet.size();
  }
  return idx;
}

// ---------------------------------------------------------------------------
// Window kernels

double log_partition(const FiniteModel& model, const Word& boundary, long lo, long hi, const std::vector<int>& fixed) {
  if (hi < lo) throw std::invalid_argument("log_partition: empty window");
  if (model.states() > guards::transfer_states)
    throw GuardViolation("transfer_states", "|S|^R = " + std::to_string(model.states()) + " exceeds " +
                                                std::to_string(guards::transfer_states));
  const long R = model.range();
  require_cover(boundary, lo - R, hi + R, "log_partition");
  const StepTable st(model);
  const std::size_t S = st.S;
  const auto& vals = model.alphabet().values;

  std::vector<double> msg(st.ns, 0.0), next(st.ns);
  msg[block_index(boundary, lo, R, model.alphabet())] = 1.0;
  double log_scale = 0.0;

  auto renormalize = [&]() {
    const double m = *std::max_element(msg.begin(), msg.end());
    if (m == 0.0) return false;
    for (double& v : msg) v /= m;
    log_scale += std::log(m);
    return true;
  };

  for (long t = lo; t <= hi; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::size_t pos = static_cast<std::size_t>(t - lo);
    const int pin = pos < fixed.size() ? fixed[pos] : -1;
    for (std::size_t s = 0; s < st.ns; ++s) {
      const double m = msg[s];
      if (m == 0.0) continue;
      if (pin >= 0) {
        next[st.shift(s, pin)] += m * st.weight[s * S + pin];
      } else {
        for (std::size_t c = 0; c < S; ++c) next[st.shift(s, c)] += m * st.weight[s * S + c];
      }
    }
    msg.swap(next);
    if (!renormalize()) return -kInf;
  }
  // Right boundary: only pairs whose left end lies inside the window.
  for (long t = hi + 1; t <= hi + R; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::size_t c = model.alphabet().index_of(boundary.at(t));
    const long d_lo = t - hi, d_hi = std::min(R, t - lo);
    for (std::size_t s = 0; s < st.ns; ++s) {
      const double m = msg[s];
      if (m == 0.0) continue;
      double h = 0.0;
      for (long d = d_lo; d <= d_hi; ++d) h += model.half_coupling(d) * vals[digit(s, d, S)];
      next[st.shift(s, c)] += m * std::exp(vals[c] * h);
    }
    msg.swap(next);
    if (!renormalize()) return -kInf;
  }
  return log_scale + std::log(std::accumulate(msg.begin(), msg.end(), 0.0));
}

std::vector<double> pi_window_law(const FiniteModel& model, const Word& boundary, long n) {
  if (n < 0) throw std::invalid_argument("pi_window: n must be >= 0");
  std::vector<double> logs(model.letters());
  std::vector<int> fixed(1);
  for (std::size_t s = 0; s < model.letters(); ++s) {
    fixed[0] = static_cast<int>(s);
    logs[s] = log_partition(model, boundary, 0, n, fixed);
  }
  const double lz = log_sum_exp(logs);
  std::vector<double> law(logs.size());
  for (std::size_t s = 0; s < logs.size(); ++s) law[s] = std::exp(logs[s] - lz);
  return law;
}

KernelResult pi_window_at_zero(const PairPotential& p, const Word& boundary, long n, int s, const Alphabet& alphabet) {
  const FiniteModel model(p, alphabet);
  const std::size_t idx = alphabet.index_of(s);
  const auto law = pi_window_law(model, boundary, n);
  return KernelResult{law[idx], -model.range(), n + model.range()};
}

namespace {

// log weights of every interior on [0, n], indexed by the base-|S| number
// whose digit p is the letter index at site p.
std::vector<double> enumerate_interiors(const FiniteModel& model, const Word& boundary, long n) {
  const long R = model.range();
  require_cover(boundary, -R, n + R, "window enumeration");
  const std::size_t S = model.letters();
  const std::size_t count = ipow(S, n + 1, std::size_t{1} << 40);
  Word x = boundary;
  std::vector<double> out(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (long site = 0; site <= n; ++site) {
      x.set(site, model.alphabet().values[rest % S]);
      rest /= S;
    }
    out[idx] = model.log_weight(x, 0, n);
  }
  return out;
}

}  // namespace

KernelResult pi_window_enumerate(const PairPotential& p, const Word& boundary, long n, int s, const Alphabet& alphabet) {
  if (n < 0) throw std::invalid_argument("pi_window_enumerate: n must be >= 0");
  if (n > guards::raw_window)
    throw GuardViolation("raw_window", "n = " + std::to_string(n) + " exceeds " + std::to_string(guards::raw_window));
  const FiniteModel model(p, alphabet);
  const auto logs = enumerate_interiors(model, boundary, n);
  const std::size_t S = model.letters(), target = alphabet.index_of(s);
  std::vector<double> hit;
  hit.reserve(logs.size() / S);
  for (std::size_t idx = 0; idx < logs.size(); ++idx)
    if (idx % S == target) hit.push_back(logs[idx]);
  return KernelResult{std::exp(log_sum_exp(hit) - log_sum_exp(logs)), -model.range(), n + model.range()};
}

double phi_window(const PairPotential& p, const Word& boundary, long n, const Word& interior, const Alphabet& alphabet) {
  if (n < 0) throw std::invalid_argument("phi_window: n must be >= 0");
  if (n > guards::phi_window)
    throw GuardViolation("phi_window", "n = " + std::to_string(n) + " exceeds " + std::to_string(guards::phi_window));
  require_cover(interior, 0, n, "phi_window interior");
  const FiniteModel model(p, alphabet);
  const auto logs = enumerate_interiors(model, boundary, n);
  Word x = boundary;
  for (long site = 0; site <= n; ++site) x.set(site, interior.at(site));
  return std::exp(model.log_weight(x, 0, n) - log_sum_exp(logs));
}

// ---------------------------------------------------------------------------
// Transfer matrix

TransferMatrix::TransferMatrix(const FiniteModel& model) : model_(model), n_(model.states()) {
  if (n_ > guards::perron_states)
    throw GuardViolation("perron_states", "|S|^R = " + std::to_string(n_) + " exceeds " + std::to_string(guards::perron_states));
  const StepTable st(model_);
  field_ = st.field;
  const std::size_t S = st.S;
  const long R = model_.range();
  const auto& vals = model_.alphabet().values;

  // B(a, b): append the R letters of b, oldest first.
  B_.assign(n_ * n_, 0.0);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      std::size_t s = a;
      double lw = 0.0;
      for (long i = 0; i < R; ++i) {
        const std::size_t c = digit(b, R - i, S);
        lw += vals[c] * st.field[s];
        s = st.shift(s, c);
      }
      B_[a * n_ + b] = std::exp(lw);
    }
  }

  std::vector<double> Bt(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) Bt[b * n_ + a] = B_[a * n_ + b];

  auto perron = [this](const std::vector<double>& M, std::vector<double>& v) {
    v.assign(n_, 1.0);
    std::vector<double> y(n_);
    double lam = 0.0;
    for (int it = 0; it < 100000; ++it) {
      simd::matvec(M, v, y);
      lam = *std::max_element(y.begin(), y.end());
      double change = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double nv = y[i] / lam;
        change = std::max(change, std::fabs(nv - v[i]));
        v[i] = nv;
      }
      if (change <= 1e-16) break;
    }
    return lam;
  };
  lambda_B_ = perron(B_, r_);
  perron(Bt, l_);

  std::vector<double> y(n_);
  simd::matvec(B_, r_, y);
  residual_ = 0.0;
  for (std::size_t i = 0; i < n_; ++i) residual_ = std::max(residual_, std::fabs(y[i] - lambda_B_ * r_[i]) / lambda_B_);

  const double lr = std::inner_product(l_.begin(), l_.end(), r_.begin(), 0.0);
  for (double& v : l_) v /= lr;
  lambda_D_ = std::pow(lambda_B_, 1.0 / static_cast<double>(R));
}

std::size_t TransferMatrix::shift(std::size_t state, std::size_t c) const noexcept {
  return (state * model_.letters() + c) % n_;
}

double TransferMatrix::step_weight(std::size_t state, std::size_t c) const {
  return std::exp(model_.alphabet().values.at(c) * field_.at(state));
}

std::vector<double> TransferMatrix::stationary() const {
  std::vector<double> mu(n_);
  double total = 0.0;
  for (std::size_t i = 0; i < n_; ++i) total += mu[i] = l_[i] * r_[i];
  for (double& v : mu) v /= total;
  return mu;
}

MarkovG::MarkovG(const TransferMatrix& tm)
    : R_(tm.model().range()), alphabet_(tm.model().alphabet()), residual_(tm.residual()) {
  const std::size_t S = alphabet_.size(), ns = tm.size();
  table_.assign(ns * S, 0.0);
  for (std::size_t a = 0; a < ns; ++a) {
    double total = 0.0;
    for (std::size_t c = 0; c < S; ++c) total += table_[a * S + c] = tm.step_weight(a, c) * tm.right()[tm.shift(a, c)];
    for (std::size_t c = 0; c < S; ++c) table_[a * S + c] /= total;
  }
}

double MarkovG::operator()(const Word& past, int letter) const {
  return row(block_index(past, 0, R_, alphabet_))[alphabet_.index_of(letter)];
}

MarkovG g_exact_markov(const PairPotential& p, const Alphabet& alphabet) {
  return MarkovG(TransferMatrix(FiniteModel(p, alphabet)));
}

// ---------------------------------------------------------------------------
// L operators and rho

double apply_L(const FSequence& F, long m, long n, const std::function<double(const Word&)>& f, const Word& x,
               const Alphabet& alphabet) {
  if (m < 0 || n < m) throw std::invalid_argument("apply_L: need 0 <= m <= n");
  if (n - m > guards::apply_L)
    throw GuardViolation("apply_L", "n - m = " + std::to_string(n - m) + " exceeds " + std::to_string(guards::apply_L));
  const FiniteModel model(F.source(), alphabet);
  const long R = model.range();
  require_cover(x, m - R, n + R, "apply_L");
  const std::size_t S = model.letters();
  const std::size_t count = ipow(S, n - m + 1, std::size_t{1} << 40);
  Word y = x;
  double total = 0.0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (long site = m; site <= n; ++site) {
      y.set(site, alphabet.values[rest % S]);
      rest /= S;
    }
    double lw = 0.0;
    for (long i = m; i <= n; ++i) lw += model.log_f(i, y);
    total += std::exp(lw) * f(y);
  }
  return total;
}

double rho_bruteforce(const FSequence& F, long k, long n, const Word& x, const Word& y, const std::vector<long>& m_grid,
                      const Alphabet& alphabet) {
  if (n < 0 || k < -1 || k > n) throw std::invalid_argument("rho_bruteforce: need -1 <= k <= n");
  if (n > guards::rho_window)
    throw GuardViolation("rho_window", "n = " + std::to_string(n) + " exceeds " + std::to_string(guards::rho_window));
  if (m_grid.empty()) throw std::invalid_argument("rho_bruteforce: empty m grid");
  const FiniteModel model(F.source(), alphabet);
  const long R = model.range();
  const std::size_t S = model.letters();
  const std::size_t count = ipow(S, n + 1, std::size_t{1} << 40);
  const std::size_t buckets = k < 0 ? 1 : ipow(S, k + 1, count);

  double best = kInf;
  for (long m : m_grid) {
    if (m < 0) throw std::invalid_argument("rho_bruteforce: m must be >= 0");
    require_cover(x, m - R, m + n + R, "rho_bruteforce x");
    require_cover(y, m - R, m + n + R, "rho_bruteforce y");
    std::vector<double> Lx(buckets, 0.0), Ly(buckets, 0.0);
    Word wx = x, wy = y;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (long site = m; site <= m + n; ++site) {
        const int letter = alphabet.values[rest % S];
        wx.set(site, letter);
        wy.set(site, letter);
        rest /= S;
      }
      double lx = 0.0, ly = 0.0;
      for (long i = m; i <= m + n; ++i) {
        lx += model.log_f(i, wx);
        ly += model.log_f(i, wy);
      }
      const std::size_t b = idx % buckets;
      Lx[b] += std::exp(lx);
      Ly[b] += std::exp(ly);
    }
    for (std::size_t b = 0; b < buckets; ++b) best = std::min(best, Lx[b] / Ly[b]);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Dobrushin

DobrushinResult dobrushin_sum(const PairPotential& p, long truncation) {
  DobrushinResult res;
  res.reading =
      "sum over s in {-1,+1} and j != 0 of sup |phi_{0}(x) - phi_{0}(y)| with x, y differing only at j and "
      "x_0 = y_0 = s; per flipped site this is tanh(h + a) - tanh(h - a), a = (beta/2) J(|j|), maximized over the "
      "field h of the other sites";
  const auto r = p.range();
  res.truncated = !r.has_value();
  const long R = r ? *r : truncation;
  if (R < 0 || (!r && truncation < 1)) throw std::invalid_argument("dobrushin_sum: truncation must be >= 1");
  if (R > guards::dobrushin_range)
    throw GuardViolation("dobrushin_range", "range " + std::to_string(R) + " exceeds " + std::to_string(guards::dobrushin_range));
  res.range = R;
  if (p.is_zero() || R == 0) {
    res.near = res.total = Interval(0.0);
    return res;
  }

  std::vector<double> a(static_cast<std::size_t>(R) + 1, 0.0);
  for (long d = 1; d <= R; ++d) a[d] = p.beta() / 2.0 * p.coupling_at(d);
  double far_field = 0.0;
  if (res.truncated) {
    const Interval t = tail_variation(p, R + 1);
    far_field = t.hi();             // sum over far sites of (beta/2) J, both sides
    res.far_slack = add_up(t.hi(), t.hi());  // each far site contributes at most beta J
  }

  res.per_distance.assign(static_cast<std::size_t>(R), 0.0);
  double near = 0.0;
  for (long d = 1; d <= R; ++d) {
    std::vector<double> others;
    for (long e = 1; e <= R; ++e) {
      others.push_back(a[e]);
      if (e != d) others.push_back(a[e]);
    }
    // min over sign patterns of |sum others|, meet in the middle
    const std::size_t half = others.size() / 2;
    auto signed_sums = [&](std::size_t from, std::size_t to) {
      const std::size_t k = to - from;
      std::vector<double> sums(std::size_t{1} << k);
      for (std::size_t mask = 0; mask < sums.size(); ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += ((mask >> i) & 1u) ? others[from + i] : -others[from + i];
        sums[mask] = s;
      }
      return sums;
    };
    const auto left = signed_sums(0, half);
    auto right = signed_sums(half, others.size());
    std::sort(right.begin(), right.end());
    double min_abs = kInf;
    for (double s : left) {
      auto it = std::lower_bound(right.begin(), right.end(), -s);
      if (it != right.end()) min_abs = std::min(min_abs, std::fabs(s + *it));
      if (it != right.begin()) min_abs = std::min(min_abs, std::fabs(s + *std::prev(it)));
    }
    const double h = std::max(0.0, min_abs - far_field);
    const double contrib = std::tanh(h + a[d]) - std::tanh(h - a[d]);
    res.per_distance[d - 1] = contrib;
    near += 2.0 * contrib;
  }
  res.near_value = near;
  const double radius = 16.0 * static_cast<double>(2 * R) * std::numeric_limits<double>::epsilon() * std::max(1.0, near);
  res.near = Interval::around(near, radius);
  res.total = res.near + Interval(res.far_slack);
  return res;
}

// ---------------------------------------------------------------------------
// Empirical g variation and Cesaro averages

double empirical_g_variation(const PairPotential& p, long m, long n, const Alphabet& alphabet) {
  if (m < 0 || n < 0) throw std::invalid_argument("empirical_g_variation: m, n must be >= 0");
  const FiniteModel model(p, alphabet);
  const long R = model.range();
  if (m >= R) return 0.0;  // both left boundaries coincide on [-R, -1]
  const std::size_t S = model.letters();
  const std::size_t far_count = ipow(S, R - m, guards::boundary_pairs);
  const std::size_t shared_count = ipow(S, m, guards::boundary_pairs);
  const std::size_t right_count = ipow(S, R, guards::boundary_pairs);
  if (far_count * shared_count * right_count > guards::boundary_pairs)
    throw GuardViolation("boundary_pairs", "|S|^(2R) boundary words exceed " + std::to_string(guards::boundary_pairs));

  Word x = Word::constant(-R, n + 2 * R + 1, alphabet.values[0]);
  auto fill = [&](long first, long len, std::size_t idx) {
    for (long i = 0; i < len; ++i) {
      x.set(first + i, alphabet.values[idx % S]);
      idx /= S;
    }
  };

  double worst = 0.0;
  std::vector<double> lo(S), hi(S);
  for (std::size_t shared = 0; shared < shared_count; ++shared) {
    fill(-m, m, shared);
    for (std::size_t right = 0; right < right_count; ++right) {
      fill(n + 1, R, right);
      std::fill(lo.begin(), lo.end(), kInf);
      std::fill(hi.begin(), hi.end(), 0.0);
      for (std::size_t far = 0; far < far_count; ++far) {
        fill(-R, R - m, far);
        const auto law = pi_window_law(model, x, n);
        for (std::size_t s = 0; s < S; ++s) {
          lo[s] = std::min(lo[s], law[s]);
          hi[s] = std::max(hi[s], law[s]);
        }
      }
      for (std::size_t s = 0; s < S; ++s) worst = std::max(worst, std::log(hi[s] / lo[s]));
    }
  }
  return worst;
}

double cesaro_estimate(const PairPotential& p, const Word& zeta, long n, const Word& boundary, const Alphabet& alphabet) {
  if (n < 1) throw std::invalid_argument("cesaro_estimate: n must be >= 1");
  if (zeta.letters.empty()) return 1.0;
  const FiniteModel model(p, alphabet);
  const double lz = log_partition(model, boundary, 0, n - 1);
  double total = 0.0;
  std::vector<int> fixed(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    std::fill(fixed.begin(), fixed.end(), -1);
    bool possible = true;
    for (long q = 0; q < zeta.length(); ++q) {
      const long site = zeta.offset + q + i;
      const int letter = zeta.letters[q];
      if (site >= 0 && site <= n - 1) {
        fixed[site] = static_cast<int>(alphabet.index_of(letter));
      } else if (boundary.at(site) != letter) {
        possible = false;
        break;
      }
    }
    if (possible) total += std::exp(log_partition(model, boundary, 0, n - 1, fixed) - lz);
  }
  return total / static_cast<double>(n);
}

double cesaro_gap(const PairPotential& p, const Word& zeta, long n, const Word& boundary_a, const Word& boundary_b,
                  const Alphabet& alphabet) {
  return std::fabs(cesaro_estimate(p, zeta, n, boundary_a, alphabet) - cesaro_estimate(p, zeta, n, boundary_b, alphabet));
}

}  // namespace gibbs
