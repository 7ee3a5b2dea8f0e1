#include "gibbs/ratiobound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gibbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier accumulator.
struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) c += (sum - t) + x;
    else c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

void validate_v(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("v must be non-empty");
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(v[k] > 0.0 && v[k] <= 1.0))
      throw std::invalid_argument("v_" + std::to_string(k) + " must lie in (0, 1]");
    if (k > 0 && v[k] < v[k - 1]) throw std::invalid_argument("v must be non-decreasing (fails at k = " + std::to_string(k) + ")");
  }
}

RatioRecursion::RatioRecursion(std::vector<double> v) : v_(std::move(v)) {
  validate_v(v_);
  row_.assign(1, v_[0]);
}

void RatioRecursion::step() {
  const long n = n_ + 1;
  if (n >= static_cast<long>(v_.size()))
    throw std::out_of_range("RatioRecursion: v has no entry v_" + std::to_string(n));
  // suffix[k] = sum_{j=k}^{n-1} (v_{j+1} - v_j) p_j^{(n-1)}
  scratch_.assign(static_cast<std::size_t>(n) + 1, 0.0);
  Compensated acc;
  for (long j = n - 1; j >= 0; --j) {
    acc.add((v_[j + 1] - v_[j]) * row_[j]);
    scratch_[j] = acc.value();
  }
  std::vector<double> next(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    const double prev = k == 0 ? 1.0 : row_[k - 1];
    next[k] = v_[k] * prev + (k <= n - 1 ? scratch_[k] : 0.0);
  }
  row_.swap(next);
  n_ = n;
}

RatioTable::RatioTable(std::vector<double> v, long n_max, std::vector<std::vector<double>> rows, std::vector<double> p0)
    : v_(std::move(v)), n_max_(n_max), rows_(std::move(rows)), p0_(std::move(p0)) {}

double RatioTable::p(long k, long n) const {
  if (n < 0 || n > n_max_) throw std::out_of_range("RatioTable::p: n out of range");
  if (k < -1 || k > n) throw std::out_of_range("RatioTable::p: k out of range");
  if (k == -1) return 1.0;
  if (k == 0) return p0_[n];
  if (rows_.empty()) throw std::logic_error("RatioTable::p: full rows were not kept for this n_max");
  return rows_[n][k];
}

double RatioTable::limit_lower(long N) const { return rb_limit_lower_bound(v_, N); }

RatioTable rb_recursion(const std::vector<double>& v, long n_max, long full_rows_limit) {
  if (n_max < 0) throw std::invalid_argument("rb_recursion: n_max must be >= 0");
  if (static_cast<long>(v.size()) < n_max + 1)
    throw std::invalid_argument("rb_recursion: v needs n_max + 1 entries");
  RatioRecursion rec(std::vector<double>(v.begin(), v.begin() + n_max + 1));
  const bool keep = n_max <= full_rows_limit;
  std::vector<std::vector<double>> rows;
  std::vector<double> p0;
  p0.reserve(n_max + 1);
  p0.push_back(rec.p0());
  if (keep) rows.push_back(rec.row());
  for (long n = 1; n <= n_max; ++n) {
    rec.step();
    p0.push_back(rec.p0());
    if (keep) rows.push_back(rec.row());
  }
  return RatioTable(std::vector<double>(v.begin(), v.begin() + n_max + 1), n_max, std::move(rows), std::move(p0));
}

double rb_limit_lower_bound(const std::vector<double>& v, long N) {
  if (N < 0) throw std::invalid_argument("rb_limit_lower_bound: N must be >= 0");
  if (static_cast<long>(v.size()) < N + 1) throw std::invalid_argument("rb_limit_lower_bound: v needs N + 1 entries");
  validate_v(std::vector<double>(v.begin(), v.begin() + N + 1));
  Compensated s;
  double prod = 1.0;
  for (long k = 0; k <= N; ++k) {
    prod *= v[k];
    s.add(prod);
  }
  const double S = s.value();
  return S / (1.0 + S);
}

// ---------------------------------------------------------------------------

SeriesResult rn_series(const FSequence& F, long n, const SeriesOptions& opts) {
  if (n < 0) throw std::invalid_argument("rn_series: n must be >= 0");
  SeriesResult res;
  res.n = n;
  const PairPotential& p = F.source();
  std::ostringstream cert;
  cert.precision(17);

  if (p.is_zero()) {
    res.divergent = true;
    res.value = Interval(kInf, kInf);
    res.certificate = "zero interaction: every v_j = 1, so every term is 1";
    return res;
  }
  if (auto r = p.range(); r && n >= *r) {
    res.divergent = true;
    res.value = Interval(kInf, kInf);
    cert << "range " << *r << " <= window " << n << ": v_j = 1 for j >= " << *r
         << ", so the terms are constant and positive from k = " << *r - 1 << " on";
    res.certificate = cert.str();
    return res;
  }

  const Interval tau = F.at(n + 1);
  const double q_up = exp(-Interval(tau.lo())).hi();
  const bool geometric_tail = q_up < 1.0;
  const double factor = geometric_tail ? (Interval(q_up) / (Interval(1.0) - Interval(q_up))).hi() : kInf;

  const DecayEnvelope env = p.tail_envelope();
  long table_size = std::min<long>(opts.table_limit, 1024);
  TailTable table = F.tail_table(table_size);
  auto at = [&](long m) {
    if (m > table.size() && m <= opts.table_limit) {
      table_size = std::min(opts.table_limit, std::max(table_size * 4, m));
      table = F.tail_table(table_size);
    }
    if (m <= table.size()) return table.at(m);
    return env.bound(m);
  };

  Interval s(0.0), sum(0.0);
  double tail = kInf;
  long k = 0;
  for (; k < opts.max_terms; ++k) {
    s += at(k + 1) + tau;
    const Interval t = exp(-s);
    sum += t;
    tail = geometric_tail ? mul_up(t.hi(), factor) : kInf;
    if (tail <= opts.rel_tol * sum.lo()) break;
  }
  res.terms = std::min(k + 1, opts.max_terms);
  if (std::isfinite(tail)) {
    res.value = Interval(sum.lo(), add_up(sum.hi(), tail));
    cert << "summed " << res.terms << " terms; remainder <= t_K q/(1-q) with q = exp(-at(" << n + 1
         << ")) <= " << q_up;
  } else {
    res.value = Interval(sum.lo(), kInf);
    res.unbounded_above = true;
    cert << "summed " << res.terms << " terms; no geometric remainder bound (at(" << n + 1 << ") underflows)";
  }
  res.certificate = cert.str();
  return res;
}

Interval g_bound_from_series(const SeriesResult& r) {
  if (r.divergent) return Interval(0.0);
  return Interval(2.0) * log1p(Interval(1.0) / r.value);
}

Interval g_variation_bound(const FSequence& F, long n, const SeriesOptions& opts) {
  return g_bound_from_series(rn_series(F, n, opts));
}

// ---------------------------------------------------------------------------

TauberianReport tauberian_diagnostic(const FSequence& F, std::optional<double> alpha, std::optional<double> K,
                                     const std::vector<long>& n_grid, const SeriesOptions& opts) {
  if (alpha && !(*alpha > 0.0 && *alpha <= 1.0)) throw std::invalid_argument("tauberian_diagnostic: alpha must lie in (0, 1]");
  if (K && !(*K > 0.0)) throw std::invalid_argument("tauberian_diagnostic: K must be positive");
  if (n_grid.empty()) throw std::invalid_argument("tauberian_diagnostic: empty grid");
  std::vector<long> grid = n_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 1) throw std::invalid_argument("tauberian_diagnostic: grid points must be >= 1");

  const long N = grid.back();
  const TailTable table = F.tail_table(N + 1);

  // log prod_{i=0}^n r_{(-inf,i]}(f_0) = sum_{i=0}^n at(i+1)
  std::vector<double> logprod(static_cast<std::size_t>(N) + 1);
  Compensated acc;
  for (long i = 0; i <= N; ++i) {
    acc.add(table.at(i + 1).mid());
    logprod[i] = acc.value();
  }

  TauberianReport rep;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(grid.size());
    for (long n : grid) {
      const double x = std::log(static_cast<double>(n)), y = logprod[n];
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double den = m * sxx - sx * sx;
    rep.fitted_slope = den != 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  }
  rep.fitted = !alpha;
  rep.alpha = alpha ? *alpha : std::clamp(1.0 - rep.fitted_slope, 1e-6, 1.0);
  if (K) {
    rep.K = *K;
  } else {
    double best = 0.0;
    for (long n : grid) best = std::max(best, std::exp(logprod[n] + (rep.alpha - 1.0) * std::log(static_cast<double>(n))));
    rep.K = best;
  }
  rep.gamma_alpha = tgamma(rep.alpha);
  rep.asymptote = Interval(2.0) * Interval(rep.K) / rep.gamma_alpha;

  for (long n : grid) {
    TauberianRow row;
    row.n = n;
    row.log_r_bound = g_variation_bound(F, n, opts);
    row.log_ratio_right = table.at(n + 1);
    const double base = std::pow(row.log_ratio_right.mid(), rep.alpha);
    row.ratio = base > 0.0 ? row.log_r_bound.hi() / base : (row.log_r_bound.hi() == 0.0 ? 0.0 : kInf);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace gibbs
