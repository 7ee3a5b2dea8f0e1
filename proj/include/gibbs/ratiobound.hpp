#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gibbs/fseq.hpp"
#include "gibbs/interval.hpp"

namespace gibbs {

/// Rejects v unless 0 < v_0 <= v_1 <= ... <= 1.
void validate_v(const std::vector<double>& v);

/// One row at a time of
///
///   p_{-1}^{(n)} = 1,  p_0^{(0)} = v_0,
///   p_k^{(n)} = v_k p_{k-1}^{(n-1)} + sum_{j=k}^{n-1} (v_{j+1} - v_j) p_j^{(n-1)}.
///
/// The suffix sums are compensated, so a row costs O(n).
class RatioRecursion {
 public:
  explicit RatioRecursion(std::vector<double> v);

  long n() const noexcept { return n_; }
  /// p_k^{(n)} for k = 0..n.
  const std::vector<double>& row() const noexcept { return row_; }
  double p0() const noexcept { return row_.front(); }
  /// Advance to n + 1; needs v_{n+1}.
  void step();

 private:
  std::vector<double> v_;
  std::vector<double> row_;
  std::vector<double> scratch_;
  long n_ = 0;
};

class RatioTable {
 public:
  RatioTable(std::vector<double> v, long n_max, std::vector<std::vector<double>> rows, std::vector<double> p0);

  const std::vector<double>& v() const noexcept { return v_; }
  long n_max() const noexcept { return n_max_; }
  bool has_full_rows() const noexcept { return !rows_.empty(); }
  /// p_k^{(n)} for -1 <= k <= n <= n_max. Entries with k > 0 need full rows.
  double p(long k, long n) const;
  /// p_0^{(n)} for n = 0..n_max.
  const std::vector<double>& p0_history() const noexcept { return p0_; }
  /// S_N / (1 + S_N) with S_N = sum_{k<=N} prod_{j<=k} v_j.
  double limit_lower(long N) const;

 private:
  std::vector<double> v_;
  long n_max_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> p0_;
};

/// Runs the recursion to n_max (v needs n_max + 1 entries). Full rows are
/// kept when n_max <= full_rows_limit, otherwise only p_0^{(n)}.
RatioTable rb_recursion(const std::vector<double>& v, long n_max, long full_rows_limit = 2048);

/// S_N / (1 + S_N); a lower bound for lim_n p_0^{(n)}.
double rb_limit_lower_bound(const std::vector<double>& v, long N);

struct SeriesOptions {
  /// Stop once the geometric tail bound falls below rel_tol * partial sum.
  double rel_tol = 1e-12;
  long max_terms = 20'000'000;
  /// Tail sums beyond this index come from the closed-form envelope.
  long table_limit = 1L << 20;
};

/// R_n = sum_{k>=0} prod_{j<=k} v_j with v from the window A = [-n, -1].
struct SeriesResult {
  long n = 0;
  /// Enclosure of R_n; meaningless when divergent.
  Interval value;
  bool divergent = false;
  /// Summation stopped without a finite upper bound (value.hi() = inf).
  bool unbounded_above = false;
  long terms = 0;
  std::string certificate;
};

SeriesResult rn_series(const FSequence& F, long n, const SeriesOptions& opts = {});

/// 2 log(1 + 1/R_n), the bound on log r_{[-n,0]}(g); [0,0] when R_n diverges.
Interval g_bound_from_series(const SeriesResult& r);
Interval g_variation_bound(const FSequence& F, long n, const SeriesOptions& opts = {});

struct TauberianRow {
  long n = 0;
  Interval log_r_bound;
  Interval log_ratio_right;
  /// log_r_bound.hi / log_ratio_right.mid^alpha.
  double ratio = 0.0;
};

struct TauberianReport {
  double alpha = 1.0;
  double K = 1.0;
  bool fitted = false;
  /// Slope of log prod_{i<=n} r_{(-inf,i]}(f_0) against log n on the grid.
  double fitted_slope = 0.0;
  Interval gamma_alpha;
  /// 2 Gamma(alpha)^{-1} K.
  Interval asymptote;
  std::vector<TauberianRow> rows;
};

/// Finite-grid view of the Tauberian bound. alpha and K are fitted from the
/// log-product when not supplied.
TauberianReport tauberian_diagnostic(const FSequence& F, std::optional<double> alpha, std::optional<double> K,
                                     const std::vector<long>& n_grid, const SeriesOptions& opts = {});

}  // namespace gibbs
