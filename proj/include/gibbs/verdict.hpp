#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gibbs/interval.hpp"

namespace gibbs {

/// Outcome of checking one sufficient condition. `fails` means the
/// criterion's hypothesis fails; it never asserts non-uniqueness.
enum class Outcome { holds, fails, inconclusive };

/// What a criterion concludes when its hypothesis holds.
enum class Conclusion { unique_gibbs_bernoulli, unique_gibbs, unique_invariant_gibbs };

struct Verdict {
  std::string criterion;
  Outcome outcome = Outcome::inconclusive;
  /// Signed distance to the criterion's threshold (positive when holding).
  Interval margin;
  std::string certificate;
  Conclusion strength = Conclusion::unique_gibbs;
  /// The criterion's central quantity, when it has one (a sum, a limsup).
  std::optional<Interval> value;
};

std::string_view to_string(Outcome o) noexcept;
std::string_view to_string(Conclusion c) noexcept;

}  // namespace gibbs
