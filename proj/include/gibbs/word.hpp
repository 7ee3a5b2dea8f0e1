#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gibbs {

/// Finite alphabet of integer letter values; spins are {-1, +1}.
struct Alphabet {
  std::vector<int> values{-1, 1};

  static Alphabet spins() { return Alphabet{}; }
  std::size_t size() const noexcept { return values.size(); }
  /// Position of a letter value in `values`; throws if absent.
  std::size_t index_of(int letter) const;
};

/// Letters on the contiguous sites offset, offset+1, ...
struct Word {
  long offset = 0;
  std::vector<int> letters;

  Word() = default;
  Word(long first_site, std::vector<int> values);
  /// `length` copies of `letter` starting at `first_site`.
  static Word constant(long first_site, long length, int letter);

  long first() const noexcept { return offset; }
  long last() const noexcept { return offset + static_cast<long>(letters.size()) - 1; }
  long length() const noexcept { return static_cast<long>(letters.size()); }
  bool covers(long site) const noexcept { return site >= first() && site <= last(); }
  bool covers(long a, long b) const noexcept { return a > b || (covers(a) && covers(b)); }

  int at(long site) const;
  void set(long site, int letter);
  /// Copy with site `site` replaced by `letter` (the substitution s_n x).
  Word substituted(long site, int letter) const;

  std::string str() const;
};

}  // namespace gibbs
