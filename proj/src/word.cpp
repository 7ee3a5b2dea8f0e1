#include "gibbs/word.hpp"

#include <algorithm>
#include <stdexcept>

#include "gibbs/errors.hpp"

namespace gibbs {

std::size_t Alphabet::index_of(int letter) const {
  auto it = std::find(values.begin(), values.end(), letter);
  if (it == values.end()) throw std::invalid_argument("letter " + std::to_string(letter) + " is not in the alphabet");
  return static_cast<std::size_t>(it - values.begin());
}

Word::Word(long first_site, std::vector<int> values) : offset(first_site), letters(std::move(values)) {}

Word Word::constant(long first_site, long length, int letter) {
  if (length < 0) throw std::invalid_argument("Word::constant: negative length");
  return Word(first_site, std::vector<int>(static_cast<std::size_t>(length), letter));
}

int Word::at(long site) const {
  if (!covers(site)) throw CoverageError("word " + str() + " does not cover site " + std::to_string(site));
  return letters[static_cast<std::size_t>(site - offset)];
}

void Word::set(long site, int letter) {
  if (!covers(site)) throw CoverageError("word " + str() + " does not cover site " + std::to_string(site));
  letters[static_cast<std::size_t>(site - offset)] = letter;
}

Word Word::substituted(long site, int letter) const {
  Word w = *this;
  w.set(site, letter);
  return w;
}

std::string Word::str() const {
  std::string s = "[" + std::to_string(first()) + ":";
  for (int l : letters) {
    if (l == 1) s += '+';
    else if (l == -1) s += '-';
    else s += "(" + std::to_string(l) + ")";
  }
  return s + "]";
}

}  // namespace gibbs
