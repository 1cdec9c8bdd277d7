#pragma once

#include "nqkit/words.hpp"

#include <random>
#include <vector>

namespace nqkit::testing {

// Uniform random letters, then freely reduced; the result may be shorter.
inline Word random_word(const AlphabetPtr &alphabet, std::size_t max_len, std::mt19937 &rng) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> gen(0, static_cast<std::uint32_t>(alphabet->size() - 1));
  std::bernoulli_distribution sign;
  std::vector<Letter> letters(len(rng));
  for (auto &l : letters)
    l = {gen(rng), static_cast<std::int8_t>(sign(rng) ? 1 : -1)};
  return Word::from_letters(alphabet, letters);
}

// Literal letter list, e.g. {{0,1},{1,-1}}, without reduction.
inline std::vector<Letter> letters(std::initializer_list<std::pair<int, int>> spec) {
  std::vector<Letter> out;
  for (auto [g, s] : spec)
    out.push_back({static_cast<std::uint32_t>(g), static_cast<std::int8_t>(s)});
  return out;
}

} // namespace nqkit::testing
