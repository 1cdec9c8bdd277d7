#pragma once

// Free-group words over a finite alphabet.
//
// Conventions used throughout the library:
//   [x, y]            = x^-1 y^-1 x y
//   x^y               = y^-1 x y
//   [x1, ..., xk, y]  = [[x1, ..., xk], y]   (left-normed)

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nqkit {

class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string &name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string> &names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Alphabet &other) const { return names_ == other.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> names);

// Same alphabet object, or alphabets with identical name lists.
bool same_alphabet(const AlphabetPtr &a, const AlphabetPtr &b);

struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1; // +1 or -1

  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  bool operator==(const Letter &) const = default;
  auto operator<=>(const Letter &) const = default;
};

// An immutable freely reduced word. The empty word is the identity.
class Word {
public:
  explicit Word(AlphabetPtr alphabet);

  // Freely reduces `letters`.
  static Word from_letters(AlphabetPtr alphabet, std::span<const Letter> letters);
  static Word generator(AlphabetPtr alphabet, std::size_t index, int sign = 1);

  const AlphabetPtr &alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter> &letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word pow(long exponent) const;

  // Text form using the parser grammar; the identity prints as "1".
  std::string to_string() const;

  bool operator==(const Word &other) const;

private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

Word multiply(const Word &u, const Word &v);
Word operator*(const Word &u, const Word &v);
Word inverse(const Word &w);
// x^y = y^-1 x y
Word conjugate(const Word &x, const Word &y);
Word commutator(const Word &x, const Word &y);
// Left-normed fold; throws DomainError on an empty list.
Word left_normed_commutator(std::span<const Word> args);

// Parses the word grammar:
//
//   expr     := product
//   product  := factor ( ['*'] factor )*
//   factor   := atom ( '^' exponent )*
//   exponent := ['-'] ( integer | identifier | '(' expr ')' | '[' list ']' )
//   atom     := identifier | '1' | '(' expr ')' | '[' list ']'
//   list     := expr ( ',' expr )*
//
// An integer exponent is a power; any other exponent conjugates. A leading
// minus on a word exponent inverts first: x^-g = (x^-1)^g.
Word parse_word(std::string_view text, const AlphabetPtr &alphabet);

// The free reduction of an arbitrary letter sequence.
std::vector<Letter> free_reduce(std::span<const Letter> letters);

} // namespace nqkit
