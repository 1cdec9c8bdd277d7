#include "nqkit/words.hpp"

#include "nqkit/error.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace nqkit {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty())
    throw DomainError("alphabet must be nonempty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw DomainError("duplicate generator name '" + names_[i] + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

AlphabetPtr make_alphabet(std::vector<std::string> names) {
  return std::make_shared<const Alphabet>(std::move(names));
}

bool same_alphabet(const AlphabetPtr &a, const AlphabetPtr &b) {
  return a == b || (a && b && *a == *b);
}

std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter &l : letters) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_)
    throw DomainError("word needs an alphabet");
}

Word Word::from_letters(AlphabetPtr alphabet, std::span<const Letter> letters) {
  Word w(std::move(alphabet));
  for (const Letter &l : letters) {
    if (l.gen >= w.alphabet_->size() || (l.sign != 1 && l.sign != -1))
      throw DomainError("letter outside alphabet");
  }
  w.letters_ = free_reduce(letters);
  return w;
}

Word Word::generator(AlphabetPtr alphabet, std::size_t index, int sign) {
  Letter l{static_cast<std::uint32_t>(index), static_cast<std::int8_t>(sign)};
  return from_letters(std::move(alphabet), std::span<const Letter>(&l, 1));
}

Word Word::inverse() const {
  Word w(alphabet_);
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(it->inverse());
  return w;
}

Word Word::pow(long exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  unsigned long n = exponent < 0 ? -static_cast<unsigned long>(exponent)
                                 : static_cast<unsigned long>(exponent);
  Word result(alphabet_);
  for (unsigned long i = 0; i < n; ++i)
    result = multiply(result, base);
  return result;
}

std::string Word::to_string() const {
  if (letters_.empty())
    return "1";
  std::ostringstream out;
  std::size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i])
      ++j;
    if (!first)
      out << ' ';
    first = false;
    long run = static_cast<long>(j - i) * letters_[i].sign;
    out << alphabet_->name(letters_[i].gen);
    if (run != 1)
      out << '^' << run;
    i = j;
  }
  return out.str();
}

bool Word::operator==(const Word &other) const {
  return same_alphabet(alphabet_, other.alphabet_) && letters_ == other.letters_;
}

Word multiply(const Word &u, const Word &v) {
  if (!same_alphabet(u.alphabet(), v.alphabet()))
    throw AlphabetMismatch();
  const auto &a = u.letters();
  const auto &b = v.letters();
  // Cancellation only happens at the seam.
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == b[k].inverse())
    ++k;
  std::vector<Letter> joined;
  joined.reserve(a.size() + b.size() - 2 * k);
  joined.insert(joined.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
  joined.insert(joined.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return Word::from_letters(u.alphabet(), joined);
}

Word operator*(const Word &u, const Word &v) { return multiply(u, v); }

Word inverse(const Word &w) { return w.inverse(); }

Word conjugate(const Word &x, const Word &y) { return y.inverse() * x * y; }

Word commutator(const Word &x, const Word &y) {
  return x.inverse() * y.inverse() * x * y;
}

Word left_normed_commutator(std::span<const Word> args) {
  if (args.empty())
    throw DomainError("left-normed commutator of an empty list");
  Word acc = args.front();
  for (std::size_t i = 1; i < args.size(); ++i)
    acc = commutator(acc, args[i]);
  return acc;
}

namespace {

class Parser {
public:
  Parser(std::string_view text, const AlphabetPtr &alphabet)
      : text_(text), alphabet_(alphabet) {}

  Word parse() {
    Word w = expr();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

private:
  [[noreturn]] void fail(const std::string &message) const {
    throw ParseError(message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  bool factor_start(char c) const {
    return ident_start(c) || c == '(' || c == '[' || c == '1';
  }

  Word expr() {
    Word acc = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (factor_start(c)) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Word factor() {
    Word base = atom();
    while (peek() == '^') {
      ++pos_;
      base = exponent(base);
    }
    return base;
  }

  Word exponent(const Word &base) {
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      long n = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
      if (ec != std::errc() || ptr != text_.data() + pos_) {
        pos_ = start;
        fail("exponent out of range");
      }
      return base.pow(negate ? -n : n);
    }
    if (ident_start(c) || c == '(' || c == '[') {
      Word by = atom();
      return conjugate(negate ? base.inverse() : base, by);
    }
    fail("expected an exponent");
  }

  Word atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = expr();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Word> args;
      args.push_back(expr());
      while (peek() == ',') {
        ++pos_;
        args.push_back(expr());
      }
      expect(']');
      return left_normed_commutator(args);
    }
    if (c == '1') {
      std::size_t start = pos_;
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = start;
        fail("only '1' may appear as an integer factor");
      }
      return Word(alphabet_);
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_]))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto index = alphabet_->find(name);
      if (!index)
        throw UnknownGenerator(std::string(name), start);
      return Word::generator(alphabet_, *index);
    }
    if (c == '\0')
      fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const AlphabetPtr &alphabet_;
  std::size_t pos_ = 0;
};

} // namespace

Word parse_word(std::string_view text, const AlphabetPtr &alphabet) {
  if (!alphabet)
    throw DomainError("parse_word needs an alphabet");
  return Parser(text, alphabet).parse();
}

} // namespace nqkit
