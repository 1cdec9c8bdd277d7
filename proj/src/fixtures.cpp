#include "nqkit/fixtures.hpp"

#include "nqkit/basic.hpp"
#include "nqkit/error.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace nqkit {

namespace {

struct Line {
  std::string_view text;
  std::size_t offset; // of text within the whole input
  std::size_t number; // 1-based
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0, number = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    out.push_back({line, start, number++});
    start = end + 1;
  }
  return out;
}

// Trims `s` in place, advancing `offset` past leading blanks.
std::string_view trim(std::string_view s, std::size_t &offset) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  offset += b;
  return s.substr(b, e - b);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

// Parses with positions shifted to be relative to the whole input.
Word parse_at(std::string_view expr, std::size_t offset, const AlphabetPtr &alphabet) {
  try {
    return parse_word(expr, alphabet);
  } catch (const UnknownGenerator &e) {
    throw UnknownGenerator(e.name(), offset + e.position());
  } catch (const ParseError &e) {
    throw ParseError(std::string("bad expression '") + std::string(expr) + "'",
                     offset + e.position());
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

Presentation parse_presentation(std::string_view text) {
  AlphabetPtr alphabet;
  std::vector<Word> relators;
  for (const Line &line : split_lines(text)) {
    std::size_t off = line.offset;
    std::string_view body = trim(line.text, off);
    if (body.empty())
      continue;
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected 'gens:' or 'rel:' on line " + std::to_string(line.number), off);
    std::size_t key_off = off;
    const std::string_view key = trim(body.substr(0, colon), key_off);
    std::size_t val_off = off + colon + 1;
    const std::string_view value = trim(body.substr(colon + 1), val_off);

    if (key == "gens") {
      if (alphabet)
        throw ParseError("duplicate 'gens:' line", key_off);
      std::vector<std::string> names;
      std::set<std::string> seen;
      std::size_t pos = 0;
      while (pos <= value.size()) {
        std::size_t end = value.find(',', pos);
        if (end == std::string_view::npos)
          end = value.size();
        std::size_t name_off = val_off + pos;
        const std::string_view name = trim(value.substr(pos, end - pos), name_off);
        if (!is_identifier(name))
          throw ParseError("bad generator name '" + std::string(name) + "'", name_off);
        if (!seen.insert(std::string(name)).second)
          throw ParseError("duplicate generator '" + std::string(name) + "'", name_off);
        names.emplace_back(name);
        pos = end + 1;
      }
      alphabet = make_alphabet(std::move(names));
    } else if (key == "rel") {
      if (!alphabet)
        throw ParseError("'rel:' before 'gens:'", key_off);
      const auto eq = value.find('=');
      if (eq == std::string_view::npos) {
        relators.push_back(parse_at(value, val_off, alphabet));
      } else {
        std::size_t lo = val_off, ro = val_off + eq + 1;
        const std::string_view lhs = trim(value.substr(0, eq), lo);
        const std::string_view rhs = trim(value.substr(eq + 1), ro);
        if (rhs.find('=') != std::string_view::npos)
          throw ParseError("more than one '=' in relation", ro + rhs.find('='));
        relators.push_back(parse_at(lhs, lo, alphabet) * parse_at(rhs, ro, alphabet).inverse());
      }
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", key_off);
    }
  }
  if (!alphabet)
    throw ParseError("missing 'gens:' line", text.size());
  return Presentation(alphabet, std::move(relators));
}

Presentation read_presentation_file(const std::string &path) {
  return parse_presentation(read_file(path));
}

std::string format_presentation(const Presentation &pres) {
  std::string out = "gens: ";
  const auto &names = pres.alphabet()->names();
  for (std::size_t i = 0; i < names.size(); ++i)
    out += (i ? ", " : "") + names[i];
  out += "\n";
  for (const Word &r : pres.relators())
    out += "rel: " + r.to_string() + "\n";
  return out;
}

namespace {

// [a, t, ..., t] with n t's, as text.
std::string a_t(unsigned n) {
  std::string s = "[a";
  for (unsigned i = 0; i < n; ++i)
    s += ",t";
  return s + "]";
}

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> out;
  out.push_back({"free2", "free group on a, t", "gens: a, t\n"});
  out.push_back({"free3", "free group on a, b, c", "gens: a, b, c\n"});
  for (unsigned k = 1; k <= 5; ++k)
    out.push_back({"hydra-k" + std::to_string(k), "Hydra group G(" + std::to_string(k) + ")",
                   "gens: a, t\nrel: " + a_t(k) + "\n"});

  const std::string d = "gens: a, t\nrel: [a,t,t]\nrel: [a,t,a,a,a]\n";
  out.push_back({"theorem7", "D = <a, t | [a,t,t], [a,t,a,a,a]>", d});

  // < a, t | [a, t^(k-2), e^(l)], [a, t^k] >, e = [a, t^(k-1)]
  for (unsigned k = 3; k <= 5; ++k)
    for (unsigned l = 1; l <= 3; ++l) {
      std::string rel = "[" + a_t(k - 2);
      for (unsigned i = 0; i < l; ++i)
        rel += "," + a_t(k - 1);
      rel += "]";
      out.push_back({"example1-k" + std::to_string(k) + "-l" + std::to_string(l),
                     "first Hydra quotient family, k=" + std::to_string(k) +
                         ", l=" + std::to_string(l),
                     "gens: a, t\nrel: " + rel + "\nrel: " + a_t(k) + "\n"});
    }

  // < a, t | [[a, t^s], [a, t^(k-1)]], [a, t^k] >
  for (unsigned k = 3; k <= 5; ++k)
    for (unsigned s = 1; s + 1 < k; ++s)
      out.push_back({"example2-k" + std::to_string(k) + "-s" + std::to_string(s),
                     "second Hydra quotient family, k=" + std::to_string(k) +
                         ", s=" + std::to_string(s),
                     "gens: a, t\nrel: [" + a_t(s) + "," + a_t(k - 1) + "]\nrel: " + a_t(k) +
                         "\n"});

  // < a, t | [a, t^(k-1), a], [a, t^k] >
  for (unsigned k = 1; k <= 5; ++k) {
    std::string first = "[a";
    for (unsigned i = 0; i + 1 < k; ++i)
      first += ",t";
    first += ",a]";
    out.push_back({"remark-k" + std::to_string(k),
                   "central extension of G(" + std::to_string(k) + ")",
                   "gens: a, t\nrel: " + first + "\nrel: " + a_t(k) + "\n"});
  }

  out.push_back({"two-relator-mixed", "< x1, x2, y1, y2 | [x1,x2] = [y1,y2,y2] >",
                 "gens: x1, x2, y1, y2\nrel: [x1,x2] = [y1,y2,y2]\n"});

  // D with gamma_7 of the free group killed.
  {
    const BasicSequence seq = basic_sequence(make_alphabet({"a", "t"}), 10);
    std::string text = d;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i].weight >= 7)
        text += "rel: " + seq.to_string(i) + "\n";
    out.push_back({"final-remark", "D plus every basic commutator of weight 7..10 in a, t",
                   std::move(text)});
  }
  return out;
}

} // namespace

const std::vector<Fixture> &fixtures() {
  static const std::vector<Fixture> all = build_fixtures();
  return all;
}

const Fixture &fixture(std::string_view name) {
  for (const Fixture &f : fixtures())
    if (f.name == name)
      return f;
  throw DomainError("unknown fixture '" + std::string(name) + "'");
}

Presentation load_fixture(std::string_view name) { return parse_presentation(fixture(name).text); }

std::vector<IdentityCheck> parse_identity_script(std::string_view text) {
  std::vector<IdentityCheck> out;
  for (const Line &line : split_lines(text)) {
    std::size_t off = line.offset;
    const std::string_view body = trim(line.text, off);
    if (body.empty())
      continue;
    std::vector<std::string_view> fields;
    std::vector<std::size_t> offsets;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t end = body.find('|', pos);
      if (end == std::string_view::npos)
        end = body.size();
      std::size_t foff = off + pos;
      fields.push_back(trim(body.substr(pos, end - pos), foff));
      offsets.push_back(foff);
      pos = end + 1;
    }
    if (fields.size() != 4)
      throw ParseError("expected 'class | name | lhs | rhs' on line " +
                           std::to_string(line.number),
                       off);
    IdentityCheck check;
    try {
      const int c = std::stoi(std::string(fields[0]));
      if (c < 1)
        throw std::invalid_argument("class");
      check.nq_class = static_cast<unsigned>(c);
    } catch (const std::exception &) {
      throw ParseError("bad class '" + std::string(fields[0]) + "'", offsets[0]);
    }
    check.name = fields[1];
    check.lhs = fields[2];
    check.rhs = fields[3];
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<IdentityCheck> read_identity_script(const std::string &path) {
  return parse_identity_script(read_file(path));
}

} // namespace nqkit
