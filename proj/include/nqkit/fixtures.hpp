#pragma once

// Presentation files and the built-in presentation catalogue.
//
// File format, one item per line ('#' starts a comment):
//
//   gens: a, t
//   rel:  [a, t, t]
//   rel:  [a, t, a] = [a, t]^2        # "u = v" means u v^-1
//
// Relator expressions use the word grammar of parse_word.

#include "nqkit/nq.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nqkit {

// Throws ParseError (offset into `text`) or UnknownGenerator.
Presentation parse_presentation(std::string_view text);

Presentation read_presentation_file(const std::string &path);

// Round-trips through parse_presentation.
std::string format_presentation(const Presentation &pres);

struct Fixture {
  std::string name;
  std::string description;
  std::string text; // presentation file contents
};

const std::vector<Fixture> &fixtures();

// Throws DomainError for unknown names.
const Fixture &fixture(std::string_view name);
Presentation load_fixture(std::string_view name);

// Identity scripts: ordered checks "lhs = rhs modulo gamma_{class+1}",
// one per line as
//
//   class | name | lhs | rhs
//
// with '#' comments. Expressions are kept as text and parsed against the
// presentation they are replayed on.
struct IdentityCheck {
  unsigned nq_class = 0;
  std::string name;
  std::string lhs;
  std::string rhs;
};

std::vector<IdentityCheck> parse_identity_script(std::string_view text);
std::vector<IdentityCheck> read_identity_script(const std::string &path);

} // namespace nqkit
