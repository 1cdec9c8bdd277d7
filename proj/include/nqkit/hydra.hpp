#pragma once

// Hydra groups G(k) = < a, t | [a, t, ..., t] = 1 > (k copies of t).
//
// With a_0 = a and a_i = [a_{i-1}, t], the subgroup H = <a_0, ..., a_{k-1}>
// is free and normal, and G(k) is H extended by <t>, which acts by
//
//   t^-1 a_i t = a_i a_{i+1}   (i < k-1),     t^-1 a_{k-1} t = a_{k-1}.
//
// Every element is uniquely h t^n with h in H.

#include "nqkit/integer.hpp"
#include "nqkit/words.hpp"

#include <string>
#include <vector>

namespace nqkit {

// {a_0, ..., a_{k-1}}: coordinates on the free normal subgroup.
AlphabetPtr hydra_coordinates(unsigned k);

// {a, t}
AlphabetPtr hydra_ambient();

// Images of a_0..a_{k-1} under x -> t^d x t^-d. Direction -1 is
// conjugation by t (x -> t^-1 x t); direction +1 is its inverse.
std::vector<Word> t_action(unsigned k, int direction);

// Applies the endomorphism a_i -> images[i] to a word over the same alphabet.
Word apply_endomorphism(const std::vector<Word> &images, const Word &w);

struct HydraNormalForm {
  Word h;        // over hydra_coordinates(k)
  Integer t_exp; // exponent of t

  bool is_identity() const { return h.is_identity() && t_exp == 0; }
  bool operator==(const HydraNormalForm &other) const {
    return h == other.h && t_exp == other.t_exp;
  }
  std::string to_string() const;
};

// The unique (h, n) with w = h t^n in G(k). `w` must be over an alphabet
// consisting of generators named "a" and "t".
HydraNormalForm hydra_normal_form(unsigned k, const Word &w);

bool hydra_is_trivial(unsigned k, const Word &w);

// Product of normal forms computed in the extension: (h1 t^n1)(h2 t^n2).
HydraNormalForm hydra_multiply(unsigned k, const HydraNormalForm &x, const HydraNormalForm &y);

// h t^n back over {a, t}, substituting a_i = [a, t, ..., t] (i copies of t).
Word hydra_reconstruct(const HydraNormalForm &nf, const AlphabetPtr &ambient);

// [a, t, ..., t] with `copies` t's, over `ambient`.
Word hydra_commutator(const AlphabetPtr &ambient, unsigned copies);

// The relator [a, t^(k-2), e, ..., e] with e = [a, t^(k-1)] and l copies of
// e, rewritten over c_1..c_k where c_j = [a, t^(j-1)].
Word rewrite_in_c(unsigned k, unsigned l);

// {c_1, ..., c_k}
AlphabetPtr c_alphabet(unsigned k);

} // namespace nqkit
