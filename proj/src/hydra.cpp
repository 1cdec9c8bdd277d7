#include "nqkit/hydra.hpp"

#include "nqkit/error.hpp"

#include <map>

namespace nqkit {

AlphabetPtr hydra_coordinates(unsigned k) {
  if (k < 1)
    throw DomainError("Hydra groups need k >= 1");
  std::vector<std::string> names;
  for (unsigned i = 0; i < k; ++i)
    names.push_back("a_" + std::to_string(i));
  return make_alphabet(std::move(names));
}

AlphabetPtr hydra_ambient() { return make_alphabet({"a", "t"}); }

AlphabetPtr c_alphabet(unsigned k) {
  if (k < 1)
    throw DomainError("c-alphabet needs k >= 1");
  std::vector<std::string> names;
  for (unsigned j = 1; j <= k; ++j)
    names.push_back("c_" + std::to_string(j));
  return make_alphabet(std::move(names));
}

std::vector<Word> t_action(unsigned k, int direction) {
  if (direction != 1 && direction != -1)
    throw DomainError("direction must be +1 or -1");
  const AlphabetPtr coords = hydra_coordinates(k);
  std::vector<Word> images(k, Word(coords));
  images[k - 1] = Word::generator(coords, k - 1);
  for (unsigned i = k - 1; i-- > 0;) {
    const Word ai = Word::generator(coords, i);
    if (direction < 0)
      images[i] = ai * Word::generator(coords, i + 1);
    else
      images[i] = ai * images[i + 1].inverse();
  }
  return images;
}

Word apply_endomorphism(const std::vector<Word> &images, const Word &w) {
  if (images.size() != w.alphabet()->size())
    throw DomainError("endomorphism table does not match the alphabet");
  Word out(w.alphabet());
  for (const Letter &l : w.letters())
    out = out * (l.sign > 0 ? images[l.gen] : images[l.gen].inverse());
  return out;
}

std::string HydraNormalForm::to_string() const {
  std::string s = h.to_string();
  if (t_exp != 0)
    s += " * t^" + t_exp.get_str();
  return s;
}

namespace {

struct AmbientIndex {
  std::size_t a;
  std::size_t t;
};

AmbientIndex ambient_index(const Alphabet &alphabet) {
  auto a = alphabet.find("a");
  auto t = alphabet.find("t");
  if (!a || !t || alphabet.size() != 2)
    throw DomainError("Hydra words must be over the alphabet {a, t}");
  return {*a, *t};
}

// t^n x t^-n for x in H, given by its images under the action.
class ConjugationCache {
public:
  explicit ConjugationCache(unsigned k)
      : k_(k), forward_(t_action(k, 1)), backward_(t_action(k, -1)) {}

  // t^n a_0 t^-n
  const Word &image_of_a(long n) {
    auto it = cache_.find(n);
    if (it != cache_.end())
      return it->second;
    Word w = Word::generator(hydra_coordinates(k_), 0);
    if (n != 0) {
      // Step from the nearest cached neighbour towards zero.
      const long toward_zero = n > 0 ? n - 1 : n + 1;
      const Word &prev = image_of_a(toward_zero);
      w = apply_endomorphism(n > 0 ? forward_ : backward_, prev);
    }
    return cache_.emplace(n, std::move(w)).first->second;
  }

  // t^n x t^-n for an arbitrary x in H.
  Word conjugate(const Word &x, long n) {
    Word out = x;
    const auto &table = n > 0 ? forward_ : backward_;
    for (long s = 0; s < (n > 0 ? n : -n); ++s)
      out = apply_endomorphism(table, out);
    return out;
  }

private:
  unsigned k_;
  std::vector<Word> forward_;
  std::vector<Word> backward_;
  std::map<long, Word> cache_;
};

long to_long(const Integer &n) {
  if (!n.fits_slong_p())
    throw BudgetExceeded("t-exponent too large");
  return n.get_si();
}

} // namespace

HydraNormalForm hydra_normal_form(unsigned k, const Word &w) {
  const AmbientIndex idx = ambient_index(*w.alphabet());
  ConjugationCache cache(k);
  Word h(hydra_coordinates(k));
  long n = 0;
  // w = h t^n so far; appending a^s gives h (t^n a t^-n)^s t^n.
  for (const Letter &l : w.letters()) {
    if (l.gen == idx.t) {
      n += l.sign;
    } else {
      const Word &img = cache.image_of_a(n);
      h = h * (l.sign > 0 ? img : img.inverse());
    }
  }
  return {h, Integer(n)};
}

bool hydra_is_trivial(unsigned k, const Word &w) { return hydra_normal_form(k, w).is_identity(); }

HydraNormalForm hydra_multiply(unsigned k, const HydraNormalForm &x, const HydraNormalForm &y) {
  // h1 t^n1 h2 t^n2 = h1 (t^n1 h2 t^-n1) t^(n1 + n2)
  ConjugationCache cache(k);
  const long n1 = to_long(x.t_exp);
  return {x.h * cache.conjugate(y.h, n1), x.t_exp + y.t_exp};
}

Word hydra_commutator(const AlphabetPtr &ambient, unsigned copies) {
  const AmbientIndex idx = ambient_index(*ambient);
  std::vector<Word> args{Word::generator(ambient, idx.a)};
  for (unsigned i = 0; i < copies; ++i)
    args.push_back(Word::generator(ambient, idx.t));
  return left_normed_commutator(args);
}

Word hydra_reconstruct(const HydraNormalForm &nf, const AlphabetPtr &ambient) {
  const AmbientIndex idx = ambient_index(*ambient);
  const std::size_t k = nf.h.alphabet()->size();
  std::vector<Word> subst;
  for (std::size_t i = 0; i < k; ++i)
    subst.push_back(hydra_commutator(ambient, static_cast<unsigned>(i)));
  Word out(ambient);
  for (const Letter &l : nf.h.letters())
    out = out * (l.sign > 0 ? subst[l.gen] : subst[l.gen].inverse());
  return out * Word::generator(ambient, idx.t).pow(to_long(nf.t_exp));
}

Word rewrite_in_c(unsigned k, unsigned l) {
  if (k < 2)
    throw DomainError("rewrite_in_c needs k >= 2");
  if (l < 1)
    throw DomainError("rewrite_in_c needs l >= 1");
  const AlphabetPtr ambient = hydra_ambient();
  const Word e = hydra_commutator(ambient, k - 1);
  std::vector<Word> args{hydra_commutator(ambient, k - 2)};
  for (unsigned i = 0; i < l; ++i)
    args.push_back(e);
  const Word relator = left_normed_commutator(args);

  // The relator lies in H, so its normal form has no t-part; H is free on
  // a_0..a_{k-1} = c_1..c_k.
  const HydraNormalForm nf = hydra_normal_form(k, relator);
  if (nf.t_exp != 0)
    throw InternalError("relator is not in the normal closure of a");
  return Word::from_letters(c_alphabet(k), nf.h.letters());
}

} // namespace nqkit
