#include "nqkit/basic.hpp"

#include "nqkit/error.hpp"

namespace nqkit {

std::size_t BasicSequence::count_of_weight(unsigned n) const {
  std::size_t count = 0;
  for (const auto &b : elements_)
    count += b.weight == n ? 1 : 0;
  return count;
}

std::string BasicSequence::to_string(std::size_t i) const {
  const BasicCommutator &b = elements_.at(i);
  if (b.is_leaf())
    return alphabet_->name(*b.generator);
  return "[" + to_string(b.left) + "," + to_string(b.right) + "]";
}

Word BasicSequence::expand(std::size_t i) const {
  const BasicCommutator &b = elements_.at(i);
  if (b.is_leaf())
    return Word::generator(alphabet_, *b.generator);
  return commutator(expand(b.left), expand(b.right));
}

BasicSequence basic_sequence(const AlphabetPtr &alphabet, unsigned max_weight,
                             std::size_t max_elements) {
  if (!alphabet)
    throw DomainError("basic_sequence needs an alphabet");
  if (max_weight < 1)
    throw DomainError("max_weight must be at least 1");

  std::vector<BasicCommutator> seq;
  auto push = [&](BasicCommutator b) {
    if (seq.size() >= max_elements)
      throw BudgetExceeded("basic sequence exceeds " + std::to_string(max_elements) +
                           " elements");
    b.seq_index = seq.size();
    seq.push_back(b);
  };

  for (std::size_t g = 0; g < alphabet->size(); ++g) {
    BasicCommutator leaf;
    leaf.weight = 1;
    leaf.generator = g;
    push(leaf);
  }

  // Element b = node(b_i, b_j) is basic iff j < i and, when b_i is itself a
  // node (b_k, b_l), l <= j. Since weights are nondecreasing along the
  // sequence, every candidate child of a weight-n node already exists.
  for (unsigned n = 2; n <= max_weight; ++n) {
    const std::size_t existing = seq.size();
    for (std::size_t i = 0; i < existing; ++i) {
      const BasicCommutator left = seq[i];
      if (left.weight >= n)
        break;
      const unsigned want = n - left.weight;
      for (std::size_t j = 0; j < i; ++j) {
        const BasicCommutator &right = seq[j];
        if (right.weight != want)
          continue;
        if (!left.is_leaf() && left.right > j)
          continue;
        BasicCommutator node;
        node.weight = n;
        node.left = i;
        node.right = j;
        push(node);
      }
    }
  }
  return BasicSequence(alphabet, std::move(seq));
}

int moebius(unsigned n) {
  if (n == 0)
    throw DomainError("moebius(0)");
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      result = -result;
    }
  }
  if (n > 1)
    result = -result;
  return result;
}

Integer witt_number(unsigned q, unsigned n) {
  if (q < 1 || n < 1)
    throw DomainError("witt_number needs q >= 1 and n >= 1");
  Integer sum = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0)
      continue;
    int mu = moebius(d);
    if (mu == 0)
      continue;
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), q, n / d);
    sum += mu * power;
  }
  Integer result = sum / n;
  if (result * n != sum)
    throw InternalError("Witt sum not divisible by n");
  return result;
}

} // namespace nqkit
