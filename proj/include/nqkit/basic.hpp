#pragma once

// Hall basic sequences and basic commutators.

#include "nqkit/integer.hpp"
#include "nqkit/words.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nqkit {

// One element of a basic sequence. Children are referenced by their
// position in the owning sequence (0-based).
struct BasicCommutator {
  std::size_t seq_index = 0;
  unsigned weight = 1;
  std::optional<std::size_t> generator; // set for leaves
  std::size_t left = 0;                 // nodes only
  std::size_t right = 0;                // nodes only

  bool is_leaf() const noexcept { return generator.has_value(); }
};

class BasicSequence {
public:
  BasicSequence(AlphabetPtr alphabet, std::vector<BasicCommutator> elements)
      : alphabet_(std::move(alphabet)), elements_(std::move(elements)) {}

  const AlphabetPtr &alphabet() const noexcept { return alphabet_; }
  const std::vector<BasicCommutator> &elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const BasicCommutator &operator[](std::size_t i) const { return elements_.at(i); }

  // Number of elements of weight exactly n.
  std::size_t count_of_weight(unsigned n) const;

  // Bracket text such as "[[t,a],a]"; parses back to expand(i).
  std::string to_string(std::size_t i) const;

  // The group word of element i with every node read as a commutator.
  Word expand(std::size_t i) const;

private:
  AlphabetPtr alphabet_;
  std::vector<BasicCommutator> elements_;
};

// Canonical basic sequence up to `max_weight`: leaves in alphabet order,
// then within each weight nodes ordered by (left index, right index).
// Throws BudgetExceeded when more than `max_elements` would be produced.
BasicSequence basic_sequence(const AlphabetPtr &alphabet, unsigned max_weight,
                             std::size_t max_elements = 2'000'000);

inline Word expand(const BasicSequence &seq, std::size_t i) { return seq.expand(i); }

// (1/n) sum_{d | n} mu(d) q^(n/d): the rank of the weight-n free Lie ring
// component on q generators.
Integer witt_number(unsigned q, unsigned n);

int moebius(unsigned n);

} // namespace nqkit
