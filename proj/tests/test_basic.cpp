#include "nqkit/basic.hpp"
#include "nqkit/error.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace nqkit;

namespace {

// Words of length n over q letters that are strictly smaller than all of
// their proper rotations, counted by enumeration.
std::size_t brute_force_lyndon_count(unsigned q, unsigned n) {
  std::vector<unsigned> word(n, 0);
  std::size_t count = 0;
  while (true) {
    bool smallest = true;
    for (unsigned r = 1; r < n && smallest; ++r) {
      std::vector<unsigned> rot(word.begin() + r, word.end());
      rot.insert(rot.end(), word.begin(), word.begin() + r);
      smallest = word < rot;
    }
    count += smallest;
    unsigned i = 0;
    while (i < n && ++word[i] == q)
      word[i++] = 0;
    if (i == n)
      break;
  }
  return count;
}

} // namespace

TEST(Basic, WittNumbersKnownValues) {
  EXPECT_EQ(witt_number(2, 1), 2);
  EXPECT_EQ(witt_number(2, 2), 1);
  EXPECT_EQ(witt_number(2, 6), 9);
  EXPECT_EQ(witt_number(2, 7), 18);
  EXPECT_EQ(witt_number(3, 4), 18);
  EXPECT_EQ(witt_number(1, 1), 1);
  EXPECT_EQ(witt_number(1, 3), 0);
}

TEST(Basic, WittNumberMatchesBruteForceLyndonCount) {
  for (unsigned q = 1; q <= 3; ++q)
    for (unsigned n = 1; n <= 8; ++n)
      EXPECT_EQ(witt_number(q, n), brute_force_lyndon_count(q, n)) << q << "," << n;
}

TEST(Basic, Moebius) {
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  for (unsigned n = 1; n <= 10; ++n)
    EXPECT_EQ(moebius(n), expected[n - 1]);
}

TEST(Basic, CountsPerWeightAreWittNumbers) {
  for (unsigned q = 2; q <= 3; ++q) {
    const unsigned top = q == 2 ? 9 : 6;
    const BasicSequence seq = basic_sequence(make_alphabet(q == 2 ? std::vector<std::string>{"a", "t"}
                                                                  : std::vector<std::string>{"x", "y", "z"}),
                                             top);
    for (unsigned n = 1; n <= top; ++n)
      EXPECT_EQ(Integer(seq.count_of_weight(n)), witt_number(q, n)) << q << "," << n;
  }
}

TEST(Basic, TwoGeneratorCounts) {
  const BasicSequence seq = basic_sequence(make_alphabet({"a", "t"}), 7);
  const std::size_t expected[] = {2, 1, 2, 3, 6, 9, 18};
  for (unsigned n = 1; n <= 7; ++n)
    EXPECT_EQ(seq.count_of_weight(n), expected[n - 1]);
}

TEST(Basic, CanonicalOrderOfLowWeights) {
  const BasicSequence seq = basic_sequence(make_alphabet({"a", "t"}), 3);
  ASSERT_EQ(seq.size(), 5u);
  EXPECT_EQ(seq.to_string(0), "a");
  EXPECT_EQ(seq.to_string(1), "t");
  EXPECT_EQ(seq.to_string(2), "[t,a]");
  EXPECT_EQ(seq.to_string(3), "[[t,a],a]");
  EXPECT_EQ(seq.to_string(4), "[[t,a],t]");
}

TEST(Basic, SequenceSatisfiesTheBasicConditionsAndIsComplete) {
  const BasicSequence seq = basic_sequence(make_alphabet({"a", "t"}), 7);
  std::set<std::pair<std::size_t, std::size_t>> present;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto &b = seq[i];
    EXPECT_EQ(b.seq_index, i);
    if (b.is_leaf()) {
      EXPECT_EQ(b.weight, 1u);
      continue;
    }
    // (b_l, b_r) with r < l, weights adding up, and if b_l = (x, y) then y <= r.
    EXPECT_LT(b.right, b.left);
    EXPECT_LT(b.left, i);
    EXPECT_EQ(seq[b.left].weight + seq[b.right].weight, b.weight);
    if (!seq[b.left].is_leaf())
      EXPECT_LE(seq[b.left].right, b.right);
    present.insert({b.left, b.right});
    if (i > 0)
      EXPECT_GE(b.weight, seq[i - 1].weight);
  }
  // Every admissible pair up to weight 7 occurs.
  for (std::size_t l = 0; l < seq.size(); ++l)
    for (std::size_t r = 0; r < l; ++r) {
      if (seq[l].weight + seq[r].weight > 7)
        continue;
      if (!seq[l].is_leaf() && seq[l].right > r)
        continue;
      EXPECT_TRUE(present.count({l, r})) << l << "," << r;
    }
}

TEST(Basic, ExpansionMatchesBracketText) {
  const AlphabetPtr A = make_alphabet({"a", "t"});
  const BasicSequence seq = basic_sequence(A, 6);
  for (std::size_t i = 0; i < seq.size(); ++i)
    EXPECT_EQ(parse_word(seq.to_string(i), A), seq.expand(i)) << seq.to_string(i);
  EXPECT_EQ(seq.expand(2), parse_word("t^-1 a^-1 t a", A));
}

TEST(Basic, BudgetIsEnforced) {
  EXPECT_THROW(basic_sequence(make_alphabet({"a", "t"}), 12, 100), BudgetExceeded);
}
