#include "nqkit/basic.hpp"
#include "nqkit/error.hpp"
#include "nqkit/fixtures.hpp"
#include "nqkit/lcs.hpp"
#include "nqkit/magnus.hpp"
#include "nqkit/nq.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace nqkit;
using nqkit::testing::random_word;

namespace {

Presentation pres(const char *text) { return parse_presentation(text); }

Integer group_size(const NilpotentPresentation &np) {
  Integer n = 1;
  for (std::size_t g = 0; g < np.size(); ++g) {
    if (!np.pc().finite(g))
      return 0;
    n *= np.pc().relative_orders[g];
  }
  return n;
}

const char *kSmallFixtures[] = {"free2", "hydra-k2", "hydra-k3", "theorem7", "example1-k3-l1",
                                "example2-k4-s1", "remark-k3", "two-relator-mixed"};

} // namespace

TEST(Nq, FreeGroupRanksAreWittNumbers) {
  const NilpotentPresentation np = nilpotent_quotient(load_fixture("free2"), 6);
  for (unsigned k = 1; k <= 6; ++k) {
    const auto f = factor_structure(np, k);
    EXPECT_TRUE(f.torsion.empty());
    EXPECT_EQ(Integer(f.free_rank), witt_number(2, k));
  }
  const NilpotentPresentation np3 = nilpotent_quotient(load_fixture("free3"), 4);
  for (unsigned k = 1; k <= 4; ++k)
    EXPECT_EQ(Integer(factor_structure(np3, k).free_rank), witt_number(3, k));
}

TEST(Nq, PresentationsAreConsistentAndKillRelators) {
  for (const char *name : kSmallFixtures) {
    const Presentation p = load_fixture(name);
    // The exhaustive test is cubic in the number of pc generators.
    const NilpotentPresentation np = nilpotent_quotient(p, 4);
    EXPECT_TRUE(check_consistency(np.pc()).empty()) << name;
    for (const Word &r : p.relators())
      EXPECT_TRUE(is_zero(np.image(r))) << name << ": " << r.to_string();
  }
}

TEST(Nq, ExhaustiveVerificationAgrees) {
  NqOptions opts;
  opts.exhaustive_check = true;
  const Presentation p = load_fixture("theorem7");
  EXPECT_EQ(factor_structures(nilpotent_quotient(p, 8, opts)),
            factor_structures(nilpotent_quotient(p, 8)));
}

TEST(Nq, ImageIsAHomomorphism) {
  const Presentation p = load_fixture("theorem7");
  const NilpotentPresentation np = nilpotent_quotient(p, 6);
  Collector col = np.collector();
  std::mt19937 rng(21);
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(p.alphabet(), 10, rng), v = random_word(p.alphabet(), 10, rng);
    EXPECT_EQ(np.image(u * v), col.product(np.image(u), np.image(v)));
    EXPECT_EQ(np.image(u.inverse()), col.inverse(np.image(u)));
    EXPECT_EQ(np.image(conjugate(u, v)), col.conjugate(np.image(u), np.image(v)));
  }
}

TEST(Nq, CollectorIsAssociative) {
  const NilpotentPresentation np = nilpotent_quotient(load_fixture("free2"), 5);
  Collector col = np.collector();
  std::mt19937 rng(22);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int i = 0; i < 100; ++i) {
    ExponentVector x(np.size()), y(np.size()), z(np.size());
    for (std::size_t g = 0; g < np.size(); ++g) {
      x[g] = e(rng);
      y[g] = e(rng);
      z[g] = e(rng);
    }
    EXPECT_EQ(col.product(col.product(x, y), z), col.product(x, col.product(y, z)));
    EXPECT_TRUE(is_zero(col.product(x, col.inverse(x))));
    EXPECT_EQ(col.power(x, 3), col.product(x, col.product(x, x)));
  }
}

TEST(Nq, FiniteGroupsHaveTheRightOrder) {
  // Dihedral and quaternion groups of order 8 have class 2.
  const NilpotentPresentation d8 = nilpotent_quotient(pres("gens: a, b\nrel: a^2\nrel: b^2\nrel: (a b)^4\n"), 4);
  EXPECT_EQ(group_size(d8), 8);
  EXPECT_EQ(element_order(d8, parse_word("a b", d8.source_alphabet())).value, 4);
  const NilpotentPresentation q8 =
      nilpotent_quotient(pres("gens: a, b\nrel: a^4\nrel: a^2 = b^2\nrel: a^b = a^-1\n"), 4);
  EXPECT_EQ(group_size(q8), 8);
  EXPECT_EQ(element_order(q8, parse_word("b", q8.source_alphabet())).value, 4);
  // Z/2 x Z/3 abelianizes to Z/6.
  const NilpotentPresentation z6 = nilpotent_quotient(pres("gens: a, b\nrel: a^2\nrel: b^3\nrel: [a,b]\n"), 2);
  EXPECT_EQ(factor_structure(z6, 1).to_string(), "Z/6");
  EXPECT_EQ(group_size(z6), 6);
  // Class 2 quotient of < a, b | a^4, b^4 > has order 4 * 4 * 4.
  const NilpotentPresentation c2 = nilpotent_quotient(pres("gens: a, b\nrel: a^4\nrel: b^4\n"), 2);
  EXPECT_EQ(group_size(c2), 64);
}

TEST(Nq, HeisenbergGroup) {
  const Presentation p = pres("gens: x, y\nrel: [x,y,x]\nrel: [x,y,y]\n");
  const NilpotentPresentation np = nilpotent_quotient(p, 4);
  EXPECT_EQ(np.size(), 3u);
  EXPECT_EQ(factor_structure(np, 3).to_string(), "0");
  EXPECT_EQ(np.nilpotency_class(), 4u);
}

TEST(Nq, DefinitionsDescribeGenerators) {
  const NilpotentPresentation np = nilpotent_quotient(load_fixture("free2"), 3);
  ASSERT_EQ(np.size(), 5u);
  EXPECT_EQ(np.definition_text(0), "a");
  EXPECT_EQ(np.definition_text(1), "t");
  EXPECT_EQ(np.definitions()[2].kind, Definition::Kind::commutator);
  EXPECT_EQ(np.pc().weights, (std::vector<unsigned>{1, 1, 2, 3, 3}));
}

TEST(Nq, TheoremSevenQuotientHasOneTorsionFactor) {
  const NilpotentPresentation np = nilpotent_quotient(load_fixture("theorem7"), 6);
  const char *expected[] = {"Z^2", "Z", "Z", "Z", "Z", "Z/2"};
  for (unsigned k = 1; k <= 6; ++k)
    EXPECT_EQ(factor_structure(np, k).to_string(), expected[k - 1]) << k;
}

TEST(Nq, HydraTwoHasCyclicFactorsAtLowClass) {
  // G(2) = < a, t | [a,t,t] >: gamma_2/gamma_3 and gamma_3/gamma_4 are Z.
  const NilpotentPresentation np = nilpotent_quotient(load_fixture("hydra-k2"), 3);
  EXPECT_EQ(factor_structure(np, 1).free_rank, 2u);
  EXPECT_EQ(factor_structure(np, 2).free_rank, 1u);
  EXPECT_EQ(factor_structure(np, 3).free_rank, 1u);
}

TEST(Nq, TruncationAgreesWithDirectComputation) {
  for (const char *name : kSmallFixtures) {
    const Presentation p = load_fixture(name);
    const NilpotentPresentation top = nilpotent_quotient(p, 5);
    for (unsigned c = 1; c <= 4; ++c) {
      const NilpotentPresentation direct = nilpotent_quotient(p, c);
      const NilpotentPresentation cut = top.truncated(c);
      EXPECT_EQ(factor_structures(direct), factor_structures(cut)) << name << " c=" << c;
      EXPECT_EQ(direct.size(), cut.size());
      EXPECT_TRUE(check_consistency(cut.pc()).empty());
    }
  }
}

TEST(Nq, ExtendClassStepsMatchDirectComputation) {
  const Presentation p = load_fixture("theorem7");
  NilpotentPresentation np(p.alphabet());
  for (unsigned c = 1; c <= 6; ++c) {
    np = extend_class(np, p);
    EXPECT_EQ(np.nilpotency_class(), c);
    EXPECT_EQ(factor_structures(np), factor_structures(nilpotent_quotient(p, c)));
  }
}

TEST(Nq, MagnusWeightPredictsTriviality) {
  // w lies in gamma_{n+1}(F) exactly when its class-n image is trivial.
  const Presentation p = load_fixture("free2");
  const NilpotentPresentation top = nilpotent_quotient(p, 5);
  std::vector<NilpotentPresentation> byClass;
  for (unsigned n = 1; n <= 5; ++n)
    byClass.push_back(top.truncated(n));
  std::mt19937 rng(23);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Word w = random_word(p.alphabet(), 8, rng);
    // Mix in commutators so deep words are common.
    if (i % 2)
      w = commutator(random_word(p.alphabet(), 4, rng), commutator(random_word(p.alphabet(), 3, rng), random_word(p.alphabet(), 3, rng)));
    const WordWeight wt = weight_of(w, 6);
    for (unsigned n = 1; n <= 5; ++n) {
      const bool deep = wt.kind != WordWeight::Kind::finite || wt.value >= n + 1;
      EXPECT_EQ(deep, is_zero(byClass[n - 1].image(w))) << w.to_string() << " n=" << n;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(Nq, ErrorsAndBudgets) {
  const Presentation p = load_fixture("free2");
  EXPECT_THROW(nilpotent_quotient(p, 0), DomainError);
  NqOptions tight;
  tight.max_generators = 10;
  EXPECT_THROW(nilpotent_quotient(p, 6, tight), BudgetExceeded);
  tight = {};
  tight.max_class = 3;
  EXPECT_THROW(nilpotent_quotient(p, 4, tight), BudgetExceeded);
}
