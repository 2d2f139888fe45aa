#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "supergrass/constructors.hpp"
#include "supergrass/linmap.hpp"

using namespace supergrass;

namespace {

Element gen(int n, int i) { return Element::generator(n, i); }
Element mono(int n, std::initializer_list<int> idx) { return Element::monomial(n, Monomial::of(idx)); }

Endomorphism example_phi(int n) {
  return verify_relations(make_endomorphism({{1, -gen(n, 1) + Scalar(2) * mono(n, {2, 3, 4})}}, TailRule::identity(), n));
}

}  // namespace

TEST(Endomorphism, TailRulesFillUnlistedIndices) {
  const int n = 5;
  auto neg = make_endomorphism({{1, gen(n, 1)}}, TailRule::negation(), n);
  EXPECT_EQ(neg.image(1), gen(n, 1));
  EXPECT_EQ(neg.image(4), -gen(n, 4));
  auto pre = make_endomorphism({{1, -gen(n, 1)}, {2, -gen(n, 2)}}, TailRule::prefix_negation(Monomial::of({1, 2})), n);
  EXPECT_EQ(pre.image(3), -gen(n, 3) + Scalar(2) * mono(n, {1, 2, 3}));
  auto par = make_endomorphism({}, TailRule::parity_sign(), n);
  EXPECT_EQ(par.image(1), -gen(n, 1));
  EXPECT_EQ(par.image(2), gen(n, 2));
  EXPECT_THROW(make_endomorphism({}, TailRule::pair_swap(), n), InvalidArgument);
}

TEST(Endomorphism, RejectsMalformedInput) {
  const int n = 4;
  EXPECT_THROW(make_endomorphism({{5, gen(n, 1)}}, TailRule::identity(), n), IndexOutOfRange);
  EXPECT_THROW(make_endomorphism({{1, Element::one(n)}}, TailRule::identity(), n), InvalidArgument);
  EXPECT_THROW(make_endomorphism({{1, gen(3, 1)}}, TailRule::identity(), n), TruncationMismatch);
  EXPECT_THROW(make_endomorphism({}, TailRule::prefix_negation(Monomial::of({1})), n), InvalidArgument);
}

TEST(Endomorphism, VerifyRelationsCatchesFailures) {
  const int n = 4;
  auto bad = make_endomorphism({{1, mono(n, {1, 2})}, {3, mono(n, {3, 4})}}, TailRule::identity(), n);
  EXPECT_THROW(verify_relations(bad), RelationViolation);
  auto square = make_endomorphism({{1, gen(n, 1) + Element::monomial(n, Monomial::of({2, 3}))}}, TailRule::identity(), n);
  EXPECT_THROW(verify_relations(square), RelationViolation);
  EXPECT_THROW(apply(bad, gen(n, 1)), UnverifiedMap);
  EXPECT_NO_THROW(verify_relations(make_endomorphism({{1, gen(n, 1) + mono(n, {2, 3, 4})}}, TailRule::identity(), n)));
}

TEST(Endomorphism, ApplyIsMultiplicative) {
  std::mt19937_64 rng(3);
  const int n = 6;
  const Endomorphism phi = example_phi(n);
  for (int trial = 0; trial < 100; ++trial) {
    const Element a = oracle::random_element(rng, n, 5);
    const Element b = oracle::random_element(rng, n, 5);
    EXPECT_EQ(apply(phi, a * b), apply(phi, a) * apply(phi, b));
    EXPECT_EQ(apply(phi, a + b), apply(phi, a) + apply(phi, b));
  }
}

TEST(Endomorphism, ApplyMatchesOracleWordProduct) {
  const int n = 5;
  const Endomorphism phi = verify_relations(make_endomorphism(
      {{2, -gen(n, 2) + Scalar(2) * mono(n, {3, 4, 5})}, {1, gen(n, 1) + mono(n, {3, 4, 5})}}, TailRule::negation(), n));
  std::vector<Element> images(phi.images().begin(), phi.images().end());
  for (const auto& w : oracle::all_words(n)) {
    const Element m = Element::monomial(n, Monomial::of(std::span<const int>(w)));
    EXPECT_EQ(apply(phi, m), oracle::to_element(oracle::apply_to_word(images, w), n));
  }
}

TEST(Endomorphism, InvolutionChecks) {
  const int n = 6;
  EXPECT_TRUE(is_involution(example_phi(n)));
  EXPECT_TRUE(equal(compose(example_phi(n), example_phi(n)), verify_relations(identity_map(n))));
  auto unipotent = verify_relations(make_endomorphism({{1, gen(n, 1) + mono(n, {2, 3, 4})}}, TailRule::identity(), n));
  EXPECT_FALSE(is_involution(unipotent));
  EXPECT_EQ(involution_failure(unipotent), 1);
}

TEST(Endomorphism, InvariantFamilyIsFixed) {
  const int n = 6;
  const Endomorphism phi = example_phi(n);
  const InvariantFamily fam = invariant_family(phi);
  EXPECT_EQ(fam.b(1), mono(n, {2, 3, 4}));
  EXPECT_EQ(fam.c(1), gen(n, 1) - mono(n, {2, 3, 4}));
  EXPECT_EQ(apply(phi, fam.c(1)), -fam.c(1));
  for (int i = 2; i <= n; ++i) EXPECT_EQ(fam.b(i), gen(n, i));
  auto unipotent = verify_relations(make_endomorphism({{1, gen(n, 1) + mono(n, {2, 3, 4})}}, TailRule::identity(), n));
  EXPECT_THROW(invariant_family(unipotent), NotAnInvolution);
}

TEST(Endomorphism, LinearizeKeepsDegreeOneParts) {
  const int n = 6;
  const Endomorphism lin = linearize(example_phi(n));
  EXPECT_EQ(lin.image(1), -gen(n, 1));
  EXPECT_TRUE(is_involution(lin));
  const Grading pm = prop_minus(n);
  const Endomorphism pl = linearize(pm.phi());
  for (int i = 1; i <= n; ++i) EXPECT_EQ(pl.image(i), -gen(n, i));
  EXPECT_EQ(pl.tail().kind, TailKind::Negation);
}

TEST(Endomorphism, CompositionOrder) {
  const int n = 4;
  auto swap12 = verify_relations(make_endomorphism({{1, gen(n, 2)}, {2, gen(n, 1)}}, TailRule::identity(), n));
  auto neg1 = verify_relations(make_endomorphism({{1, -gen(n, 1)}}, TailRule::identity(), n));
  // (swap . neg1)(e1) = swap(-e1) = -e2
  EXPECT_EQ(compose(swap12, neg1).image(1), -gen(n, 2));
  EXPECT_EQ(compose(neg1, swap12).image(1), gen(n, 2));
}
