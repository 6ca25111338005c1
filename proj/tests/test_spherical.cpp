#include <gtest/gtest.h>

#include <random>

#include "ramify/construction.hpp"
#include "ramify/spherical.hpp"
#include "ramify/verify.hpp"

using namespace ramify;

namespace {

GeneratingTuple T(std::vector<std::string> s) { return GeneratingTuple::parse(s); }

RejectReason reason_of(const std::variant<RamificationStructure, Rejection> &r) {
  return std::get<Rejection>(r).reason;
}

} // namespace

TEST(Spherical, BasicSystem) {
  const GroupContext g(3);
  EXPECT_TRUE(is_spherical_system(T({"100", "010", "001", "111"}), g));
  EXPECT_FALSE(is_spherical_system(T({"100", "010", "110"}), g)); // span 2
  EXPECT_FALSE(is_spherical_system(T({"100", "010", "001"}), g)); // sum nonzero
  EXPECT_THROW(is_spherical_system(T({"000", "100", "100"}), g), InvalidInput);
}

TEST(Spherical, UnorderedTypeString) {
  EXPECT_EQ(UnorderedType::involutions(12).to_string(), "(2^12)");
  EXPECT_EQ(UnorderedType::of(T({"100", "010", "001", "111"})).size(), 4u);
}

TEST(Spherical, SigmaSetIsEntriesPlusZero) {
  const auto t = T({"100", "010", "001", "111"});
  const auto s = sigma_set(t);
  EXPECT_EQ(s.size(), 5u);
  EXPECT_TRUE(s.count(GroupElement::zero(3)));
  EXPECT_EQ(s, sigma_set_literal(t));
  EXPECT_TRUE(are_disjoint(t, T({"110", "101", "011"})));
  EXPECT_FALSE(are_disjoint(t, T({"100", "010", "110"})));
}

TEST(Spherical, SigmaSetLiteralAgreesOnRandomSystems) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const unsigned k = 1 + rng() % 5;
    const auto t = verify::gen::spherical(rng, k, k + 1 + rng() % 5);
    EXPECT_EQ(sigma_set(t), sigma_set_literal(t));
  }
}

TEST(Spherical, RiemannHurwitz) {
  EXPECT_EQ(genus_from_type(8, UnorderedType::involutions(12)), Rational(17));
  EXPECT_EQ(genus_from_type(8, UnorderedType::involutions(4)), Rational(1));
  EXPECT_EQ(genus_from_type(2, UnorderedType::involutions(3)), Rational(1, 2));
  // Big group orders stay exact.
  const BigInt big = BigInt(1) << 100;
  EXPECT_EQ(genus_from_type(big, UnorderedType::involutions(6)), Rational(big / 2 + 1));
}

TEST(Validate, FamilyMemberInvariants) {
  const auto s = build_family(FamilyParams(3, 5)).collect().front();
  const auto &inv = s.invariants();
  EXPECT_EQ(inv.genus_1, 17);
  EXPECT_EQ(inv.genus_2, 17);
  EXPECT_EQ(inv.chi, 32);
  EXPECT_EQ(inv.K2, 256);
  EXPECT_EQ(inv.euler, 128);
  EXPECT_EQ(inv.irregularity, 0);
  EXPECT_EQ((inv.genus_1 - 1) * (inv.genus_2 - 1), 8 * inv.chi);
}

TEST(Validate, RejectionReasons) {
  const GroupContext g(3);
  const auto good1 = build_T1(3);
  const auto good2 = build_family(FamilyParams(3, 5)).collect().front().T2();

  EXPECT_TRUE(std::holds_alternative<RamificationStructure>(validate_ramification(good1, good2, g)));
  // Four involutions on (Z/2)^3 give genus 1.
  EXPECT_EQ(reason_of(validate_ramification(T({"100", "010", "001", "111"}), good2, g)),
            RejectReason::genus_below_two);
  // Seven entries: genus 2^3 (7/2 - 2)/2 + 1 = 7, integral; product nonzero.
  EXPECT_EQ(reason_of(validate_ramification(T({"100", "010", "001", "111", "110", "110", "110"}),
                                            good2, g)),
            RejectReason::product_nonzero);
  EXPECT_EQ(reason_of(validate_ramification(T({"100", "100", "010", "010", "110", "110"}), good2, g)),
            RejectReason::not_generating);
  EXPECT_EQ(reason_of(validate_ramification(good1, good1, g)), RejectReason::not_disjoint);
  EXPECT_EQ(reason_of(validate_ramification(T({"000", "100", "100"}), good2, g)),
            RejectReason::invalid_input);
  EXPECT_EQ(reason_of(validate_ramification(T({"10", "01", "11"}), good2, g)), RejectReason::invalid_input);
  // On (Z/2)^1 a triple has genus 1/2.
  EXPECT_EQ(reason_of(validate_ramification(T({"1", "1", "1"}), T({"1", "1", "1"}), GroupContext(1))),
            RejectReason::genus_not_integral);
}

TEST(Validate, RejectionSidesAndThrowingForm) {
  const GroupContext g(3);
  const auto good1 = build_T1(3);
  const auto r = validate_ramification(good1, T({"100", "010", "001", "111"}), g);
  EXPECT_EQ(std::get<Rejection>(r).side, 2);
  EXPECT_THROW(validate_or_throw(good1, good1, g), InvalidInput);
}

TEST(Validate, ChiFormulasAgreeOnRandomStructures) {
  // Random disjoint pairs: both chi formulas are checked inside validation.
  std::mt19937_64 rng(9);
  int found = 0;
  for (int i = 0; i < 4000 && found < 50; ++i) {
    const unsigned k = 2 + rng() % 3;
    const auto a = verify::gen::spherical(rng, k, 5 + rng() % 5);
    const auto b = verify::gen::spherical(rng, k, 5 + rng() % 5);
    auto r = validate_ramification(a, b, GroupContext(k));
    if (auto *s = std::get_if<RamificationStructure>(&r)) {
      const auto &inv = s->invariants();
      EXPECT_EQ((inv.genus_1 - 1) * (inv.genus_2 - 1), static_cast<std::int64_t>(1u << k) * inv.chi);
      EXPECT_EQ(inv.K2, 8 * inv.chi);
      EXPECT_EQ(inv.euler, 4 * inv.chi);
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}
