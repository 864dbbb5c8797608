#include <gtest/gtest.h>

#include "fqs/conrad.hpp"
#include "fqs/curve.hpp"
#include "fqs/error.hpp"
#include "test_util.hpp"

using namespace fqs;

TEST(Conrad, Instances) {
    auto c3 = conrad_polynomial(3);
    EXPECT_EQ(c3.b, 5u);
    EXPECT_EQ(c3.p, 3u);
    EXPECT_EQ(c3.f.to_string(), "x^12+t^5");
    auto c4 = conrad_polynomial(4);
    EXPECT_EQ(c4.b, 7u);
    EXPECT_EQ(c4.f.total_degree(), 16);
    EXPECT_EQ(c4.f.F().q(), 4u);
    EXPECT_EQ(conrad_polynomial(5, 7).b, 7u);

    expect_error(ErrorCode::ConstraintViolation, [] { conrad_polynomial(3, 6); });
    expect_error(ErrorCode::ConstraintViolation, [] { conrad_polynomial(3, 1); });
    expect_error(ErrorCode::ConstraintViolation, [] { conrad_polynomial(3, 12); });
    expect_error(ErrorCode::NotPrime, [] { conrad_polynomial(6); });
}

TEST(Conrad, Enumeration) {
    auto F3 = Field::make(3, 1);
    EXPECT_TRUE(enumerate_poly(F3, 2, 0).is_zero());
    EXPECT_EQ(enumerate_poly(F3, 2, 1), Poly::from_ints(F3, {1}, 't'));
    EXPECT_EQ(enumerate_poly(F3, 2, 3 * 2 + 1), Poly::from_ints(F3, {1, 2}, 't'));
    EXPECT_EQ(enumerate_poly(F3, 2, 26), Poly::from_ints(F3, {2, 2, 2}, 't'));
}

TEST(Conrad, AllValuesReducible) {
    auto c3 = conrad_polynomial(3);
    auto r2 = verify_conrad(c3, 2);
    EXPECT_EQ(r2.substitutions, 27u);
    EXPECT_EQ(r2.reducible, 27u);
    EXPECT_TRUE(r2.holds);
    EXPECT_TRUE(r2.counterexamples.empty());

    auto r4 = verify_conrad(c3, 4, ThreadMap(4));
    EXPECT_EQ(r4.substitutions, 243u);
    EXPECT_EQ(r4.reducible, 243u);
    EXPECT_TRUE(r4.holds);

    // f(t, 1) = t^5 + 1 = (t + 1)(t^4 - t^3 + t^2 - t + 1)
    auto F3 = c3.f.field();
    auto one = factor(Poly::from_ints(F3, {1, 0, 0, 0, 0, 1}, 't'));
    EXPECT_EQ(one.factors.front().poly, Poly::from_ints(F3, {1, 1}, 't'));
}

TEST(Conrad, CharacteristicTwo) {
    auto c4 = conrad_polynomial(4);
    auto r = verify_conrad(c4, 2);
    EXPECT_EQ(r.substitutions, 64u);
    EXPECT_TRUE(r.holds);
    auto c2 = conrad_polynomial(2);
    EXPECT_EQ(c2.b, 3u);
    EXPECT_TRUE(verify_conrad(c2, 4).holds);
}

TEST(Conrad, NegativeControl) {
    auto F7 = Field::make(7, 1);
    BiPoly f(F7);
    f.add_term(0, 2, F7->one());
    f.add_term(0, 1, F7->one());
    f.add_term(1, 0, F7->from_int(-1));
    auto r = verify_conrad(f, 1);
    EXPECT_EQ(r.substitutions, 49u);
    EXPECT_FALSE(r.holds);
    ASSERT_FALSE(r.counterexamples.empty());
    for (const auto& c : r.counterexamples) {
        EXPECT_EQ(c.cls, ValueClass::Irreducible);
        EXPECT_TRUE(is_irreducible(c.value));
    }
    // g = b constant gives b^2 + b - t, linear and irreducible
    EXPECT_EQ(r.counterexamples.front().g, Poly::from_ints(F7, {0}, 't'));
    // 7 linear values plus 18 irreducible quadratics, as in the pair count
    EXPECT_EQ(r.irreducible, 25u);
}

TEST(Conrad, CurveItselfIrreducibleWhenDecided) {
    for (std::uint64_t q : {2ull, 3ull}) {
        auto c = conrad_polynomial(q);
        auto cert = bivariate_irreducible(c.f);
        EXPECT_NE(cert.status, IrreducibilityCertificate::Status::Reducible) << q;
        if (cert.status == IrreducibilityCertificate::Status::Irreducible) EXPECT_TRUE(check_certificate(c.f, cert));
    }
}
