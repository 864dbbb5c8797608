#include <gtest/gtest.h>

#include "fqs/curve.hpp"
#include "fqs/error.hpp"
#include "smooth_oracle.hpp"
#include "test_util.hpp"

using namespace fqs;

namespace {

// Small builder: terms (i, j, c) meaning c t^i x^j with integer c.
BiPoly bp(const FieldRef& F, std::initializer_list<std::tuple<unsigned, unsigned, std::int64_t>> terms) {
    BiPoly f(F);
    for (auto [i, j, c] : terms) f.add_term(i, j, F->from_int(c));
    return f;
}

BiPoly conic(const FieldRef& F) { return bp(F, {{0, 2, 1}, {0, 1, 1}, {1, 0, -1}}); }
BiPoly fermat(const FieldRef& F) { return bp(F, {{3, 0, 1}, {0, 3, 1}, {0, 0, 1}}); }

bool is_singular_at(const BiPoly& f, const ProjectivePoint& pt) {
    auto [d, F] = homogenize_and_degree(f);
    HomForm G = F.mapped(Embedding(f.field(), pt.field));
    auto [T, X, Z] = pt.coords;
    return G.eval(T, X, Z).v == 0 && G.partial(0).eval(T, X, Z).v == 0 && G.partial(1).eval(T, X, Z).v == 0 &&
           G.partial(2).eval(T, X, Z).v == 0;
}

}  // namespace

TEST(BiPoly, HomogenizeExamples) {
    auto F7 = Field::make(7, 1);
    auto [d1, h1] = homogenize_and_degree(conic(F7));
    EXPECT_EQ(d1, 2u);
    EXPECT_EQ(h1.coeff({1, 0, 1}), F7->from_int(-1));
    EXPECT_EQ(h1.coeff({0, 1, 1}), F7->one());
    auto [d2, h2] = homogenize_and_degree(bp(F7, {{0, 12, 1}, {5, 0, 1}}));
    EXPECT_EQ(d2, 12u);
    EXPECT_EQ(h2.coeff({5, 0, 7}), F7->one());
    EXPECT_EQ(h2.coeff({0, 12, 0}), F7->one());
    expect_error(ErrorCode::ZeroOrConstant, [&] { homogenize_and_degree(bp(F7, {{0, 0, 3}})); });
}

TEST(BiPoly, HomogenizeRoundTrip) {
    auto F = Field::make(5, 2);
    std::mt19937_64 rng(17);
    for (int n = 0; n < 100; ++n) {
        BiPoly f(F);
        const int terms = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < terms; ++i) f.add_term(rng() % 6, rng() % 6, Fe{rng() % F->q()});
        if (f.total_degree() < 1) continue;
        const HomForm h = homogenize(f);
        EXPECT_EQ(h.dehomogenize(), f);
        for (const auto& [k, c] : h.terms()) EXPECT_EQ(k[0] + k[1] + k[2], static_cast<unsigned>(f.total_degree()));
    }
}

TEST(BiPoly, PrinterAndDivision) {
    auto F7 = Field::make(7, 1);
    EXPECT_EQ(conic(F7).to_string(), "x^2+6*t+x");
    EXPECT_EQ(fermat(F7).to_string(), "t^3+x^3+1");
    auto F9 = Field::make(3, 2);
    BiPoly g(F9);
    g.set_coeff(1, 1, F9->from_coeffs(std::vector<std::uint64_t>{1, 2}));
    EXPECT_EQ(g.to_string(), "2*t*x*y+t*x");

    BiPoly a = conic(F7), b = fermat(F7);
    auto q = divide_exact(a * b, b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, a);
    EXPECT_FALSE(divide_exact(b, a));
}

TEST(Restrict, Examples) {
    auto F7 = Field::make(7, 1);
    EXPECT_EQ(restrict_to_line(conic(F7), Fe{0}, Fe{0}), Poly::from_ints(F7, {0, -1}, 't'));
    EXPECT_EQ(restrict_to_line(bp(F7, {{0, 2, 1}, {1, 0, -1}}), Fe{1}, Fe{0}), Poly::from_ints(F7, {0, -1, 1}, 't'));
    EXPECT_EQ(restrict_to_line(conic(F7), Fe{1}, Fe{1}), Poly::from_ints(F7, {2, 2, 1}, 't'));
    // closed form a^2 t^2 + (2ab + a - 1) t + (b^2 + b)
    for (std::int64_t a = 0; a < 7; ++a) {
        for (std::int64_t b = 0; b < 7; ++b) {
            Poly expected = Poly::from_ints(F7, {b * b + b, 2 * a * b + a - 1, a * a}, 't');
            EXPECT_EQ(restrict_to_line(conic(F7), F7->from_int(a), F7->from_int(b)), expected);
        }
    }
}

TEST(Irreducibility, Examples) {
    using Status = IrreducibilityCertificate::Status;
    auto F7 = Field::make(7, 1), F5 = Field::make(5, 1);
    auto c1 = bivariate_irreducible(conic(F7));
    EXPECT_EQ(c1.status, Status::Irreducible);
    EXPECT_EQ(c1.witness_var, 't');
    EXPECT_EQ(c1.witness_value, Fe{1});
    EXPECT_TRUE(check_certificate(conic(F7), c1));

    auto c2 = bivariate_irreducible(fermat(F7));
    EXPECT_EQ(c2.status, Status::Irreducible);
    EXPECT_EQ(c2.witness_var, 't');
    EXPECT_EQ(c2.witness_value, Fe{1});

    BiPoly sq = bp(F5, {{0, 2, 1}, {2, 0, -1}});
    auto c3 = bivariate_irreducible(sq);
    ASSERT_EQ(c3.status, Status::Reducible);
    ASSERT_TRUE(c3.factor);
    EXPECT_TRUE(*c3.factor == bp(F5, {{0, 1, 1}, {1, 0, -1}}) || *c3.factor == bp(F5, {{0, 1, 1}, {1, 0, 1}}))
        << c3.factor->to_string();
    EXPECT_TRUE(check_certificate(sq, c3));
}

TEST(Irreducibility, ContentAndUnivariate) {
    using Status = IrreducibilityCertificate::Status;
    auto F3 = Field::make(3, 1);
    // t (x^2 + 1)
    auto c = bivariate_irreducible(bp(F3, {{1, 2, 1}, {1, 0, 1}}));
    EXPECT_EQ(c.status, Status::Reducible);
    EXPECT_EQ(bivariate_irreducible(bp(F3, {{0, 2, 1}, {0, 0, 1}})).status, Status::Irreducible);
    EXPECT_EQ(bivariate_irreducible(bp(F3, {{0, 2, 1}, {0, 0, 2}})).status, Status::Reducible);
}

// Products of two nonconstant polynomials must never be certified irreducible.
TEST(Irreducibility, NeverCertifiesProducts) {
    using Status = IrreducibilityCertificate::Status;
    std::mt19937_64 rng(2024);
    const std::uint64_t qs[] = {3, 5, 7, 4, 9};
    int reducible_found = 0;
    for (int n = 0; n < 1000; ++n) {
        auto F = Field::of_order(qs[n % 5]);
        auto rnd = [&](unsigned deg) {
            while (true) {
                BiPoly g(F);
                for (unsigned i = 0; i <= deg; ++i)
                    for (unsigned j = 0; i + j <= deg; ++j)
                        if (rng() % 2) g.set_coeff(i, j, Fe{rng() % F->q()});
                if (g.total_degree() >= 1) return g;
            }
        };
        BiPoly g = rnd(1 + rng() % 2), h = rnd(1 + rng() % 2);
        BiPoly f = g * h;
        auto cert = bivariate_irreducible(f);
        EXPECT_NE(cert.status, Status::Irreducible) << f.to_string();
        EXPECT_TRUE(check_certificate(f, cert)) << f.to_string();
        reducible_found += cert.status == Status::Reducible;
    }
    EXPECT_GT(reducible_found, 950);
}

TEST(Smoothness, Examples) {
    auto F7 = Field::make(7, 1);
    EXPECT_TRUE(is_smooth(conic(F7)).smooth);
    EXPECT_TRUE(is_smooth(fermat(F7)).smooth);

    BiPoly nodal = bp(F7, {{0, 2, 1}, {3, 0, -1}, {2, 0, -1}});
    auto r = is_smooth(nodal);
    EXPECT_FALSE(r.smooth);
    ASSERT_TRUE(r.singular_point);
    EXPECT_EQ(r.singular_point->to_string(), "(0:0:1)");

    BiPoly cusp = bp(F7, {{0, 2, 1}, {3, 0, -1}});
    auto c = is_smooth(cusp);
    EXPECT_FALSE(c.smooth);
    ASSERT_TRUE(c.singular_point);
    EXPECT_TRUE(is_singular_at(cusp, *c.singular_point));

    expect_error(ErrorCode::CharacteristicDividesDegree, [] {
        auto F2 = Field::make(2, 1);
        is_smooth(bp(F2, {{0, 2, 1}, {1, 0, 1}}));
    });
}

TEST(Smoothness, SingularPointsOverExtensions) {
    auto F5 = Field::make(5, 1);
    // t (x^2 + t^2 - 3): the line meets the conic at x = +-sqrt(3), which lives in F_25
    BiPoly f = bp(F5, {{0, 2, 1}, {2, 0, 1}, {0, 0, -3}}) * bp(F5, {{1, 0, 1}});
    auto r = is_smooth(f);
    ASSERT_FALSE(r.smooth);
    EXPECT_EQ(r.singular_point->field->q(), 25u);
    EXPECT_TRUE(is_singular_at(f, *r.singular_point));

    // a double line is singular everywhere along it
    BiPoly g = bp(F5, {{0, 1, 1}, {1, 0, 1}}) * bp(F5, {{0, 1, 1}, {1, 0, 1}, {0, 0, 1}});
    g = g * bp(F5, {{0, 1, 1}, {1, 0, 1}});
    auto s = is_smooth(g);
    ASSERT_FALSE(s.smooth);
    EXPECT_TRUE(is_singular_at(g, *s.singular_point));
}

TEST(Smoothness, InvariantUnderCoordinateChanges) {
    auto F7 = Field::make(7, 1);
    std::vector<BiPoly> battery{conic(F7), fermat(F7), bp(F7, {{0, 2, 1}, {3, 0, -1}, {2, 0, -1}}),
                                bp(F7, {{0, 2, 1}, {3, 0, -1}})};
    std::mt19937_64 rng(77);
    for (const auto& f : battery) {
        const bool expected = is_smooth(f).smooth;
        auto [d, F] = homogenize_and_degree(f);
        int done = 0;
        while (done < 10) {
            std::array<std::array<Fe, 3>, 3> m;
            std::vector<std::vector<Fe>> mm(3, std::vector<Fe>(3));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) mm[i][j] = m[i][j] = Fe{rng() % 7};
            if (oracle::determinant(*F7, mm).v == 0) continue;
            HomForm G = F.substituted(m);
            BiPoly g = G.dehomogenize();
            if (g.total_degree() != static_cast<int>(d)) continue;  // Z divides G
            ++done;
            EXPECT_EQ(is_smooth(g).smooth, expected) << f.to_string() << " -> " << g.to_string();
        }
    }
}

TEST(Smoothness, AgreesWithBruteForceOverF5) {
    auto F5 = Field::make(5, 1);
    std::mt19937_64 rng(5150);
    int singular = 0;
    for (int n = 0; n < 20; ++n) {
        BiPoly f = oracle::random_curve(F5, rng, n);
        auto r = is_smooth(f);
        std::optional<oracle::BrutePoint> brute;
        for (unsigned m : {4u, 5u, 6u}) {
            brute = oracle::brute_singular_point(homogenize(f), m);
            if (brute) break;
        }
        EXPECT_EQ(r.smooth, !brute.has_value()) << f.to_string();
        if (!r.smooth) {
            ++singular;
            EXPECT_TRUE(is_singular_at(f, *r.singular_point)) << f.to_string();
        }
    }
    EXPECT_GE(singular, 5);
    EXPECT_LE(singular, 15);
}

TEST(CurveInvariants, ClosedForms) {
    auto F7 = Field::make(7, 1);
    auto r3 = curve_invariants(fermat(F7));
    EXPECT_EQ(r3.genus, 1u);
    EXPECT_EQ(r3.dual_degree, 6u);
    EXPECT_EQ(r3.bad_line_bound, 10u);
    EXPECT_TRUE(r3.char_ok);
    auto r2 = curve_invariants(conic(F7));
    EXPECT_EQ(r2.genus, 0u);
    EXPECT_EQ(r2.dual_degree, 2u);
    EXPECT_EQ(r2.bad_line_bound, 0u);
    auto F13 = Field::make(13, 1);
    auto r4 = curve_invariants(bp(F13, {{4, 0, 1}, {0, 4, 1}, {0, 0, 1}}));
    EXPECT_EQ(r4.genus, 3u);
    EXPECT_EQ(r4.dual_degree, 12u);
    EXPECT_EQ(r4.bad_line_bound, 55u);
    auto nodal = curve_invariants(bp(F7, {{0, 2, 1}, {3, 0, -1}, {2, 0, -1}}));
    EXPECT_FALSE(nodal.smooth);
    EXPECT_FALSE(nodal.genus);
    EXPECT_TRUE(nodal.singular_witness);
    expect_error(ErrorCode::DegreeOutOfRange, [&] { curve_invariants(bp(F7, {{0, 1, 1}, {1, 0, 1}})); });
    // p | d - 1 is allowed here but flagged
    auto F3 = Field::make(3, 1);
    EXPECT_FALSE(curve_invariants(bp(F3, {{0, 4, 1}, {1, 0, 1}, {0, 0, 1}})).char_ok);
}
