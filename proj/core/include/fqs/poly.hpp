#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fqs/field.hpp"

namespace fqs {

/// Dense univariate polynomial over a finite field, coefficients low-to-high.
/// The coefficient vector never carries trailing zeros; the zero polynomial is empty.
class Poly {
   public:
    explicit Poly(FieldRef field, char var = 'x') : field_(std::move(field)), var_(var) {}
    Poly(FieldRef field, std::vector<Fe> coeffs, char var = 'x');

    static Poly constant(FieldRef field, Fe c, char var = 'x');
    static Poly monomial(FieldRef field, Fe c, unsigned degree, char var = 'x');
    /// The polynomial "var".
    static Poly identity(FieldRef field, char var = 'x');
    /// Builds from small integers, low-to-high, reduced into the prime field.
    static Poly from_ints(FieldRef field, std::initializer_list<std::int64_t> coeffs, char var = 'x');

    const FieldRef& field() const noexcept { return field_; }
    const Field& F() const noexcept { return *field_; }
    char var() const noexcept { return var_; }
    void set_var(char v) noexcept { var_ = v; }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == field_->one(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    Fe lead() const noexcept { return c_.empty() ? Fe{0} : c_.back(); }
    Fe operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Fe{0}; }
    const std::vector<Fe>& coeffs() const noexcept { return c_; }

    void set_coeff(std::size_t i, Fe c);
    Fe eval(Fe x) const noexcept;

    Poly monic() const;
    Poly derivative() const;
    Poly scaled(Fe c) const;
    /// p(var + c).
    Poly shifted(Fe c) const;
    /// Coefficients mapped into a larger field.
    Poly mapped(const Embedding& emb) const;

    std::string to_string() const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);
    friend Poly operator%(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }

   private:
    void trim() noexcept {
        while (!c_.empty() && c_.back().v == 0) c_.pop_back();
    }

    FieldRef field_;
    std::vector<Fe> c_;
    char var_;
};

/// Degree first, then coefficients from the highest index down.
std::strong_ordering compare(const Poly& a, const Poly& b) noexcept;

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct Xgcd {
    Poly g;  // monic
    Poly s;
    Poly t;  // s a + t b = g
};
Xgcd xgcd(const Poly& a, const Poly& b);

Poly pow(const Poly& base, std::uint64_t e);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

// ---------------------------------------------------------------------------
// Resultants

/// Res(f, g) = lc(f)^deg g * prod g(alpha) over the roots alpha of f.
Fe resultant(const Poly& f, const Poly& g);
/// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f), with f' taken at formal degree d-1.
/// Throws InseparableInput when f' = 0 and DegreeOutOfRange when deg f < 2.
Fe discriminant(const Poly& f);

struct ResultantDiscriminant {
    Fe resultant;
    Fe discriminant;
};
ResultantDiscriminant resultant_discriminant(const Poly& f, const Poly& g);

/// Determinant of a square matrix over F[u] by fraction-free elimination.
Poly determinant(std::vector<std::vector<Poly>> m);

/// Sylvester resultant of two polynomials in an auxiliary variable whose
/// coefficients (low-to-high) live in F[u], taken at formal degrees m and n.
Poly sylvester_resultant(const std::vector<Poly>& a, unsigned m, const std::vector<Poly>& b, unsigned n);

/// Discriminant of a binary form of formal degree d = coeffs.size() - 1 with
/// coefficients in F[u]; coeffs.back() must be a nonzero polynomial.
Poly form_discriminant(const std::vector<Poly>& coeffs);

// ---------------------------------------------------------------------------
// Factorization

using Rng = std::mt19937_64;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

struct Factor {
    Poly poly;
    unsigned multiplicity;
};

struct Factorization {
    Fe unit;
    std::vector<Factor> factors;  // monic irreducible, canonical order

    Poly expand(const FieldRef& field) const;
    /// True when there is exactly one factor of multiplicity one.
    bool single_irreducible() const noexcept {
        return factors.size() == 1 && factors.front().multiplicity == 1;
    }
};

/// Rabin's test; throws ZeroOrConstant for deg f < 1.
bool is_irreducible(const Poly& f);

/// Complete factorization. Equal-degree splitting draws from a stream seeded
/// with `seed`; the returned content does not depend on it.
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultSeed);

/// Coprime pieces (g_i, m_i) with f = lc * prod g_i^{m_i}, each g_i squarefree.
std::vector<Factor> squarefree_decomposition(const Poly& f);
/// Monic product of the distinct irreducible factors.
Poly squarefree_part(const Poly& f);
/// Input squarefree and monic; pieces whose irreducible factors share a degree.
std::vector<Factor> distinct_degree(const Poly& f);
/// Splits a squarefree monic f whose factors all have degree d.
std::vector<Poly> equal_degree(const Poly& f, unsigned d, Rng& rng);

/// Distinct roots in the coefficient field, increasing element order.
std::vector<Fe> roots(const Poly& f, std::uint64_t seed = kDefaultSeed);

Poly random_poly(const FieldRef& field, unsigned max_degree, Rng& rng, char var = 'x');

}  // namespace fqs
