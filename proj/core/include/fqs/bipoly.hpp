#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqs/field.hpp"
#include "fqs/poly.hpp"

namespace fqs {

/// Sparse polynomial sum c_ij t^i x^j over a finite field. Zero coefficients are never stored.
class BiPoly {
   public:
    using Key = std::pair<unsigned, unsigned>;  // (t exponent, x exponent)

    explicit BiPoly(FieldRef field) : field_(std::move(field)) {}

    /// sum_j coeffs[j](t) x^j
    static BiPoly from_x_coeffs(FieldRef field, const std::vector<Poly>& coeffs);
    /// sum_i coeffs[i](x) t^i
    static BiPoly from_t_coeffs(FieldRef field, const std::vector<Poly>& coeffs);
    /// Univariate polynomial read as a polynomial in t (var 't') or x (any other label).
    static BiPoly from_univariate(const Poly& p, char var);

    const FieldRef& field() const noexcept { return field_; }
    const Field& F() const noexcept { return *field_; }
    const std::map<Key, Fe>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const noexcept;
    int degree_t() const noexcept;
    int degree_x() const noexcept;

    Fe coeff(unsigned i, unsigned j) const noexcept;
    void set_coeff(unsigned i, unsigned j, Fe c);
    void add_term(unsigned i, unsigned j, Fe c);

    Fe eval(Fe t, Fe x) const noexcept;

    /// Coefficients of x^j as polynomials in t.
    std::vector<Poly> x_coeffs() const;
    /// Coefficients of t^i as polynomials in x.
    std::vector<Poly> t_coeffs() const;
    /// f(c, x) as a polynomial in x.
    Poly at_t(Fe c) const;
    /// f(t, c) as a polynomial in t.
    Poly at_x(Fe c) const;

    BiPoly swapped() const;
    BiPoly d_dt() const;
    BiPoly d_dx() const;
    /// Coefficients mapped into a larger field.
    BiPoly mapped(const Embedding& emb) const;
    /// Same coefficients in `field`, which must be the field itself or an extension of it.
    BiPoly over(const FieldRef& field) const;

    /// Terms ordered by (total degree, t-degree) descending; coefficients of a
    /// proper extension are written out in powers of the generator y.
    std::string to_string() const;

    BiPoly& operator+=(const BiPoly& rhs);
    BiPoly& operator-=(const BiPoly& rhs);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) noexcept { return a.terms_ == b.terms_; }

   private:
    FieldRef field_;
    std::map<Key, Fe> terms_;
};

/// Exact quotient a / b when b divides a in F[t, x].
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);

/// Homogeneous form of degree d in (T, X, Z).
class HomForm {
   public:
    using Key = std::array<unsigned, 3>;  // exponents of T, X, Z

    HomForm(FieldRef field, unsigned degree) : field_(std::move(field)), degree_(degree) {}

    const FieldRef& field() const noexcept { return field_; }
    const Field& F() const noexcept { return *field_; }
    unsigned degree() const noexcept { return degree_; }
    const std::map<Key, Fe>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Fe coeff(const Key& k) const noexcept;
    void add_term(const Key& k, Fe c);

    Fe eval(Fe T, Fe X, Fe Z) const noexcept;
    /// Partial derivative in variable 0 (T), 1 (X) or 2 (Z); degree drops by one.
    HomForm partial(int var) const;
    /// F(sum_j m[0][j] v_j, sum_j m[1][j] v_j, sum_j m[2][j] v_j) with v = (T, X, Z).
    HomForm substituted(const std::array<std::array<Fe, 3>, 3>& m) const;
    HomForm mapped(const Embedding& emb) const;
    /// F(T, X, 1).
    BiPoly dehomogenize() const;
    /// The univariate polynomial X -> F(T0, X, Z0).
    Poly restrict_x(Fe T0, Fe Z0) const;

    std::string to_string() const;

    friend bool operator==(const HomForm& a, const HomForm& b) noexcept {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

   private:
    FieldRef field_;
    unsigned degree_;
    std::map<Key, Fe> terms_;
};

/// Projective closure; throws ZeroOrConstant for constant input.
HomForm homogenize(const BiPoly& f);

}  // namespace fqs
