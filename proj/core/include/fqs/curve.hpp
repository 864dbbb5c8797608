#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "fqs/bipoly.hpp"

namespace fqs {

/// (d, F) with F(T, X, 1) = f(t, x) and d the total degree of f.
std::pair<unsigned, HomForm> homogenize_and_degree(const BiPoly& f);

/// f(t, a t + b). Coefficients of f are mapped into the field of a and b when it is larger.
Poly restrict_to_line(const BiPoly& f, Fe a, Fe b, const FieldRef& field);
inline Poly restrict_to_line(const BiPoly& f, Fe a, Fe b) { return restrict_to_line(f, a, b, f.field()); }

/// Point (T : X : Z) scaled so that its last nonzero coordinate is 1.
struct ProjectivePoint {
    FieldRef field;
    std::array<Fe, 3> coords;

    static ProjectivePoint normalized(FieldRef field, std::array<Fe, 3> c);
    std::string to_string() const;
};

struct IrreducibilityCertificate {
    enum class Status { Irreducible, Reducible, Inconclusive };

    Status status = Status::Inconclusive;

    // Irreducible: the variable that was specialized ('t' or 'x'), the
    // specialization field F_{q^m} and value, and the irreducible image.
    char witness_var = 0;
    unsigned witness_extension = 0;
    std::optional<Fe> witness_value;
    FieldRef witness_field;
    std::optional<Poly> witness_poly;

    // Reducible: a nonconstant proper factor over the base field.
    std::optional<BiPoly> factor;
};

std::string_view to_string(IrreducibilityCertificate::Status s);

/// Certificate-producing irreducibility test over the coefficient field.
IrreducibilityCertificate bivariate_irreducible(const BiPoly& f);

/// Re-checks a certificate from scratch: specialization full-degree and
/// irreducible, or factor dividing f with nonconstant cofactor.
bool check_certificate(const BiPoly& f, const IrreducibilityCertificate& cert);

struct SmoothnessResult {
    bool smooth = true;
    std::optional<ProjectivePoint> singular_point;
};

/// Smoothness of the projective closure. Throws CharacteristicDividesDegree
/// when p | d and SmoothnessUndecided when no admissible coordinate change is found.
SmoothnessResult is_smooth(const BiPoly& f);

struct CurveReport {
    unsigned d = 0;
    bool char_ok = false;  // p does not divide d(d-1)
    bool smooth = false;
    IrreducibilityCertificate irreducible;
    std::optional<unsigned> genus;  // (d-1)(d-2)/2 when smooth
    unsigned dual_degree = 0;       // d(d-1)
    unsigned bad_line_bound = 0;    // (d(d-1)-1)(d(d-1)-2)/2
    std::optional<ProjectivePoint> singular_witness;
};

/// Rejects d = 1 with DegreeOutOfRange; propagates is_smooth errors.
CurveReport curve_invariants(const BiPoly& f);

}  // namespace fqs
