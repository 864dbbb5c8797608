#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fqs/bipoly.hpp"
#include "fqs/parallel.hpp"

namespace fqs {

struct AffinePoint {
    Fe t;
    Fe x;
    friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

/// Point of the pencil line P^1: the line x - x0 = u (t - t0), or the vertical
/// line t = t0 when `infinity` is set.
struct PencilParam {
    bool infinity = false;
    Fe u{};

    static PencilParam finite(Fe u) { return {false, u}; }
    static PencilParam at_infinity() { return {true, Fe{0}}; }
};

/// Factorization type of the intersection of a pencil line with the curve:
/// (residue degree, multiplicity) pairs in increasing order.
struct FiberPattern {
    std::vector<std::pair<unsigned, unsigned>> parts;

    bool ramified() const noexcept;
    unsigned total() const noexcept;
    /// Parts joined by '+', multiplicities as exponents: "1+1", "2", "1^2".
    std::string to_string() const;

    friend auto operator<=>(const FiberPattern&, const FiberPattern&) = default;
};

/// Projection of a plane curve from the base point M, over `field`.
struct Pencil {
    BiPoly curve;  // coefficients in `field`
    FieldRef field;
    AffinePoint M;
    unsigned d = 0;
    /// family[j] is the coefficient of s^j in f(t0 + s, x0 + u s), a polynomial in u of degree <= j.
    std::vector<Poly> family;
    /// Affine chart u0 = 1 of the discriminant form of degree d(d-1) in (u0 : u1).
    Poly delta;
    unsigned form_degree = 0;
    /// Multiplicity of u = infinity as a root of the form (0 when delta is zero).
    unsigned infinity_multiplicity = 0;
    /// Monic squarefree part of delta, and its irreducible factors with their
    /// multiplicity in delta.
    Poly radical;
    std::vector<Factor> branch_factors;
    bool generic = false;

    bool infinity_branch() const noexcept { return infinity_multiplicity > 0; }
    /// Number of distinct branch parameters over the algebraic closure.
    unsigned branch_degree() const noexcept;
};

/// Throws BasePointOnCurve when f(M) = 0 and CharacteristicObstruction when p | d(d-1).
Pencil pencil_discriminant(const BiPoly& f, AffinePoint M, const FieldRef& field);

bool is_generic_point(const BiPoly& f, AffinePoint M, const FieldRef& field);

/// True when the two pencils (same M, same field) have no common branch parameter.
bool branch_loci_disjoint(const Pencil& a, const Pencil& b);

/// Candidates below this many trials follow (t0, x0) element order; later ones are seeded random.
inline constexpr std::uint64_t kExhaustiveTrials = 4096;

/// First `count` base points, in search order, that are generic for every curve
/// and give pairwise disjoint branch loci. Throws GenericPointNotFound once
/// `trial_budget` candidates have been examined without collecting `count` points.
std::vector<AffinePoint> find_generic_points(const std::vector<BiPoly>& curves, const FieldRef& field,
                                             std::size_t count, std::uint64_t trial_budget, std::uint64_t seed);
AffinePoint find_generic_point(const std::vector<BiPoly>& curves, const FieldRef& field, std::uint64_t trial_budget,
                               std::uint64_t seed);

FiberPattern fiber_pattern(const Pencil& pd, PencilParam u);

struct PatternHistogram {
    using Key = std::vector<FiberPattern>;  // one pattern per pencil
    std::map<Key, std::uint64_t> unramified;
    std::map<Key, std::uint64_t> ramified_patterns;
    std::uint64_t ramified = 0;
    std::uint64_t total = 0;
    /// Pattern over the vertical line through M (the parameter x0).
    Key x0_pattern;

    std::uint64_t count(const Key& k) const;
};

/// Every unramified pattern key for curves of the given degrees: one partition
/// of each d_i, i.e. the cycle types of S_{d_1} x ... x S_{d_n}.
std::vector<PatternHistogram::Key> cycle_type_classes(const std::vector<unsigned>& degrees);

/// Tallies fibre patterns over every u in P^1(field). With several pencils
/// (same M and field) a parameter is ramified when it is ramified for any of them.
PatternHistogram pattern_histogram(const std::vector<Pencil>& pencils, const ParallelMap& pm = serial_map());

}  // namespace fqs
