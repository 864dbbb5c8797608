#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fqs/bipoly.hpp"
#include "fqs/parallel.hpp"

namespace fqs {

/// f = x^{4q} + t^b over F_q with 1 < b < 4q and gcd(b, p(q-1)) = 1.
struct ConradInstance {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    std::uint64_t b = 0;
    BiPoly f;
};

/// Default exponent b = 2q - 1. Throws NotPrime or ConstraintViolation.
ConradInstance conrad_polynomial(std::uint64_t q, std::optional<std::uint64_t> b = std::nullopt);

enum class ValueClass { Zero, Unit, Irreducible, Reducible };
std::string_view to_string(ValueClass c);

struct ConradValue {
    Poly g;      // substituted for x
    Poly value;  // f(t, g(t))
    ValueClass cls;
};

struct ConradReport {
    unsigned D = 0;
    std::uint64_t substitutions = 0;  // q^{D+1}
    std::uint64_t zero = 0;
    std::uint64_t unit = 0;
    std::uint64_t irreducible = 0;
    std::uint64_t reducible = 0;
    /// Every value f(t, g) is reducible (at least two irreducible factors counted with multiplicity).
    bool holds = false;
    /// Values that are not reducible, in enumeration order, at most `max_listed` of them.
    std::vector<ConradValue> counterexamples;
};

inline constexpr std::size_t kMaxListedCounterexamples = 16;

/// Substitutes every g in F_q[t] with deg g <= D (zero and constants included)
/// and classifies f(t, g(t)) by factoring it.
ConradReport verify_conrad(const BiPoly& f, unsigned D, const ParallelMap& pm = serial_map(),
                           std::size_t max_listed = kMaxListedCounterexamples);
inline ConradReport verify_conrad(const ConradInstance& inst, unsigned D, const ParallelMap& pm = serial_map()) {
    return verify_conrad(inst.f, D, pm);
}

/// The index-th polynomial of degree <= D in enumeration order: coefficient of
/// t^i is the element with index digit i of `index` in base q.
Poly enumerate_poly(const FieldRef& field, unsigned D, std::uint64_t index);

}  // namespace fqs
