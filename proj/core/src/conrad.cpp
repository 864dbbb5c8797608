#include "fqs/conrad.hpp"

#include <numeric>

#include "fqs/error.hpp"

namespace fqs {

ConradInstance conrad_polynomial(std::uint64_t q, std::optional<std::uint64_t> b) {
    const auto [p, k] = prime_power(q);
    if (k == 0) fail(ErrorCode::NotPrime, "q is not a prime power");
    if (q > (std::uint64_t{1} << 20)) fail(ErrorCode::FieldTooLarge, "q is too large for this construction");
    const std::uint64_t e = b.value_or(2 * q - 1);
    if (e <= 1 || e >= 4 * q) fail(ErrorCode::ConstraintViolation, "b must satisfy 1 < b < 4q");
    if (std::gcd(e, p * (q - 1)) != 1) fail(ErrorCode::ConstraintViolation, "b must be coprime to p(q-1)");
    const FieldRef F = Field::make(p, k);
    BiPoly f(F);
    f.add_term(0, static_cast<unsigned>(4 * q), F->one());
    f.add_term(static_cast<unsigned>(e), 0, F->one());
    return {q, p, e, std::move(f)};
}

std::string_view to_string(ValueClass c) {
    switch (c) {
        case ValueClass::Zero: return "zero";
        case ValueClass::Unit: return "unit";
        case ValueClass::Irreducible: return "irreducible";
        case ValueClass::Reducible: return "reducible";
    }
    return "?";
}

Poly enumerate_poly(const FieldRef& field, unsigned D, std::uint64_t index) {
    const std::uint64_t q = field->q();
    std::vector<Fe> c(D + 1, field->zero());
    for (unsigned i = 0; i <= D; ++i, index /= q) c[i] = Fe{index % q};
    return Poly(field, std::move(c), 't');
}

ConradReport verify_conrad(const BiPoly& f, unsigned D, const ParallelMap& pm, std::size_t max_listed) {
    const FieldRef& F = f.field();
    const std::uint64_t q = F->q();
    ConradReport rep;
    rep.D = D;
    std::uint64_t total = 1;
    for (unsigned i = 0; i <= D; ++i) {
        if (total > (std::uint64_t{1} << 32) / q) fail(ErrorCode::InvalidArgument, "too many substitutions");
        total *= q;
    }
    rep.substitutions = total;

    const std::vector<Poly> xc = f.x_coeffs();
    constexpr std::uint64_t kBlock = 64;
    const std::size_t blocks = static_cast<std::size_t>((total + kBlock - 1) / kBlock);
    struct Part {
        std::uint64_t zero = 0, unit = 0, irreducible = 0, reducible = 0;
        std::vector<ConradValue> listed;
    };
    std::vector<Part> parts(blocks);
    pm.for_each(blocks, [&](std::size_t blk) {
        Part& part = parts[blk];
        const std::uint64_t lo = blk * kBlock, hi = std::min(total, lo + kBlock);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Poly g = enumerate_poly(F, D, i);
            Poly v(F, 't');
            for (std::size_t j = xc.size(); j-- > 0;) v = v * g + xc[j];
            ValueClass cls;
            if (v.is_zero()) {
                cls = ValueClass::Zero;
            } else if (v.degree() == 0) {
                cls = ValueClass::Unit;
            } else {
                unsigned parts_with_mult = 0;
                for (const auto& fa : factor(v).factors) parts_with_mult += fa.multiplicity;
                cls = parts_with_mult >= 2 ? ValueClass::Reducible : ValueClass::Irreducible;
            }
            switch (cls) {
                case ValueClass::Zero: ++part.zero; break;
                case ValueClass::Unit: ++part.unit; break;
                case ValueClass::Irreducible: ++part.irreducible; break;
                case ValueClass::Reducible: ++part.reducible; break;
            }
            if (cls != ValueClass::Reducible && part.listed.size() < max_listed) part.listed.push_back({g, v, cls});
        }
    });
    for (auto& part : parts) {
        rep.zero += part.zero;
        rep.unit += part.unit;
        rep.irreducible += part.irreducible;
        rep.reducible += part.reducible;
        for (auto& c : part.listed) {
            if (rep.counterexamples.size() < max_listed) rep.counterexamples.push_back(std::move(c));
        }
    }
    rep.holds = rep.reducible == total;
    return rep;
}

}  // namespace fqs
