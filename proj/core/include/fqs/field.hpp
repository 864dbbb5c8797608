#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fqs {

/// Element of a finite field F_{p^k}, encoded as the integer sum c_i p^i of its
/// coordinates in the power basis of the field generator. Integer order on the
/// encoding is the coefficient-tuple order read from the highest index down,
/// which is the library-wide tie-break order for roots and witnesses.
struct Fe {
    std::uint64_t v = 0;

    friend constexpr bool operator==(Fe, Fe) = default;
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// F_{p^k} = F_p[y]/(modulus). Immutable once built, shared freely across threads.
class Field {
   public:
    /// Largest supported cardinality (exclusive).
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;
    /// Fields up to this size use log/antilog tables for multiplication.
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

    /// Canonical field: the modulus is the lexicographically smallest monic
    /// irreducible of degree k over F_p. Results are memoized.
    static FieldRef make(std::uint64_t p, unsigned k);
    /// Field with an explicit monic irreducible modulus (low-to-high coefficients).
    static FieldRef with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);
    /// Canonical field of cardinality q; q must be a prime power.
    static FieldRef of_order(std::uint64_t q);

    std::uint64_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t q() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return k_ == 1; }
    /// Monic modulus, low-to-high, length k+1. For k = 1 this is "y".
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }

    Fe zero() const noexcept { return Fe{0}; }
    Fe one() const noexcept { return Fe{1}; }
    /// Image of the integer n under Z -> F_p -> F_q.
    Fe from_int(std::int64_t n) const noexcept;
    /// The index-th element in element order; index < q.
    Fe element(std::uint64_t index) const noexcept { return Fe{index}; }
    Fe from_coeffs(std::span<const std::uint64_t> coeffs) const;
    std::vector<std::uint64_t> coeffs(Fe a) const;
    /// Class of y in F_p[y]/(modulus).
    Fe generator() const noexcept;
    bool in_prime_field(Fe a) const noexcept { return a.v < p_; }

    Fe add(Fe a, Fe b) const noexcept {
        if (k_ == 1) {
            std::uint64_t s = a.v + b.v;
            return Fe{s >= p_ ? s - p_ : s};
        }
        if (p_ == 2) return Fe{a.v ^ b.v};
        if (!zech_.empty()) return add_zech(a, b);
        return add_digits(a, b);
    }
    Fe neg(Fe a) const noexcept {
        if (a.v == 0) return a;
        if (k_ == 1) return Fe{p_ - a.v};
        if (p_ == 2) return a;
        if (!neg_.empty()) return Fe{neg_[a.v]};
        return neg_digits(a);
    }
    Fe sub(Fe a, Fe b) const noexcept { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const noexcept {
        if (a.v == 0 || b.v == 0) return Fe{0};
        if (k_ == 1) return Fe{mulmod(a.v, b.v)};
        if (!log_.empty()) {
            return Fe{exp_[static_cast<std::size_t>(log_[a.v]) + log_[b.v]]};
        }
        return mul_slow(a, b);
    }
    /// Throws InvalidArgument on zero.
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, std::uint64_t e) const noexcept;
    /// The unique b with b^p = a.
    Fe pth_root(Fe a) const noexcept;

    /// Human readable: an integer for prime-field elements, else a polynomial in y.
    std::string to_string(Fe a) const;

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.p_ == b.p_ && a.modulus_ == b.modulus_;
    }

    Field(std::uint64_t p, std::vector<std::uint64_t> modulus);

   private:
    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const noexcept {
        if (p_ < (std::uint64_t{1} << 32)) return a * b % p_;
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }
    Fe add_digits(Fe a, Fe b) const noexcept;
    Fe add_zech(Fe a, Fe b) const noexcept {
        if (a.v == 0) return b;
        if (b.v == 0) return a;
        const std::uint32_t order = static_cast<std::uint32_t>(q_ - 1);
        const std::uint32_t la = log_[a.v];
        std::uint32_t d = log_[b.v] + order - la;
        if (d >= order) d -= order;
        const std::uint32_t z = zech_[d];
        if (z == kNoZech) return Fe{0};
        return Fe{exp_[static_cast<std::size_t>(la) + z]};
    }
    Fe neg_digits(Fe a) const noexcept;
    Fe mul_slow(Fe a, Fe b) const noexcept;
    void build_tables();

    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint32_t> exp_;  // length 2(q-1); empty when no tables
    std::vector<std::uint32_t> log_;
    // Odd characteristic extensions with tables: zech_[i] = log(1 + g^i), neg_[v] = -v.
    static constexpr std::uint32_t kNoZech = ~std::uint32_t{0};
    std::vector<std::uint32_t> zech_;
    std::vector<std::uint32_t> neg_;
};

/// Ring embedding F_{p^a} -> F_{p^b} for a | b. The source generator goes to the
/// smallest (in element order) root of the source modulus in the target.
class Embedding {
   public:
    Embedding(FieldRef src, FieldRef dst);

    Fe operator()(Fe e) const;
    const FieldRef& source() const noexcept { return src_; }
    const FieldRef& target() const noexcept { return dst_; }
    /// Image of the source generator.
    Fe generator_image() const noexcept { return basis_.size() > 1 ? basis_[1] : dst_->zero(); }

   private:
    FieldRef src_;
    FieldRef dst_;
    std::vector<Fe> basis_;  // images of 1, y, y^2, ...
};

Fe embed(const FieldRef& src, const FieldRef& dst, Fe e);

bool is_prime(std::uint64_t n) noexcept;
/// (p, k) with q = p^k, or (0, 0) when q is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) noexcept;
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

}  // namespace fqs
