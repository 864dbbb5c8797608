#pragma once

// Brute-force reference computations used only by the test suites. Nothing
// here calls into the factorization, resultant or smoothness code paths it is
// meant to check; only raw field arithmetic is shared.

#include <cstdint>
#include <vector>

#include "fqs/field.hpp"

namespace oracle {

using fqs::Fe;
using fqs::Field;

/// Coefficients low-to-high, trimmed.
using Dense = std::vector<Fe>;

inline void trim(Dense& a) {
    while (!a.empty() && a.back().v == 0) a.pop_back();
}

/// Remainder of a by a monic b.
inline Dense rem_monic(const Field& F, Dense a, const Dense& b) {
    const std::size_t db = b.size() - 1;
    for (std::size_t i = a.size(); i-- > db;) {
        const Fe c = a[i];
        if (c.v == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = F.sub(a[i - db + j], F.mul(c, b[j]));
    }
    if (a.size() > db) a.resize(db);
    trim(a);
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool irreducible_by_trial_division(const Field& F, const Dense& monic) {
    const std::size_t n = monic.size() - 1;
    if (n <= 1) return n == 1;
    const std::uint64_t q = F.q();
    for (std::size_t d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= q;
        for (std::uint64_t code = 0; code < count; ++code) {
            Dense b(d + 1);
            std::uint64_t rest = code;
            for (std::size_t i = 0; i < d; ++i) {
                b[i] = Fe{rest % q};
                rest /= q;
            }
            b[d] = F.one();
            if (rem_monic(F, monic, b).empty()) return false;
        }
    }
    return true;
}

inline int mobius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// Number of monic irreducibles of degree n over F_q.
inline std::int64_t necklace(std::uint64_t q, std::uint64_t n) {
    std::int64_t total = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        std::int64_t pw = 1;
        for (std::uint64_t i = 0; i < n / d; ++i) pw *= static_cast<std::int64_t>(q);
        total += mobius(d) * pw;
    }
    return total / static_cast<std::int64_t>(n);
}

/// Determinant over the field by plain Gaussian elimination.
inline Fe determinant(const Field& F, std::vector<std::vector<Fe>> m) {
    const std::size_t n = m.size();
    Fe det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].v == 0) ++piv;
        if (piv == n) return F.zero();
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = F.neg(det);
        }
        det = F.mul(det, m[c][c]);
        const Fe inv = F.inv(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const Fe f = F.mul(m[r][c], inv);
            for (std::size_t j = c; j < n; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[c][j]));
        }
    }
    return det;
}

/// Res(a, b) as the Sylvester determinant; a, b low-to-high, exact degrees.
inline Fe sylvester(const Field& F, const Dense& a, const Dense& b) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    const std::size_t size = m + n;
    if (size == 0) return F.one();
    std::vector<std::vector<Fe>> s(size, std::vector<Fe>(size, F.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = a[m - j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = b[n - j];
    return determinant(F, s);
}

inline Fe eval(const Field& F, const Dense& a, Fe x) {
    Fe r = F.zero();
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

/// Set of squares of F_q, indexed by element encoding.
inline std::vector<bool> squares(const Field& F) {
    std::vector<bool> sq(F.q(), false);
    for (std::uint64_t v = 0; v < F.q(); ++v) sq[F.mul(Fe{v}, Fe{v}).v] = true;
    return sq;
}

}  // namespace oracle
