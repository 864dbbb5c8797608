#include <algorithm>

#include "fqs/error.hpp"
#include "fqs/poly.hpp"

namespace fqs {

namespace {

// f(x) = g(x^p) with g's coefficients p-th roots; requires f' = 0.
Poly pth_root(const Poly& f) {
    const Field& F = f.F();
    const std::uint64_t p = F.p();
    std::vector<Fe> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pth_root(f.coeffs()[i]));
    return Poly(f.field(), std::move(c), f.var());
}

void sort_canonical(std::vector<Factor>& fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) {
        auto c = compare(a.poly, b.poly);
        return c != 0 ? c < 0 : a.multiplicity < b.multiplicity;
    });
}

void squarefree_rec(const Poly& f, unsigned scale, std::vector<Factor>& out) {
    if (f.degree() < 1) return;
    const Poly one = Poly::constant(f.field(), f.F().one(), f.var());
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.push_back({z.monic(), i * scale});
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (c.degree() > 0) squarefree_rec(pth_root(c.monic()), scale * static_cast<unsigned>(f.F().p()), out);
}

// a^{(Q-1)/2} mod f with Q = q^d, via the norm-like product a^{1+q+...+q^{d-1}}.
Poly half_power(const Poly& a, unsigned d, const Poly& f) {
    const std::uint64_t q = f.F().q();
    Poly cur = a, acc = a;
    for (unsigned i = 1; i < d; ++i) {
        cur = powmod(cur, q, f);
        acc = mulmod(acc, cur, f);
    }
    return powmod(acc, (q - 1) / 2, f);
}

// sum_{i < k d} a^{2^i} mod f: the absolute trace of F_{2^{kd}} applied to a.
Poly trace_map(const Poly& a, unsigned d, const Poly& f) {
    const unsigned steps = f.F().k() * d;
    Poly cur = a % f, acc = cur;
    for (unsigned i = 1; i < steps; ++i) {
        cur = mulmod(cur, cur, f);
        acc += cur;
    }
    return acc;
}

void equal_degree_rec(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    const int n = f.degree();
    if (n <= 0) return;
    if (static_cast<unsigned>(n) == d) {
        out.push_back(f);
        return;
    }
    const bool even = f.F().p() == 2;
    const Poly one = Poly::constant(f.field(), f.F().one(), f.var());
    while (true) {
        Poly a = random_poly(f.field(), static_cast<unsigned>(n - 1), rng, f.var());
        if (a.degree() < 1) continue;
        Poly h = gcd(a, f);
        if (h.degree() > 0 && h.degree() < n) {
            equal_degree_rec(h, d, rng, out);
            equal_degree_rec(f / h, d, rng, out);
            return;
        }
        Poly b = even ? trace_map(a, d, f) : half_power(a, d, f) - one;
        h = gcd(b, f);
        if (h.degree() > 0 && h.degree() < n) {
            equal_degree_rec(h, d, rng, out);
            equal_degree_rec(f / h, d, rng, out);
            return;
        }
    }
}

}  // namespace

Poly random_poly(const FieldRef& field, unsigned max_degree, Rng& rng, char var) {
    std::vector<Fe> c(max_degree + 1);
    const std::uint64_t q = field->q();
    for (auto& x : c) x = Fe{rng() % q};
    return Poly(field, std::move(c), var);
}

bool is_irreducible(const Poly& f) {
    const int n = f.degree();
    if (n < 1) fail(ErrorCode::ZeroOrConstant, "irreducibility test needs degree >= 1");
    if (n == 1) return true;
    const Poly g = f.monic();
    const std::uint64_t q = f.F().q();
    const Poly x = Poly::identity(f.field(), f.var());
    if (n <= 3) {
        // no roots <=> irreducible in degree 2 and 3
        return gcd(powmod(x, q, g) - x, g).is_one();
    }
    const auto primes = prime_divisors(static_cast<std::uint64_t>(n));
    std::vector<bool> check(static_cast<std::size_t>(n) + 1, false);
    for (auto l : primes) check[static_cast<std::size_t>(n) / l] = true;
    Poly h = x;
    for (int i = 1; i <= n; ++i) {
        h = powmod(h, q, g);
        if (i < n && check[static_cast<std::size_t>(i)] && !gcd(h - x, g).is_one()) return false;
    }
    return h == x;
}

std::vector<Factor> squarefree_decomposition(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::ZeroOrConstant, "squarefree decomposition of zero");
    std::vector<Factor> out;
    squarefree_rec(f.monic(), 1, out);
    sort_canonical(out);
    return out;
}

Poly squarefree_part(const Poly& f) {
    if (f.is_zero()) fail(ErrorCode::ZeroOrConstant, "squarefree part of zero");
    Poly r = Poly::constant(f.field(), f.F().one(), f.var());
    for (const auto& piece : squarefree_decomposition(f)) r = r * piece.poly;
    return r;
}

std::vector<Factor> distinct_degree(const Poly& f) {
    std::vector<Factor> out;
    Poly rest = f.monic();
    const std::uint64_t q = f.F().q();
    const Poly x = Poly::identity(f.field(), f.var());
    Poly h = x % rest;
    for (unsigned i = 1; rest.degree() >= 2 * static_cast<int>(i); ++i) {
        h = powmod(h, q, rest);
        Poly g = gcd(rest, h - x);
        if (!g.is_one()) {
            out.push_back({g, i});
            rest = rest / g;
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.push_back({rest, static_cast<unsigned>(rest.degree())});
    return out;
}

std::vector<Poly> equal_degree(const Poly& f, unsigned d, Rng& rng) {
    std::vector<Poly> out;
    equal_degree_rec(f.monic(), d, rng, out);
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return compare(a, b) < 0; });
    return out;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.degree() < 1) fail(ErrorCode::ZeroOrConstant, "factor needs degree >= 1");
    Rng rng(seed);
    Factorization result{f.lead(), {}};
    for (const auto& piece : squarefree_decomposition(f)) {
        for (const auto& dd : distinct_degree(piece.poly)) {
            for (auto& g : equal_degree(dd.poly, dd.multiplicity, rng)) {
                result.factors.push_back({std::move(g), piece.multiplicity});
            }
        }
    }
    sort_canonical(result.factors);
    return result;
}

Poly Factorization::expand(const FieldRef& field) const {
    Poly r = Poly::constant(field, unit, factors.empty() ? 'x' : factors.front().poly.var());
    for (const auto& fa : factors) r = r * pow(fa.poly, fa.multiplicity);
    return r;
}

std::vector<Fe> roots(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) fail(ErrorCode::InvalidArgument, "every element is a root of the zero polynomial");
    if (f.degree() < 1) return {};
    const Poly g = f.monic();
    const Poly x = Poly::identity(f.field(), f.var());
    Poly split = gcd(g, powmod(x, f.F().q(), g) - x);
    std::vector<Fe> out;
    if (split.degree() < 1) return out;
    Rng rng(seed);
    for (const auto& lin : equal_degree(split, 1, rng)) out.push_back(f.F().neg(lin[0]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fqs
