#include "fqs/poly.hpp"

#include <sstream>

#include "fqs/error.hpp"

namespace fqs {

Poly::Poly(FieldRef field, std::vector<Fe> coeffs, char var)
    : field_(std::move(field)), c_(std::move(coeffs)), var_(var) {
    trim();
}

Poly Poly::constant(FieldRef field, Fe c, char var) { return Poly(std::move(field), {c}, var); }

Poly Poly::monomial(FieldRef field, Fe c, unsigned degree, char var) {
    std::vector<Fe> v(degree + 1, Fe{0});
    v[degree] = c;
    return Poly(std::move(field), std::move(v), var);
}

Poly Poly::identity(FieldRef field, char var) {
    Fe one = field->one();
    return monomial(std::move(field), one, 1, var);
}

Poly Poly::from_ints(FieldRef field, std::initializer_list<std::int64_t> coeffs, char var) {
    std::vector<Fe> v;
    for (auto c : coeffs) v.push_back(field->from_int(c));
    return Poly(std::move(field), std::move(v), var);
}

void Poly::set_coeff(std::size_t i, Fe c) {
    if (i >= c_.size()) {
        if (c.v == 0) return;
        c_.resize(i + 1, Fe{0});
    }
    c_[i] = c;
    trim();
}

Fe Poly::eval(Fe x) const noexcept {
    const Field& F = *field_;
    Fe r{0};
    for (std::size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
    return r;
}

Poly Poly::monic() const {
    if (c_.empty() || lead() == field_->one()) return *this;
    return scaled(field_->inv(lead()));
}

Poly Poly::derivative() const {
    const Field& F = *field_;
    std::vector<Fe> d;
    if (c_.size() > 1) d.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), c_[i]);
    }
    return Poly(field_, std::move(d), var_);
}

Poly Poly::scaled(Fe c) const {
    const Field& F = *field_;
    std::vector<Fe> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F.mul(c_[i], c);
    return Poly(field_, std::move(v), var_);
}

Poly Poly::shifted(Fe c) const {
    const Field& F = *field_;
    std::vector<Fe> r;
    for (std::size_t i = c_.size(); i-- > 0;) {
        // r <- r * (var + c) + c_i
        r.push_back(Fe{0});
        for (std::size_t j = r.size() - 1; j > 0; --j) r[j] = F.add(r[j - 1], F.mul(c, r[j]));
        r[0] = F.add(F.mul(c, r[0]), c_[i]);
    }
    return Poly(field_, std::move(r), var_);
}

Poly Poly::mapped(const Embedding& emb) const {
    std::vector<Fe> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = emb(c_[i]);
    return Poly(emb.target(), std::move(v), var_);
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    const Field& F = *field_;
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Fe c = c_[i];
        if (c.v == 0) continue;
        if (!first) os << '+';
        first = false;
        const bool prime = F.in_prime_field(c);
        if (i == 0 || c != F.one()) {
            if (prime) {
                os << F.to_string(c);
            } else {
                os << '(' << F.to_string(c) << ')';
            }
            if (i > 0) os << '*';
        }
        if (i > 0) {
            os << var_;
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

Poly& Poly::operator+=(const Poly& rhs) {
    const Field& F = *field_;
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Fe{0});
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] = F.add(c_[i], rhs.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    const Field& F = *field_;
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), Fe{0});
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] = F.sub(c_[i], rhs.c_[i]);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly operator-(const Poly& a) {
    const Field& F = a.F();
    std::vector<Fe> v(a.c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.neg(a.c_[i]);
    return Poly(a.field_, std::move(v), a.var_);
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly(a.field_, a.var_);
    const Field& F = a.F();
    std::vector<Fe> r(a.c_.size() + b.c_.size() - 1, Fe{0});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const Fe ai = a.c_[i];
        if (ai.v == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(ai, b.c_[j]));
    }
    return Poly(a.field_, std::move(r), a.var_);
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    const Field& F = a.F();
    if (a.degree() < b.degree()) return {Poly(a.field(), a.var()), a};
    std::vector<Fe> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<Fe> q(r.size() - db, Fe{0});
    const Fe inv_lead = F.inv(b.lead());
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].v == 0) continue;
        const Fe c = F.mul(r[i], inv_lead);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return {Poly(a.field(), std::move(q), a.var()), Poly(a.field(), std::move(r), a.var())};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly operator%(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    if (a.degree() < b.degree()) return a;
    const Field& F = a.F();
    std::vector<Fe> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    const Fe inv_lead = F.inv(b.lead());
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i].v == 0) continue;
        const Fe c = F.mul(r[i], inv_lead);
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
    }
    r.resize(db);
    return Poly(a.field(), std::move(r), a.var());
}

std::strong_ordering compare(const Poly& a, const Poly& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Xgcd xgcd(const Poly& a, const Poly& b) {
    const FieldRef& f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, f->one(), a.var()), s1(f, a.var());
    Poly t0(f, a.var()), t1 = Poly::constant(f, f->one(), a.var());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, std::move(r));
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Fe inv = f->inv(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly pow(const Poly& base, std::uint64_t e) {
    Poly r = Poly::constant(base.field(), base.F().one(), base.var());
    Poly b = base;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
    Poly r = Poly::constant(base.field(), base.F().one(), base.var()) % m;
    Poly b = base % m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        e >>= 1;
        if (e) b = mulmod(b, b, m);
    }
    return r;
}

// ---------------------------------------------------------------------------

Fe resultant(const Poly& f, const Poly& g) {
    const Field& F = f.F();
    if (f.is_zero() || g.is_zero()) return F.zero();
    Poly a = f, b = g;
    Fe acc = F.one();
    while (true) {
        const auto da = static_cast<std::uint64_t>(a.degree());
        const auto db = static_cast<std::uint64_t>(b.degree());
        if (da == 0) return F.mul(acc, F.pow(a.lead(), db));
        if (db == 0) return F.mul(acc, F.pow(b.lead(), da));
        Poly r = a % b;
        if (r.is_zero()) return F.zero();
        // Res(a,b) = (-1)^{da db} lc(b)^{da - deg r} Res(b, r)
        Fe factor = F.pow(b.lead(), da - static_cast<std::uint64_t>(r.degree()));
        if ((da * db) & 1) factor = F.neg(factor);
        acc = F.mul(acc, factor);
        a = std::move(b);
        b = std::move(r);
    }
}

Fe discriminant(const Poly& f) {
    const Field& F = f.F();
    const int n = f.degree();
    if (n < 2) fail(ErrorCode::DegreeOutOfRange, "discriminant needs degree >= 2");
    const Poly df = f.derivative();
    if (df.is_zero()) fail(ErrorCode::InseparableInput, "derivative vanishes identically");
    // Res at formal degree n-1 picks up lc(f)^{(n-1) - deg f'}
    const Fe res = F.mul(resultant(f, df), F.pow(f.lead(), static_cast<std::uint64_t>(n - 1 - df.degree())));
    Fe d = F.div(res, f.lead());
    const auto nn = static_cast<std::uint64_t>(n);
    if ((nn * (nn - 1) / 2) & 1) d = F.neg(d);
    return d;
}

ResultantDiscriminant resultant_discriminant(const Poly& f, const Poly& g) {
    return {resultant(f, g), discriminant(f)};
}

Poly determinant(std::vector<std::vector<Poly>> m) {
    const std::size_t n = m.size();
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty matrix");
    const FieldRef field = m[0][0].field();
    const char var = m[0][0].var();
    bool negate = false;
    Poly prev = Poly::constant(field, field->one(), var);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return Poly(field, var);
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = num / prev;
            }
            m[i][k] = Poly(field, var);
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

Poly sylvester_resultant(const std::vector<Poly>& a, unsigned m, const std::vector<Poly>& b, unsigned n) {
    const FieldRef field = a.front().field();
    const char var = a.front().var();
    const std::size_t size = m + n;
    if (size == 0) return Poly::constant(field, field->one(), var);
    auto coeff = [&](const std::vector<Poly>& v, std::size_t i) { return i < v.size() ? v[i] : Poly(field, var); };
    std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size, Poly(field, var)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = coeff(a, m - j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = coeff(b, n - j);
    }
    return determinant(std::move(s));
}

Poly form_discriminant(const std::vector<Poly>& coeffs) {
    if (coeffs.size() < 2) fail(ErrorCode::DegreeOutOfRange, "form discriminant needs degree >= 1");
    const unsigned d = static_cast<unsigned>(coeffs.size() - 1);
    const Field& F = coeffs.front().F();
    if (coeffs.back().is_zero()) fail(ErrorCode::InvalidArgument, "formal leading coefficient is zero");
    std::vector<Poly> deriv;
    for (unsigned j = 1; j <= d; ++j) deriv.push_back(coeffs[j].scaled(F.from_int(j % F.p())));
    Poly res = sylvester_resultant(coeffs, d, deriv, d - 1);
    auto [disc, rem] = divmod(res, coeffs.back());
    if (!rem.is_zero()) fail(ErrorCode::InvalidArgument, "form discriminant: inexact division");
    const std::uint64_t dd = d;
    if ((dd * (dd - 1) / 2) & 1) disc = -disc;
    return disc;
}

}  // namespace fqs
