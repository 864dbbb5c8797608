#include "fqs/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fqs/error.hpp"

namespace fqs {

namespace {

// Specialization values tried per variable and per field in the certificate scan.
constexpr std::uint64_t kScanCap = 512;
constexpr unsigned kScanMaxExtension = 3;

FieldRef extension_of(const FieldRef& base, unsigned m) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > Field::kMaxOrder / base->q()) return nullptr;
        q *= base->q();
    }
    if (m == 1) return base;
    return Field::make(base->p(), base->k() * m);
}

struct ExtendedRoot {
    FieldRef field;
    Fe root;
    Embedding into;  // from the polynomial's field to `field`
};

// Smallest root of an irreducible polynomial in the extension it generates.
ExtendedRoot root_in_extension(const Poly& irreducible) {
    const FieldRef& base = irreducible.field();
    const unsigned e = static_cast<unsigned>(irreducible.degree());
    FieldRef K = e == 1 ? base : Field::make(base->p(), base->k() * e);
    Embedding emb(base, K);
    Poly mapped = irreducible.mapped(emb);
    return {K, roots(mapped).front(), std::move(emb)};
}

Poly content_of(const std::vector<Poly>& coeffs) {
    Poly g(coeffs.front().field(), coeffs.front().var());
    for (const auto& c : coeffs) {
        g = gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Power-series lifting in t around a squarefree fibre.

using Series = std::vector<Poly>;  // coefficient of t^k as a polynomial in x

Series series_mul(const Series& a, const Series& b, std::size_t prec, const FieldRef& field) {
    Series r(prec, Poly(field));
    for (std::size_t i = 0; i < a.size() && i < prec; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < prec; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

std::optional<BiPoly> lift_and_recombine(const BiPoly& h) {
    const FieldRef& field = h.field();
    const Field& F = *field;
    const int n = h.degree_x();
    const int d = h.total_degree();
    if (n < 2) return std::nullopt;
    const std::vector<Poly> xc = h.x_coeffs();
    const Poly& lc = xc.back();

    // first fibre t = c with full x-degree and squarefree image
    std::optional<Fe> centre;
    const std::uint64_t limit = std::min<std::uint64_t>(F.q(), kScanCap);
    for (std::uint64_t v = 0; v < limit && !centre; ++v) {
        const Fe c{v};
        if (lc.eval(c).v == 0) continue;
        Poly u = h.at_t(c);
        Poly du = u.derivative();
        if (du.is_zero() || !gcd(u, du).is_one()) continue;
        centre = c;
    }
    if (!centre) return std::nullopt;
    const Fe c = *centre;
    const std::size_t prec = 2 * static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

    // shifted series S(t) = h(t + c, x) and ell(t) = lc(t + c)
    Series S(prec, Poly(field));
    for (int j = 0; j <= n; ++j) {
        Poly sh = xc[j].shifted(c);
        for (std::size_t k = 0; k < sh.coeffs().size() && k < prec; ++k) {
            S[k].set_coeff(static_cast<std::size_t>(j), sh.coeffs()[k]);
        }
    }
    const Poly ell = lc.shifted(c);
    std::vector<Fe> ell_inv(prec, Fe{0});
    ell_inv[0] = F.inv(ell[0]);
    for (std::size_t k = 1; k < prec; ++k) {
        Fe acc = F.zero();
        for (std::size_t i = 1; i <= k; ++i) acc = F.add(acc, F.mul(ell[i], ell_inv[k - i]));
        ell_inv[k] = F.neg(F.mul(acc, ell_inv[0]));
    }
    Series M(prec, Poly(field));
    for (std::size_t k = 0; k < prec; ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
            if (ell_inv[i].v != 0 && !S[k - i].is_zero()) M[k] += S[k - i].scaled(ell_inv[i]);
        }
    }

    const Factorization base = factor(M[0]);
    const std::size_t r = base.factors.size();
    if (r < 2) return std::nullopt;
    std::vector<Poly> u;
    for (const auto& fa : base.factors) u.push_back(fa.poly);
    std::vector<Poly> s(r, Poly(field));
    for (std::size_t i = 0; i < r; ++i) {
        Poly others = Poly::constant(field, F.one());
        for (std::size_t j = 0; j < r; ++j) {
            if (j != i) others = others * u[j];
        }
        s[i] = xgcd(others % u[i], u[i]).s;
    }

    std::vector<Series> U(r, Series(prec, Poly(field)));
    for (std::size_t i = 0; i < r; ++i) U[i][0] = u[i];
    for (std::size_t k = 1; k < prec; ++k) {
        Series prod = U[0];
        for (std::size_t i = 1; i < r; ++i) prod = series_mul(prod, U[i], k + 1, field);
        Poly err = M[k] - prod[k];
        if (err.is_zero()) continue;
        for (std::size_t i = 0; i < r; ++i) U[i][k] = (err * s[i]) % u[i];
    }

    // subsets in increasing size, lexicographic within a size
    Series ell_series(prec, Poly(field));
    for (std::size_t k = 0; k < ell.coeffs().size() && k < prec; ++k) ell_series[k] = Poly::constant(field, ell[k]);
    std::vector<std::size_t> idx;
    for (std::size_t size = 1; size <= r / 2; ++size) {
        idx.resize(size);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            Series cand = ell_series;
            for (auto i : idx) cand = series_mul(cand, U[i], prec, field);
            // back to F[t, x]: x^j coefficient as a polynomial in t, then unshift
            std::vector<Poly> cx(static_cast<std::size_t>(n) + 1, Poly(field, 't'));
            for (std::size_t k = 0; k < prec; ++k) {
                for (std::size_t j = 0; j < cand[k].coeffs().size(); ++j) cx[j].set_coeff(k, cand[k].coeffs()[j]);
            }
            while (!cx.empty() && cx.back().is_zero()) cx.pop_back();
            const Poly cont = content_of(cx);
            for (auto& p : cx) p = (p / cont).shifted(F.neg(c));
            BiPoly g = BiPoly::from_x_coeffs(field, cx);
            if (g.degree_x() >= 1) {
                auto q = divide_exact(h, g);
                if (q && q->total_degree() >= 1) return g;
            }
            // next combination
            std::size_t pos = size;
            while (pos > 0 && idx[pos - 1] == r - size + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

using Shear = std::pair<int, int>;

// Point of the original form from a common root of the sheared one, which is
// F(T + alpha X, X, Z + beta X) for shear = (alpha, beta).
ProjectivePoint point_from_gcd(const Poly& h, Fe T, Fe Z, Shear shear) {
    const Poly fac = factor(h).factors.front().poly;
    ExtendedRoot root = root_in_extension(fac);
    const Field& L = *root.field;
    const Fe t = root.into(T), z = root.into(Z), x = root.root;
    const Fe alpha = L.from_int(shear.first), beta = L.from_int(shear.second);
    return ProjectivePoint::normalized(root.field, {L.add(t, L.mul(alpha, x)), x, L.add(z, L.mul(beta, x))});
}

struct Partials {
    HomForm G, GT, GX, GZ;
};

Poly common_x(const Partials& P, Fe T, Fe Z) {
    Poly h = P.G.restrict_x(T, Z);
    h = gcd(h, P.GT.restrict_x(T, Z));
    h = gcd(h, P.GX.restrict_x(T, Z));
    h = gcd(h, P.GZ.restrict_x(T, Z));
    return h;
}

Partials partials_of(HomForm G) {
    Partials P{G, G.partial(0), G.partial(1), G.partial(2)};
    return P;
}

Partials mapped(const Partials& P, const Embedding& e) {
    return {P.G.mapped(e), P.GT.mapped(e), P.GX.mapped(e), P.GZ.mapped(e)};
}

// G has a nonzero X^d coefficient, so (0:1:0) is off the curve and every
// point is (T : X : 1) or (1 : X : 0).
std::optional<ProjectivePoint> singular_point_sheared(const HomForm& G, Shear shear) {
    const FieldRef& field = G.field();
    const Field& F = *field;
    const Partials P = partials_of(G);

    Poly h = common_x(P, F.one(), F.zero());
    if (h.degree() >= 1) return point_from_gcd(h, F.one(), F.zero(), shear);

    const std::vector<Poly> xc = G.dehomogenize().x_coeffs();
    const Poly D = form_discriminant(xc);
    if (D.is_zero()) {
        // repeated component: every point on it is singular
        for (unsigned m = 1; m <= 6; ++m) {
            FieldRef K = extension_of(field, m);
            if (!K) break;
            Embedding emb(field, K);
            const Partials PK = mapped(P, emb);
            const std::uint64_t limit = std::min<std::uint64_t>(K->q(), kScanCap);
            for (std::uint64_t v = 0; v < limit; ++v) {
                Poly hk = common_x(PK, Fe{v}, K->one());
                if (hk.degree() >= 1) return point_from_gcd(hk, Fe{v}, K->one(), shear);
            }
        }
        fail(ErrorCode::SmoothnessUndecided, "no point found on a repeated component");
    }
    if (D.degree() < 1) return std::nullopt;
    for (const auto& fa : factor(squarefree_part(D)).factors) {
        ExtendedRoot theta = root_in_extension(fa.poly);
        const Partials PK = fa.poly.degree() == 1 ? P : mapped(P, Embedding(field, theta.field));
        Poly hk = common_x(PK, theta.root, theta.field->one());
        if (hk.degree() >= 1) return point_from_gcd(hk, theta.root, theta.field->one(), shear);
    }
    return std::nullopt;
}

}  // namespace

std::pair<unsigned, HomForm> homogenize_and_degree(const BiPoly& f) {
    HomForm F = homogenize(f);
    const unsigned d = F.degree();
    return {d, std::move(F)};
}

Poly restrict_to_line(const BiPoly& f, Fe a, Fe b, const FieldRef& field) {
    const BiPoly g = f.over(field);
    const std::vector<Poly> xc = g.x_coeffs();
    const Poly line(field, {b, a}, 't');
    Poly r(field, 't');
    for (std::size_t j = xc.size(); j-- > 0;) r = r * line + xc[j];
    return r;
}

ProjectivePoint ProjectivePoint::normalized(FieldRef field, std::array<Fe, 3> c) {
    const Field& F = *field;
    for (int i = 2; i >= 0; --i) {
        if (c[i].v == 0) continue;
        const Fe inv = F.inv(c[i]);
        for (auto& x : c) x = F.mul(x, inv);
        break;
    }
    return {std::move(field), c};
}

std::string ProjectivePoint::to_string() const {
    std::ostringstream os;
    os << '(' << field->to_string(coords[0]) << ':' << field->to_string(coords[1]) << ':' << field->to_string(coords[2])
       << ')';
    return os.str();
}

std::string_view to_string(IrreducibilityCertificate::Status s) {
    switch (s) {
        case IrreducibilityCertificate::Status::Irreducible:
            return "irreducible";
        case IrreducibilityCertificate::Status::Reducible:
            return "reducible";
        case IrreducibilityCertificate::Status::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

IrreducibilityCertificate bivariate_irreducible(const BiPoly& f) {
    using Status = IrreducibilityCertificate::Status;
    if (f.total_degree() < 1) fail(ErrorCode::ZeroOrConstant, "irreducibility certificate needs degree >= 1");
    const FieldRef& field = f.field();
    IrreducibilityCertificate cert;

    // polynomials in one variable only
    if (f.degree_x() == 0 || f.degree_t() == 0) {
        const char var = f.degree_x() == 0 ? 't' : 'x';
        Poly u = var == 't' ? f.at_x(field->zero()) : f.at_t(field->zero());
        if (is_irreducible(u)) {
            cert.status = Status::Irreducible;
            cert.witness_var = var == 't' ? 'x' : 't';
            cert.witness_extension = 1;
            cert.witness_value = field->zero();
            cert.witness_field = field;
            cert.witness_poly = u;
        } else {
            cert.status = Status::Reducible;
            cert.factor = BiPoly::from_univariate(factor(u).factors.front().poly, var);
        }
        return cert;
    }

    const Poly ct = content_of(f.x_coeffs());
    if (ct.degree() >= 1) {
        cert.status = Status::Reducible;
        cert.factor = BiPoly::from_univariate(ct, 't');
        return cert;
    }
    const Poly cx = content_of(f.t_coeffs());
    if (cx.degree() >= 1) {
        cert.status = Status::Reducible;
        cert.factor = BiPoly::from_univariate(cx, 'x');
        return cert;
    }

    for (unsigned m = 1; m <= kScanMaxExtension; ++m) {
        FieldRef K = extension_of(field, m);
        if (!K) break;
        const BiPoly g = f.over(K);
        for (char var : {'t', 'x'}) {
            const int full = var == 't' ? g.degree_x() : g.degree_t();
            const std::uint64_t limit = std::min<std::uint64_t>(K->q(), kScanCap);
            for (std::uint64_t v = 0; v < limit; ++v) {
                Poly u = var == 't' ? g.at_t(Fe{v}) : g.at_x(Fe{v});
                if (u.degree() != full || !is_irreducible(u)) continue;
                cert.status = Status::Irreducible;
                cert.witness_var = var;
                cert.witness_extension = m;
                cert.witness_value = Fe{v};
                cert.witness_field = K;
                cert.witness_poly = std::move(u);
                return cert;
            }
        }
    }

    if (auto g = lift_and_recombine(f)) {
        cert.status = Status::Reducible;
        cert.factor = std::move(g);
        return cert;
    }
    if (auto g = lift_and_recombine(f.swapped())) {
        cert.status = Status::Reducible;
        cert.factor = g->swapped();
        return cert;
    }
    return cert;
}

bool check_certificate(const BiPoly& f, const IrreducibilityCertificate& cert) {
    using Status = IrreducibilityCertificate::Status;
    switch (cert.status) {
        case Status::Irreducible: {
            if (!cert.witness_field || !cert.witness_value) return false;
            const BiPoly g = f.over(cert.witness_field);
            if (f.degree_x() >= 1 && f.degree_t() >= 1) {
                if (content_of(f.x_coeffs()).degree() >= 1 || content_of(f.t_coeffs()).degree() >= 1) return false;
            }
            Poly u = cert.witness_var == 't' ? g.at_t(*cert.witness_value) : g.at_x(*cert.witness_value);
            const int full = cert.witness_var == 't' ? g.degree_x() : g.degree_t();
            return u.degree() == full && full >= 1 && is_irreducible(u);
        }
        case Status::Reducible: {
            if (!cert.factor || cert.factor->total_degree() < 1) return false;
            auto q = divide_exact(f, *cert.factor);
            return q && q->total_degree() >= 1;
        }
        case Status::Inconclusive:
            return true;
    }
    return false;
}

SmoothnessResult is_smooth(const BiPoly& f) {
    auto [d, F] = homogenize_and_degree(f);
    const Field& K = F.F();
    if (d % K.p() == 0) fail(ErrorCode::CharacteristicDividesDegree, "the characteristic divides the degree");
    if (d == 1) return {true, std::nullopt};
    static constexpr std::array<std::pair<int, int>, 5> kShears{{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}}};
    for (auto [a, b] : kShears) {
        const Fe alpha = K.from_int(a), beta = K.from_int(b);
        if (F.eval(alpha, K.one(), beta).v == 0) continue;
        std::array<std::array<Fe, 3>, 3> m{{{K.one(), alpha, K.zero()}, {K.zero(), K.one(), K.zero()}, {K.zero(), beta, K.one()}}};
        const HomForm G = (a == 0 && b == 0) ? F : F.substituted(m);
        auto pt = singular_point_sheared(G, {a, b});
        if (pt) return {false, pt};
        return {true, std::nullopt};
    }
    fail(ErrorCode::SmoothnessUndecided, "no admissible coordinate change among the fixed shears");
}

CurveReport curve_invariants(const BiPoly& f) {
    const int deg = f.total_degree();
    if (deg < 1) fail(ErrorCode::ZeroOrConstant, "curve needs degree >= 1");
    if (deg == 1) fail(ErrorCode::DegreeOutOfRange, "lines are excluded; degree must be at least 2");
    CurveReport r;
    r.d = static_cast<unsigned>(deg);
    const std::uint64_t p = f.F().p();
    r.char_ok = (static_cast<std::uint64_t>(r.d) * (r.d - 1)) % p != 0;
    auto sm = is_smooth(f);
    r.smooth = sm.smooth;
    r.singular_witness = sm.singular_point;
    r.irreducible = bivariate_irreducible(f);
    if (r.smooth) r.genus = (r.d - 1) * (r.d - 2) / 2;
    r.dual_degree = r.d * (r.d - 1);
    r.bad_line_bound = (r.dual_degree - 1) * (r.dual_degree - 2) / 2;
    return r;
}

}  // namespace fqs
