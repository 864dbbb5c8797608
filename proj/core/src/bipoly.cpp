#include "fqs/bipoly.hpp"

#include <algorithm>
#include <sstream>

#include "fqs/error.hpp"

namespace fqs {

namespace {

void append_monomial(std::vector<std::string>& factors, char var, unsigned e) {
    if (e == 0) return;
    std::string s(1, var);
    if (e > 1) s += "^" + std::to_string(e);
    factors.push_back(std::move(s));
}

// Writes c * (monomial given by factors) as one or more '+'-joined terms.
void write_term(std::ostringstream& os, bool& first, const Field& F, Fe c, const std::vector<std::string>& mono) {
    auto emit = [&](std::uint64_t digit, std::vector<std::string> factors) {
        if (!first) os << '+';
        first = false;
        if (factors.empty()) {
            os << digit;
            return;
        }
        if (digit != 1) os << digit << '*';
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    };
    if (F.is_prime_field()) {
        emit(c.v, mono);
        return;
    }
    const auto digits = F.coeffs(c);
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] == 0) continue;
        auto factors = mono;
        append_monomial(factors, 'y', static_cast<unsigned>(i));
        emit(digits[i], std::move(factors));
    }
}

}  // namespace

BiPoly BiPoly::from_x_coeffs(FieldRef field, const std::vector<Poly>& coeffs) {
    BiPoly r(std::move(field));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const auto& c = coeffs[j].coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) r.set_coeff(static_cast<unsigned>(i), static_cast<unsigned>(j), c[i]);
    }
    return r;
}

BiPoly BiPoly::from_t_coeffs(FieldRef field, const std::vector<Poly>& coeffs) {
    BiPoly r(std::move(field));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& c = coeffs[i].coeffs();
        for (std::size_t j = 0; j < c.size(); ++j) r.set_coeff(static_cast<unsigned>(i), static_cast<unsigned>(j), c[j]);
    }
    return r;
}

BiPoly BiPoly::from_univariate(const Poly& p, char var) {
    BiPoly r(p.field());
    const auto& c = p.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (var == 't') {
            r.set_coeff(static_cast<unsigned>(i), 0, c[i]);
        } else {
            r.set_coeff(0, static_cast<unsigned>(i), c[i]);
        }
    }
    return r;
}

int BiPoly::total_degree() const noexcept {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.first + k.second));
    return d;
}

int BiPoly::degree_t() const noexcept {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.first));
    return d;
}

int BiPoly::degree_x() const noexcept {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.second));
    return d;
}

Fe BiPoly::coeff(unsigned i, unsigned j) const noexcept {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Fe{0} : it->second;
}

void BiPoly::set_coeff(unsigned i, unsigned j, Fe c) {
    if (c.v == 0) {
        terms_.erase({i, j});
    } else {
        terms_[{i, j}] = c;
    }
}

void BiPoly::add_term(unsigned i, unsigned j, Fe c) { set_coeff(i, j, F().add(coeff(i, j), c)); }

Fe BiPoly::eval(Fe t, Fe x) const noexcept {
    const Field& F = *field_;
    Fe r = F.zero();
    for (const auto& [k, c] : terms_) r = F.add(r, F.mul(c, F.mul(F.pow(t, k.first), F.pow(x, k.second))));
    return r;
}

std::vector<Poly> BiPoly::x_coeffs() const {
    std::vector<std::vector<Fe>> raw(static_cast<std::size_t>(std::max(degree_x(), -1) + 1));
    for (const auto& [k, c] : terms_) {
        auto& v = raw[k.second];
        if (v.size() <= k.first) v.resize(k.first + 1, Fe{0});
        v[k.first] = c;
    }
    std::vector<Poly> out;
    out.reserve(raw.size());
    for (auto& v : raw) out.emplace_back(field_, std::move(v), 't');
    return out;
}

std::vector<Poly> BiPoly::t_coeffs() const {
    std::vector<std::vector<Fe>> raw(static_cast<std::size_t>(std::max(degree_t(), -1) + 1));
    for (const auto& [k, c] : terms_) {
        auto& v = raw[k.first];
        if (v.size() <= k.second) v.resize(k.second + 1, Fe{0});
        v[k.second] = c;
    }
    std::vector<Poly> out;
    out.reserve(raw.size());
    for (auto& v : raw) out.emplace_back(field_, std::move(v), 'x');
    return out;
}

Poly BiPoly::at_t(Fe c) const {
    const Field& F = *field_;
    std::vector<Fe> r(static_cast<std::size_t>(std::max(degree_x(), 0) + 1), Fe{0});
    for (const auto& [k, v] : terms_) r[k.second] = F.add(r[k.second], F.mul(v, F.pow(c, k.first)));
    return Poly(field_, std::move(r), 'x');
}

Poly BiPoly::at_x(Fe c) const {
    const Field& F = *field_;
    std::vector<Fe> r(static_cast<std::size_t>(std::max(degree_t(), 0) + 1), Fe{0});
    for (const auto& [k, v] : terms_) r[k.first] = F.add(r[k.first], F.mul(v, F.pow(c, k.second)));
    return Poly(field_, std::move(r), 't');
}

BiPoly BiPoly::swapped() const {
    BiPoly r(field_);
    for (const auto& [k, c] : terms_) r.terms_[{k.second, k.first}] = c;
    return r;
}

BiPoly BiPoly::d_dt() const {
    BiPoly r(field_);
    for (const auto& [k, c] : terms_) {
        if (k.first == 0) continue;
        r.set_coeff(k.first - 1, k.second, F().mul(c, F().from_int(k.first % F().p())));
    }
    return r;
}

BiPoly BiPoly::d_dx() const {
    BiPoly r(field_);
    for (const auto& [k, c] : terms_) {
        if (k.second == 0) continue;
        r.set_coeff(k.first, k.second - 1, F().mul(c, F().from_int(k.second % F().p())));
    }
    return r;
}

BiPoly BiPoly::mapped(const Embedding& emb) const {
    BiPoly r(emb.target());
    for (const auto& [k, c] : terms_) r.terms_[k] = emb(c);
    return r;
}

BiPoly BiPoly::over(const FieldRef& field) const {
    if (field == field_ || *field == *field_) return *this;
    return mapped(Embedding(field_, field));
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Fe>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        const unsigned da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : items) {
        std::vector<std::string> mono;
        append_monomial(mono, 't', k.first);
        append_monomial(mono, 'x', k.second);
        write_term(os, first, *field_, c, mono);
    }
    return os.str();
}

BiPoly& BiPoly::operator+=(const BiPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, F().neg(c));
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.field_);
    const Field& F = *a.field_;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, F.mul(ca, cb));
    }
    return r;
}

std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) fail(ErrorCode::InvalidArgument, "division by the zero polynomial");
    // long division in x with exact division of the leading t-coefficients
    std::vector<Poly> rem = a.x_coeffs();
    const std::vector<Poly> den = b.x_coeffs();
    const int db = static_cast<int>(den.size()) - 1;
    const int da = static_cast<int>(rem.size()) - 1;
    if (da < db) {
        if (a.is_zero()) return BiPoly(a.field());
        return std::nullopt;
    }
    std::vector<Poly> quo(static_cast<std::size_t>(da - db + 1), Poly(a.field(), 't'));
    for (int i = da; i >= db; --i) {
        if (rem[i].is_zero()) continue;
        auto [qt, r] = divmod(rem[i], den[db]);
        if (!r.is_zero()) return std::nullopt;
        quo[i - db] = qt;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= qt * den[j];
    }
    for (const auto& r : rem) {
        if (!r.is_zero()) return std::nullopt;
    }
    return BiPoly::from_x_coeffs(a.field(), quo);
}

Fe HomForm::coeff(const Key& k) const noexcept {
    auto it = terms_.find(k);
    return it == terms_.end() ? Fe{0} : it->second;
}

void HomForm::add_term(const Key& k, Fe c) {
    if (k[0] + k[1] + k[2] != degree_) fail(ErrorCode::InvalidArgument, "term degree does not match the form");
    Fe s = F().add(coeff(k), c);
    if (s.v == 0) {
        terms_.erase(k);
    } else {
        terms_[k] = s;
    }
}

Fe HomForm::eval(Fe T, Fe X, Fe Z) const noexcept {
    const Field& F = *field_;
    Fe r = F.zero();
    for (const auto& [k, c] : terms_) {
        r = F.add(r, F.mul(c, F.mul(F.pow(T, k[0]), F.mul(F.pow(X, k[1]), F.pow(Z, k[2])))));
    }
    return r;
}

HomForm HomForm::partial(int var) const {
    HomForm r(field_, degree_ == 0 ? 0 : degree_ - 1);
    for (const auto& [k, c] : terms_) {
        if (k[var] == 0) continue;
        Key nk = k;
        --nk[var];
        r.add_term(nk, F().mul(c, F().from_int(k[var] % F().p())));
    }
    return r;
}

HomForm HomForm::substituted(const std::array<std::array<Fe, 3>, 3>& m) const {
    const Field& F = *field_;
    // powers[v][e] = (linear form v)^e as a map of exponent triples
    using Sparse = std::map<Key, Fe>;
    auto multiply = [&](const Sparse& x, const Sparse& y) {
        Sparse out;
        for (const auto& [kx, cx] : x) {
            for (const auto& [ky, cy] : y) {
                Key k{kx[0] + ky[0], kx[1] + ky[1], kx[2] + ky[2]};
                Fe s = F.add(out[k], F.mul(cx, cy));
                if (s.v == 0) {
                    out.erase(k);
                } else {
                    out[k] = s;
                }
            }
        }
        return out;
    };
    std::array<std::vector<Sparse>, 3> powers;
    for (int v = 0; v < 3; ++v) {
        Sparse lin;
        for (int j = 0; j < 3; ++j) {
            if (m[v][j].v == 0) continue;
            Key k{0, 0, 0};
            k[j] = 1;
            lin[k] = m[v][j];
        }
        powers[v].push_back(Sparse{{Key{0, 0, 0}, F.one()}});
        for (unsigned e = 1; e <= degree_; ++e) powers[v].push_back(multiply(powers[v].back(), lin));
    }
    HomForm r(field_, degree_);
    for (const auto& [k, c] : terms_) {
        Sparse prod = multiply(multiply(powers[0][k[0]], powers[1][k[1]]), powers[2][k[2]]);
        for (const auto& [pk, pc] : prod) r.add_term(pk, F.mul(c, pc));
    }
    return r;
}

HomForm HomForm::mapped(const Embedding& emb) const {
    HomForm r(emb.target(), degree_);
    for (const auto& [k, c] : terms_) r.terms_[k] = emb(c);
    return r;
}

BiPoly HomForm::dehomogenize() const {
    BiPoly r(field_);
    for (const auto& [k, c] : terms_) r.add_term(k[0], k[1], c);
    return r;
}

Poly HomForm::restrict_x(Fe T0, Fe Z0) const {
    const Field& F = *field_;
    std::vector<Fe> r(degree_ + 1, Fe{0});
    for (const auto& [k, c] : terms_) r[k[1]] = F.add(r[k[1]], F.mul(c, F.mul(F.pow(T0, k[0]), F.pow(Z0, k[2]))));
    return Poly(field_, std::move(r), 'X');
}

std::string HomForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::vector<std::string> mono;
        append_monomial(mono, 'T', it->first[0]);
        append_monomial(mono, 'X', it->first[1]);
        append_monomial(mono, 'Z', it->first[2]);
        write_term(os, first, *field_, it->second, mono);
    }
    return os.str();
}

HomForm homogenize(const BiPoly& f) {
    const int d = f.total_degree();
    if (d < 1) fail(ErrorCode::ZeroOrConstant, "homogenization needs total degree >= 1");
    HomForm r(f.field(), static_cast<unsigned>(d));
    for (const auto& [k, c] : f.terms()) r.add_term({k.first, k.second, static_cast<unsigned>(d) - k.first - k.second}, c);
    return r;
}

}  // namespace fqs
