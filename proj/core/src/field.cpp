#include "fqs/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "fqs/error.hpp"
#include "fqs/poly.hpp"

namespace fqs {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Checked p^k; returns 0 on overflow past Field::kMaxOrder.
std::uint64_t checked_power(std::uint64_t p, unsigned k) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > (Field::kMaxOrder - 1) / p) return 0;
        q *= p;
    }
    return q;
}

class FieldCache {
   public:
    FieldRef find(const std::vector<std::uint64_t>& key) const {
        std::shared_lock lock(mu_);
        auto it = fields_.find(key);
        return it == fields_.end() ? nullptr : it->second;
    }
    FieldRef insert(const std::vector<std::uint64_t>& key, FieldRef f) {
        std::unique_lock lock(mu_);
        auto [it, inserted] = fields_.emplace(key, std::move(f));
        return it->second;
    }

   private:
    mutable std::shared_mutex mu_;
    std::map<std::vector<std::uint64_t>, FieldRef> fields_;
};

FieldCache& cache() {
    static FieldCache c;
    return c;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % sp == 0) return n == sp;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) noexcept {
    if (q < 2) return {0, 0};
    if (is_prime(q)) return {q, 1};
    for (unsigned k = 2; k < 64; ++k) {
        // floor of the k-th root, corrected for rounding
        auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(q), 1.0L / k) + 0.5L);
        for (std::uint64_t c = (r > 2 ? r - 1 : 2); c <= r + 1; ++c) {
            std::uint64_t v = 1;
            bool over = false;
            for (unsigned i = 0; i < k; ++i) {
                if (v > q / c) {
                    over = true;
                    break;
                }
                v *= c;
            }
            if (!over && v == q && is_prime(c)) return {c, k};
        }
        if (r < 2) break;
    }
    return {0, 0};
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::IncompatibleTower: return "IncompatibleTower";
        case ErrorCode::ZeroOrConstant: return "ZeroOrConstant";
        case ErrorCode::InseparableInput: return "InseparableInput";
        case ErrorCode::CharacteristicDividesDegree: return "CharacteristicDividesDegree";
        case ErrorCode::SmoothnessUndecided: return "SmoothnessUndecided";
        case ErrorCode::BasePointOnCurve: return "BasePointOnCurve";
        case ErrorCode::CharacteristicObstruction: return "CharacteristicObstruction";
        case ErrorCode::GenericPointNotFound: return "GenericPointNotFound";
        case ErrorCode::HypothesisViolation: return "HypothesisViolation";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::NotFoundWithinBudget: return "NotFoundWithinBudget";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------

Field::Field(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), q_(checked_power(p, k_)), modulus_(std::move(modulus)) {
    if (k_ > 1 && q_ <= kTableLimit) build_tables();
}

FieldRef Field::make(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (k < 1) fail(ErrorCode::DegreeOutOfRange, "extension degree must be >= 1");
    if (checked_power(p, k) == 0) {
        fail(ErrorCode::FieldTooLarge, std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^62");
    }
    const std::vector<std::uint64_t> key{p, k};
    if (auto hit = cache().find(key)) return hit;

    std::vector<std::uint64_t> modulus(k + 1, 0);
    modulus[k] = 1;
    if (k > 1) {
        auto prime = make(p, 1);
        const std::uint64_t count = checked_power(p, k);
        for (std::uint64_t e = 0; e < count; ++e) {
            std::uint64_t rest = e;
            for (unsigned i = 0; i < k; ++i) {
                modulus[i] = rest % p;
                rest /= p;
            }
            if (modulus[0] == 0) continue;
            std::vector<Fe> c(k + 1);
            for (unsigned i = 0; i <= k; ++i) c[i] = Fe{modulus[i]};
            if (is_irreducible(Poly(prime, std::move(c), 'y'))) break;
        }
    }
    std::vector<std::uint64_t> mkey{p, 0};
    mkey.insert(mkey.end(), modulus.begin(), modulus.end());
    auto field = cache().find(mkey);
    if (!field) field = cache().insert(mkey, std::make_shared<const Field>(p, modulus));
    return cache().insert(key, field);
}

FieldRef Field::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (modulus.size() < 2) fail(ErrorCode::DegreeOutOfRange, "modulus must have degree >= 1");
    for (auto& c : modulus) c %= p;
    if (modulus.back() != 1) fail(ErrorCode::InvalidArgument, "modulus must be monic");
    const auto k = static_cast<unsigned>(modulus.size() - 1);
    if (checked_power(p, k) == 0) fail(ErrorCode::FieldTooLarge, "field order exceeds 2^62");
    std::vector<std::uint64_t> mkey{p, 0};
    mkey.insert(mkey.end(), modulus.begin(), modulus.end());
    if (auto hit = cache().find(mkey)) return hit;
    if (k > 1) {
        std::vector<Fe> c;
        for (auto m : modulus) c.push_back(Fe{m});
        if (!is_irreducible(Poly(make(p, 1), std::move(c), 'y'))) {
            fail(ErrorCode::InvalidArgument, "modulus is reducible over F_" + std::to_string(p));
        }
    }
    return cache().insert(mkey, std::make_shared<const Field>(p, std::move(modulus)));
}

FieldRef Field::of_order(std::uint64_t q) {
    auto [p, k] = prime_power(q);
    if (p == 0) fail(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    return make(p, k);
}

Fe Field::from_int(std::int64_t n) const noexcept {
    auto pp = static_cast<std::int64_t>(p_ > static_cast<std::uint64_t>(INT64_MAX) ? 0 : p_);
    if (pp == 0) return Fe{static_cast<std::uint64_t>(n < 0 ? 0 : n)};
    std::int64_t r = n % pp;
    if (r < 0) r += pp;
    return Fe{static_cast<std::uint64_t>(r)};
}

Fe Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
    if (coeffs.size() > k_) fail(ErrorCode::InvalidArgument, "too many coordinates for F_" + std::to_string(q_));
    std::uint64_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p_ + coeffs[i] % p_;
    return Fe{v};
}

std::vector<std::uint64_t> Field::coeffs(Fe a) const {
    std::vector<std::uint64_t> out(k_);
    for (unsigned i = 0; i < k_; ++i) {
        out[i] = a.v % p_;
        a.v /= p_;
    }
    return out;
}

Fe Field::generator() const noexcept {
    if (k_ == 1) return neg(Fe{modulus_[0]});
    return Fe{p_};
}

Fe Field::add_digits(Fe a, Fe b) const noexcept {
    std::uint64_t r = 0, scale = 1;
    while (a.v | b.v) {
        std::uint64_t s = a.v % p_ + b.v % p_;
        if (s >= p_) s -= p_;
        r += s * scale;
        scale *= p_;
        a.v /= p_;
        b.v /= p_;
    }
    return Fe{r};
}

Fe Field::neg_digits(Fe a) const noexcept {
    std::uint64_t r = 0, scale = 1;
    while (a.v) {
        std::uint64_t d = a.v % p_;
        r += (d ? p_ - d : 0) * scale;
        scale *= p_;
        a.v /= p_;
    }
    return Fe{r};
}

Fe Field::mul_slow(Fe a, Fe b) const noexcept {
    const unsigned k = k_;
    std::uint64_t da[64], db[64], prod[128] = {};
    for (unsigned i = 0; i < k; ++i) {
        da[i] = a.v % p_;
        a.v /= p_;
        db[i] = b.v % p_;
        b.v /= p_;
    }
    for (unsigned i = 0; i < k; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j])) % p_;
    }
    for (unsigned i = 2 * k - 2; i >= k; --i) {
        const std::uint64_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < k; ++j) {
            const std::uint64_t t = mulmod(c, modulus_[j]);
            prod[i - k + j] = (prod[i - k + j] + p_ - t) % p_;
        }
    }
    std::uint64_t v = 0;
    for (unsigned i = k; i-- > 0;) v = v * p_ + prod[i];
    return Fe{v};
}

void Field::build_tables() {
    const std::uint64_t order = q_ - 1;
    const auto primes = prime_divisors(order);
    Fe g{0};
    for (std::uint64_t v = 2; v < q_; ++v) {
        bool primitive = true;
        for (auto l : primes) {
            if (pow(Fe{v}, order / l) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = Fe{v};
            break;
        }
    }
    std::vector<std::uint32_t> ex(2 * order), lg(q_, 0);
    Fe cur = one();
    for (std::uint64_t i = 0; i < order; ++i) {
        ex[i] = static_cast<std::uint32_t>(cur.v);
        lg[cur.v] = static_cast<std::uint32_t>(i);
        cur = mul_slow(cur, g);
    }
    for (std::uint64_t i = 0; i < order; ++i) ex[order + i] = ex[i];
    exp_ = std::move(ex);
    log_ = std::move(lg);
    if (k_ == 1 || p_ == 2) return;
    std::vector<std::uint32_t> ng(q_), zc(order);
    for (std::uint64_t v = 0; v < q_; ++v) ng[v] = static_cast<std::uint32_t>(neg_digits(Fe{v}).v);
    for (std::uint64_t i = 0; i < order; ++i) {
        const Fe s = add_digits(one(), Fe{exp_[i]});
        zc[i] = s.v == 0 ? kNoZech : log_[s.v];
    }
    neg_ = std::move(ng);
    zech_ = std::move(zc);
}

Fe Field::inv(Fe a) const {
    if (a.v == 0) fail(ErrorCode::InvalidArgument, "inverse of zero");
    if (!log_.empty()) return Fe{exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)]};
    return pow(a, q_ - 2);
}

Fe Field::pow(Fe a, std::uint64_t e) const noexcept {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    if (!log_.empty()) {
        const std::uint64_t order = q_ - 1;
        return Fe{exp_[mulmod64(log_[a.v], e % order, order)]};
    }
    Fe r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fe Field::pth_root(Fe a) const noexcept {
    if (k_ == 1) return a;
    return pow(a, q_ / p_);
}

std::string Field::to_string(Fe a) const {
    if (a.v < p_) return std::to_string(a.v);
    const auto c = coeffs(a);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = k_; i-- > 0;) {
        if (!c[i]) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0 || c[i] != 1) os << c[i];
        if (i > 0) {
            if (c[i] != 1) os << '*';
            os << 'y';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Embedding::Embedding(FieldRef src, FieldRef dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->k() % src_->k() != 0) {
        fail(ErrorCode::IncompatibleTower, "cannot embed F_" + std::to_string(src_->q()) + " into F_" +
                                               std::to_string(dst_->q()));
    }
    const unsigned k = src_->k();
    basis_.reserve(k);
    basis_.push_back(dst_->one());
    if (k == 1) return;
    Fe beta;
    if (*src_ == *dst_) {
        beta = dst_->generator();
    } else {
        std::vector<Fe> c;
        for (auto m : src_->modulus()) c.push_back(dst_->from_int(static_cast<std::int64_t>(m)));
        auto rts = roots(Poly(dst_, std::move(c)));
        beta = rts.front();
    }
    for (unsigned i = 1; i < k; ++i) basis_.push_back(dst_->mul(basis_.back(), beta));
}

Fe Embedding::operator()(Fe e) const {
    if (src_->k() == 1) return Fe{e.v};
    Fe r = dst_->zero();
    const auto c = src_->coeffs(e);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i]) r = dst_->add(r, dst_->mul(dst_->from_int(static_cast<std::int64_t>(c[i])), basis_[i]));
    }
    return r;
}

Fe embed(const FieldRef& src, const FieldRef& dst, Fe e) { return Embedding(src, dst)(e); }

}  // namespace fqs
