#include "fqs/schinzel.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "fqs/error.hpp"

namespace fqs {

namespace mp = boost::multiprecision;

namespace {

BigInt ipow(std::uint64_t q, unsigned s) {
    BigInt r = 1;
    for (unsigned i = 0; i < s; ++i) r *= q;
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

const BigInt& scale() {
    static const BigInt s = BigInt(1) << 64;
    return s;
}

Interval exact(const Rational& v) { return {v, v}; }

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval scaled(const Interval& x, const Rational& c) {
    if (c >= 0) return {x.lo * c, x.hi * c};
    return {x.hi * c, x.lo * c};
}

// Q^{1/2} and Q^{1/4} to within 2^-64, rounded outward.
Interval sqrt_enclosure(const BigInt& Q) {
    const BigInt r = mp::sqrt(BigInt(Q << 128));
    return {Rational(r, scale()), Rational(r + 1, scale())};
}

Interval fourth_root_enclosure(const BigInt& Q) {
    const BigInt r = mp::sqrt(mp::sqrt(BigInt(Q << 256)));
    return {Rational(r, scale()), Rational(r + 1, scale())};
}

bool char_divides(std::uint64_t p, unsigned d) { return (static_cast<std::uint64_t>(d) * (d - 1)) % p == 0; }

// Field of order q^s over the coefficient field of f.
unsigned extension_degree(const FieldRef& base, const FieldRef& field) {
    if (base->p() != field->p() || field->k() % base->k() != 0) {
        fail(ErrorCode::IncompatibleTower, "the counting field does not contain the coefficient field");
    }
    return field->k() / base->k();
}

// Restrictions f(t, a t + b) for a fixed curve and field.
class Restrictor {
public:
    Restrictor(const BiPoly& f, const FieldRef& field) : field_(field), xc_(f.over(field).x_coeffs()) {
        d_ = static_cast<unsigned>(f.total_degree());
        top_.assign(d_ + 1, field->zero());
        const BiPoly g = f.over(field);
        for (unsigned j = 0; j <= d_; ++j) top_[j] = g.coeff(d_ - j, j);
    }

    Poly operator()(Fe a, Fe b) const {
        const Poly line(field_, {b, a}, 't');
        Poly r(field_, 't');
        for (std::size_t j = xc_.size(); j-- > 0;) r = r * line + xc_[j];
        return r;
    }

    /// Coefficient of t^d in f(t, a t + b); independent of b.
    Fe lead(Fe a) const {
        const Field& F = *field_;
        Fe r = F.zero();
        for (std::size_t j = top_.size(); j-- > 0;) r = F.add(F.mul(r, a), top_[j]);
        return r;
    }

    unsigned degree() const noexcept { return d_; }

private:
    FieldRef field_;
    std::vector<Poly> xc_;
    std::vector<Fe> top_;
    unsigned d_ = 0;
};

struct Tally {
    std::uint64_t full = 0;
    std::uint64_t inclusive = 0;
};

void classify(const Poly& h, unsigned d, Tally& t) {
    const int e = h.degree();
    if (e < 1 || !is_irreducible(h)) return;
    ++t.inclusive;
    if (static_cast<unsigned>(e) == d) ++t.full;
}

constexpr std::uint64_t kSieveMaxOrder = std::uint64_t{1} << 22;
constexpr std::uint64_t kRowsPerBlock = 64;

// Affine points of f over the field, in (t, x) order; nullopt when some
// vertical line t = c is a component.
std::optional<std::vector<std::pair<Fe, Fe>>> affine_points(const BiPoly& g, const ParallelMap& pm) {
    const std::uint64_t Q = g.field()->q();
    const std::size_t blocks = static_cast<std::size_t>((Q + kRowsPerBlock - 1) / kRowsPerBlock);
    std::vector<std::vector<std::pair<Fe, Fe>>> part(blocks);
    std::vector<char> vertical(blocks, 0);
    pm.for_each(blocks, [&](std::size_t blk) {
        const std::uint64_t lo = blk * kRowsPerBlock, hi = std::min(Q, lo + kRowsPerBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const Poly row = g.at_t(Fe{t});
            if (row.is_zero()) {
                vertical[blk] = 1;
                return;
            }
            if (row.degree() < 1) continue;
            for (Fe x : roots(row)) part[blk].emplace_back(Fe{t}, x);
        }
    });
    if (std::find(vertical.begin(), vertical.end(), 1) != vertical.end()) return std::nullopt;
    std::vector<std::pair<Fe, Fe>> pts;
    for (auto& v : part) pts.insert(pts.end(), v.begin(), v.end());
    return pts;
}

// For d <= 3 a full-degree restriction is irreducible iff it has no root, and
// f(t, a t + b) has a root iff b = x - a t for some affine point (t, x).
Tally count_root_sieve(const Restrictor& r, const FieldRef& field, const std::vector<std::pair<Fe, Fe>>& pts,
                       const ParallelMap& pm) {
    const Field& F = *field;
    const std::uint64_t Q = F.q();
    const unsigned d = r.degree();
    const std::size_t blocks = static_cast<std::size_t>((Q + kRowsPerBlock - 1) / kRowsPerBlock);
    std::vector<Tally> part(blocks);
    pm.for_each(blocks, [&](std::size_t blk) {
        std::vector<std::uint32_t> stamp(Q, 0);
        Tally& tl = part[blk];
        const std::uint64_t lo = blk * kRowsPerBlock, hi = std::min(Q, lo + kRowsPerBlock);
        for (std::uint64_t av = lo; av < hi; ++av) {
            const Fe a{av};
            if (r.lead(a).v == 0) {
                for (std::uint64_t b = 0; b < Q; ++b) classify(r(a, Fe{b}), d, tl);
                continue;
            }
            const auto mark = static_cast<std::uint32_t>(av - lo + 1);
            std::uint64_t hit = 0;
            for (const auto& [t, x] : pts) {
                auto& s = stamp[F.sub(x, F.mul(a, t)).v];
                if (s != mark) {
                    s = mark;
                    ++hit;
                }
            }
            tl.full += Q - hit;
            tl.inclusive += Q - hit;
        }
    });
    Tally out;
    for (const auto& t : part) {
        out.full += t.full;
        out.inclusive += t.inclusive;
    }
    return out;
}

Tally count_generic(const Restrictor& r, const FieldRef& field, const ParallelMap& pm) {
    const std::uint64_t Q = field->q();
    const unsigned d = r.degree();
    const std::size_t rows = static_cast<std::size_t>(Q);
    std::vector<Tally> part(rows);
    pm.for_each(rows, [&](std::size_t av) {
        for (std::uint64_t b = 0; b < Q; ++b) classify(r(Fe{av}, Fe{b}), d, part[av]);
    });
    Tally out;
    for (const auto& t : part) {
        out.full += t.full;
        out.inclusive += t.inclusive;
    }
    return out;
}

bool proportional(const BiPoly& f, const BiPoly& g) {
    if (f.is_zero() || g.is_zero() || f.terms().size() != g.terms().size()) return false;
    const Field& F = f.F();
    const auto& [k0, c0] = *f.terms().begin();
    const auto& [k1, c1] = *g.terms().begin();
    if (k0 != k1) return false;
    const Fe ratio = F.div(c1, c0);
    for (const auto& [k, c] : f.terms()) {
        if (!(g.coeff(k.first, k.second) == F.mul(ratio, c))) return false;
    }
    return true;
}

std::string describe(std::size_t i, const std::string& what) {
    std::ostringstream os;
    os << "curve " << i << ": " << what;
    return os.str();
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

}  // namespace

double Interval::approx() const { return static_cast<double>(Rational((lo + hi) / 2)); }

std::string_view to_string(Comparison c) {
    switch (c) {
        case Comparison::AtLeast: return "at_least";
        case Comparison::Below: return "below";
        case Comparison::Undecided: return "undecided";
    }
    return "?";
}

Comparison compare_count(std::uint64_t count, const Interval& x) {
    const Rational c(count);
    if (c >= x.hi) return Comparison::AtLeast;
    if (c < x.lo) return Comparison::Below;
    return Comparison::Undecided;
}

GaloisData galois_parameters(const std::vector<unsigned>& degrees, const std::vector<unsigned>& genera) {
    if (degrees.empty() || degrees.size() != genera.size()) {
        fail(ErrorCode::InvalidArgument, "one genus per degree is required");
    }
    GaloisData gd;
    gd.degrees = degrees;
    gd.genera = genera;
    BigInt N = 1;
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 2) fail(ErrorCode::HypothesisViolation, "every degree must be at least 2");
        N *= factorial(degrees[i]);
        gd.branch_degrees.push_back(2 * genera[i] - 2 + 2 * degrees[i]);
        sum += static_cast<std::int64_t>(genera[i]) - 1 + degrees[i];
    }
    if (N > std::numeric_limits<std::int64_t>::max() / (sum + 1)) {
        fail(ErrorCode::DegreeOutOfRange, "the Galois group order overflows 64 bits");
    }
    gd.N = static_cast<std::uint64_t>(N);
    const auto Ns = static_cast<std::int64_t>(gd.N);
    gd.genus_paper = 1 - Ns + Ns * sum;

    std::int64_t branch_sum = 0;
    for (unsigned r : gd.branch_degrees) branch_sum += r;
    bool ok = 2 * (gd.genus_paper - 1 + Ns) == Ns * branch_sum;  // g - 1 + N = (N/2) sum deg R_i
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        ok = ok && gd.branch_degrees[i] == 2 * genera[i] - 2 + 2 * degrees[i];
    }
    if (degrees.size() == 1) {
        const std::int64_t d = degrees[0];
        gd.genus_single_closed_form = 1 + Ns * (d - 2) * (d + 1) / 2;
        if (genera[0] == (d - 1) * (d - 2) / 2) ok = ok && *gd.genus_single_closed_form == gd.genus_paper;
        if (d == 2) gd.genus_sanity = genera[0];
    }
    gd.consistent = ok;
    return gd;
}

GaloisData galois_parameters(const std::vector<CurveReport>& curves) {
    std::vector<unsigned> degrees, genera;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const CurveReport& c = curves[i];
        if (c.d < 2 || !c.char_ok || !c.smooth || !c.genus ||
            c.irreducible.status != IrreducibilityCertificate::Status::Irreducible) {
            fail(ErrorCode::HypothesisViolation, describe(i, "not a smooth irreducible curve of degree >= 2 with p not dividing d(d-1)"));
        }
        degrees.push_back(c.d);
        genera.push_back(*c.genus);
    }
    return galois_parameters(degrees, genera);
}

Interval geyer_jarden_rhs(std::uint64_t q, unsigned s, std::uint64_t N, std::int64_t g) {
    if (q < 2 || s < 1 || N < 1 || g < 0) fail(ErrorCode::InvalidArgument, "requires q >= 2, s >= 1, N >= 1, g >= 0");
    const BigInt Q = ipow(q, s);
    const BigInt n = N;
    const Interval sum = exact(Rational(Q)) + scaled(sqrt_enclosure(Q), Rational(-(n + 2 * g))) +
                         scaled(fourth_root_enclosure(Q), Rational(-n)) + exact(Rational(-2 * (g + n)));
    return scaled(sum, Rational(BigInt(1), n));
}

BoundReport application_bound(std::uint64_t q, unsigned d) {
    if (d < 2) fail(ErrorCode::DegreeTooSmall, "the bound needs d >= 2");
    if (d > 20) fail(ErrorCode::DegreeOutOfRange, "d! must fit in 64 bits");
    if (prime_power(q).second == 0) fail(ErrorCode::NotPrime, "q is not a prime power");
    BoundReport br;
    br.q = q;
    br.d = d;
    const BigInt dfact = factorial(d);
    br.N = static_cast<std::uint64_t>(dfact);
    const std::int64_t dd = d;
    br.g = 1 + static_cast<std::int64_t>(br.N) * (dd - 2) * (dd + 1) / 2;
    br.gj_rhs = geyer_jarden_rhs(q, 1, br.N, br.g);

    const BigInt c = BigInt(d) * (d - 1) * dfact + 2;
    br.threshold = 9 * c * c;
    br.app_threshold_ok = BigInt(q) > br.threshold;

    const BigInt d4 = BigInt(d) * d * d * d;
    const Rational first = Rational(BigInt(q)) - Rational(d4, BigInt(2));
    const Interval second =
        exact(Rational(BigInt(q))) + scaled(sqrt_enclosure(BigInt(q)), Rational(-3 * c)) + exact(Rational(-dfact));
    br.app_bound = scaled(scaled(second, first), Rational(BigInt(1), dfact));
    br.positive = br.app_bound.positive();
    return br;
}

std::string_view to_string(CountMode m) { return m == CountMode::Inclusive ? "inclusive" : "full-degree"; }

double CountReport::density() const {
    if (total_pairs == 0) return 0.0;
    return static_cast<double>(count()) / static_cast<double>(total_pairs);
}

std::vector<std::string> hypothesis_failures(const std::vector<BiPoly>& curves, bool require_odd_characteristic) {
    std::vector<std::string> out;
    if (curves.empty()) {
        out.emplace_back("no curves given");
        return out;
    }
    const FieldRef& base = curves.front().field();
    if (require_odd_characteristic && base->p() == 2) out.emplace_back("characteristic 2");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const BiPoly& f = curves[i];
        if (!(*f.field() == *base)) {
            out.push_back(describe(i, "coefficient field differs from the first curve"));
            continue;
        }
        const int deg = f.total_degree();
        if (deg < 2) {
            out.push_back(describe(i, "total degree below 2"));
            continue;
        }
        const auto d = static_cast<unsigned>(deg);
        if (char_divides(base->p(), d)) {
            out.push_back(describe(i, "the characteristic divides d(d-1)"));
            continue;
        }
        try {
            const SmoothnessResult sr = is_smooth(f);
            if (!sr.smooth) out.push_back(describe(i, "singular at " + sr.singular_point->to_string()));
        } catch (const Error& e) {
            out.push_back(describe(i, std::string("smoothness undecided: ") + e.what()));
        }
        const auto cert = bivariate_irreducible(f);
        if (cert.status != IrreducibilityCertificate::Status::Irreducible) {
            out.push_back(describe(i, std::string("irreducibility ") + std::string(to_string(cert.status))));
        }
    }
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            if (*curves[i].field() == *curves[j].field() && proportional(curves[i], curves[j])) {
                out.push_back("curves " + std::to_string(i) + " and " + std::to_string(j) + " are proportional");
            }
        }
    }
    return out;
}

CountReport count_irreducible_pairs(const BiPoly& f, const FieldRef& field, const CountOptions& opts) {
    const int deg = f.total_degree();
    if (deg < 2) fail(ErrorCode::HypothesisViolation, "total degree below 2");
    const auto d = static_cast<unsigned>(deg);
    if (char_divides(f.F().p(), d)) fail(ErrorCode::HypothesisViolation, "the characteristic divides d(d-1)");
    const unsigned s = extension_degree(f.field(), field);
    if (opts.check_hypotheses) {
        const auto failures = hypothesis_failures({f}, false);
        if (!failures.empty()) fail(ErrorCode::HypothesisViolation, join(failures));
    }
    const ParallelMap& pm = opts.parallel ? *opts.parallel : serial_map();
    const std::uint64_t Q = field->q();
    if (Q > (std::uint64_t{1} << 31)) fail(ErrorCode::FieldTooLarge, "exhaustive counting needs q^s < 2^31");

    CountReport rep;
    rep.q = f.F().q();
    rep.s = s;
    rep.field_order = Q;
    rep.total_pairs = BigInt(Q) * Q;
    rep.mode = opts.mode;

    const Restrictor r(f, field);
    CountEngine engine = opts.engine;
    std::optional<std::vector<std::pair<Fe, Fe>>> pts;
    if (engine != CountEngine::Generic && d <= 3 && Q <= kSieveMaxOrder) pts = affine_points(f.over(field), pm);
    if (engine == CountEngine::Auto) engine = pts ? CountEngine::RootSieve : CountEngine::Generic;
    if (engine == CountEngine::RootSieve && !pts) {
        fail(ErrorCode::InvalidArgument, "the root sieve needs d <= 3, a small field and no vertical component");
    }
    rep.engine = engine;
    const Tally t = engine == CountEngine::RootSieve ? count_root_sieve(r, field, *pts, pm) : count_generic(r, field, pm);
    rep.count_full_degree = t.full;
    rep.count_inclusive = t.inclusive;
    return rep;
}

SpecializationResult find_specialization(const std::vector<BiPoly>& curves, unsigned s_max, const SearchOptions& opts) {
    if (curves.empty()) fail(ErrorCode::InvalidArgument, "no curves given");
    if (s_max < 1) fail(ErrorCode::InvalidArgument, "s_max must be at least 1");
    const FieldRef base = curves.front().field();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        if (!(*curves[i].field() == *base)) fail(ErrorCode::InvalidArgument, describe(i, "coefficient field differs"));
        const int deg = curves[i].total_degree();
        if (deg < 2 || char_divides(base->p(), static_cast<unsigned>(deg))) {
            fail(ErrorCode::HypothesisViolation, describe(i, "degree below 2 or the characteristic divides d(d-1)"));
        }
    }
    if (opts.check_hypotheses) {
        const auto failures = hypothesis_failures(curves, true);
        if (!failures.empty()) fail(ErrorCode::HypothesisViolation, join(failures));
    }
    const ParallelMap& pm = opts.parallel ? *opts.parallel : serial_map();
    constexpr std::uint64_t kBlock = 2048;
    const std::uint64_t blocks_per_wave = std::max<std::uint64_t>(pm.workers(), 1) * 4;

    std::uint64_t scanned = 0;
    unsigned s_tried = 0;
    for (unsigned s = 1; s <= s_max; ++s) {
        if (static_cast<std::uint64_t>(base->k()) * s > 62) break;
        const std::uint64_t Q = ipow(base->q(), s) < (BigInt(1) << 31) ? static_cast<std::uint64_t>(ipow(base->q(), s)) : 0;
        if (Q == 0) break;
        s_tried = s;
        const FieldRef K = Field::make(base->p(), base->k() * s);
        std::vector<Restrictor> rs;
        for (const auto& f : curves) rs.emplace_back(f, K);
        auto is_witness = [&](Fe a, Fe b) {
            for (const auto& r : rs) {
                if (opts.mode == CountMode::FullDegree && r.lead(a).v == 0) return false;
                const Poly h = r(a, b);
                if (h.degree() < 1 || !is_irreducible(h)) return false;
            }
            return true;
        };
        const std::uint64_t total = Q * Q;
        for (std::uint64_t start = 0; start < total; start += kBlock * blocks_per_wave) {
            const std::uint64_t n = std::min<std::uint64_t>(blocks_per_wave, (total - start + kBlock - 1) / kBlock);
            if (opts.pair_budget && scanned + (start) >= opts.pair_budget) break;
            std::vector<std::uint64_t> first(n, total);
            pm.for_each(static_cast<std::size_t>(n), [&](std::size_t i) {
                const std::uint64_t lo = start + i * kBlock, hi = std::min(total, lo + kBlock);
                for (std::uint64_t idx = lo; idx < hi; ++idx) {
                    if (is_witness(Fe{idx / Q}, Fe{idx % Q})) {
                        first[i] = idx;
                        return;
                    }
                }
            });
            const std::uint64_t best = *std::min_element(first.begin(), first.end());
            if (best == total) continue;
            if (opts.pair_budget && scanned + best + 1 > opts.pair_budget) break;
            SpecializationResult res;
            res.s = s;
            res.field = K;
            res.a = Fe{best / Q};
            res.b = Fe{best % Q};
            res.pairs_scanned = scanned + best + 1;
            for (const auto& r : rs) {
                Poly h = r(res.a, res.b);
                Factorization fz = factor(h, opts.seed);
                if (!fz.single_irreducible()) fail(ErrorCode::InvalidArgument, "witness failed re-verification");
                res.witnesses.push_back({std::move(h), std::move(fz)});
            }
            return res;
        }
        scanned += total;
        if (opts.pair_budget && scanned >= opts.pair_budget) break;
    }
    fail(ErrorCode::NotFoundWithinBudget,
         "no simultaneous irreducible specialization up to s = " + std::to_string(s_tried) + "; raise s_max");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::ThresholdNotMet: return "THRESHOLD_NOT_MET";
        case Verdict::HypothesisFail: return "HYPOTHESIS_FAIL";
        case Verdict::Undecided: return "UNDECIDED";
    }
    return "?";
}

ApplicationReport verify_application(const BiPoly& f, const ParallelMap* parallel) {
    ApplicationReport rep;
    const int deg = f.total_degree();
    if (deg < 2) {
        rep.verdict = Verdict::HypothesisFail;
        rep.reasons.emplace_back("total degree below 2");
        return rep;
    }
    rep.d = static_cast<unsigned>(deg);
    rep.char_ok = !char_divides(f.F().p(), rep.d);
    bool undecided = false;
    if (!rep.char_ok) rep.reasons.emplace_back("the characteristic divides d(d-1)");
    try {
        const SmoothnessResult sr = is_smooth(f);
        rep.smooth = sr.smooth;
        rep.singular_witness = sr.singular_point;
        if (!sr.smooth) rep.reasons.push_back("singular at " + sr.singular_point->to_string());
    } catch (const Error& e) {
        rep.reasons.push_back(std::string("smoothness not decided: ") + e.what());
        if (e.code() == ErrorCode::SmoothnessUndecided) undecided = true;
    }
    rep.irreducible = bivariate_irreducible(f).status;
    if (*rep.irreducible == IrreducibilityCertificate::Status::Reducible) rep.reasons.emplace_back("reducible");
    if (*rep.irreducible == IrreducibilityCertificate::Status::Inconclusive) {
        rep.reasons.emplace_back("irreducibility inconclusive");
        undecided = true;
    }
    if (!rep.reasons.empty()) {
        rep.verdict = undecided && rep.char_ok && rep.smooth.value_or(true) ? Verdict::Undecided : Verdict::HypothesisFail;
        return rep;
    }

    rep.bound = application_bound(f.F().q(), rep.d);
    CountOptions co;
    co.mode = CountMode::Inclusive;
    co.check_hypotheses = false;
    co.parallel = parallel;
    rep.count = count_irreducible_pairs(f, f.field(), co);
    if (!rep.bound->app_threshold_ok) {
        rep.verdict = Verdict::ThresholdNotMet;
        rep.reasons.emplace_back("q does not exceed 9(d(d-1)d!+2)^2");
        return rep;
    }
    if (rep.bound->app_bound.nonpositive()) {
        rep.vacuous = true;
        rep.verdict = Verdict::Pass;
        rep.reasons.emplace_back("bound is not positive");
        return rep;
    }
    switch (compare_count(rep.count->count_inclusive, rep.bound->app_bound)) {
        case Comparison::AtLeast: rep.verdict = Verdict::Pass; break;
        case Comparison::Below:
            rep.verdict = Verdict::Fail;
            rep.reasons.emplace_back("count below the bound");
            break;
        case Comparison::Undecided:
            rep.verdict = Verdict::Undecided;
            rep.reasons.emplace_back("count within the bound's enclosure");
            break;
    }
    return rep;
}

}  // namespace fqs
