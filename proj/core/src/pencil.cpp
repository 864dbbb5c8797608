#include "fqs/pencil.hpp"

#include <algorithm>
#include <sstream>

#include "fqs/error.hpp"

namespace fqs {

namespace {

std::vector<std::vector<Fe>> binomials(const Field& F, unsigned n) {
    std::vector<std::vector<Fe>> b(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        b[i].assign(i + 1, F.one());
        for (unsigned k = 1; k < i; ++k) b[i][k] = F.add(b[i - 1][k - 1], b[i - 1][k]);
    }
    return b;
}

FiberPattern pattern_of(const Poly& h, unsigned d) {
    FiberPattern fp;
    const int e = h.degree();
    if (e >= 1) {
        for (const auto& fa : factor(h).factors) {
            fp.parts.emplace_back(static_cast<unsigned>(fa.poly.degree()), fa.multiplicity);
        }
    }
    if (static_cast<unsigned>(std::max(e, 0)) < d) fp.parts.emplace_back(1u, d - static_cast<unsigned>(std::max(e, 0)));
    std::sort(fp.parts.begin(), fp.parts.end());
    return fp;
}

}  // namespace

bool FiberPattern::ramified() const noexcept {
    return std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.second > 1; });
}

unsigned FiberPattern::total() const noexcept {
    unsigned s = 0;
    for (const auto& [deg, mult] : parts) s += deg * mult;
    return s;
}

std::string FiberPattern::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << '+';
        os << parts[i].first;
        if (parts[i].second > 1) os << '^' << parts[i].second;
    }
    return os.str();
}

unsigned Pencil::branch_degree() const noexcept {
    if (delta.is_zero()) return 0;
    return static_cast<unsigned>(std::max(radical.degree(), 0)) + (infinity_branch() ? 1u : 0u);
}

Pencil pencil_discriminant(const BiPoly& f, AffinePoint M, const FieldRef& field) {
    const int deg = f.total_degree();
    if (deg < 1) fail(ErrorCode::ZeroOrConstant, "pencil of a constant polynomial");
    const unsigned d = static_cast<unsigned>(deg);
    const Field& F = *field;
    if ((static_cast<std::uint64_t>(d) * (d - 1)) % F.p() == 0) {
        fail(ErrorCode::CharacteristicObstruction, "the characteristic divides d(d-1)");
    }
    Pencil pd{.curve = f.over(field),
              .field = field,
              .M = M,
              .d = d,
              .family = {},
              .delta = Poly(field, 'u'),
              .radical = Poly(field, 'u')};
    if (pd.curve.eval(M.t, M.x).v == 0) fail(ErrorCode::BasePointOnCurve, "the base point lies on the curve");

    const auto binom = binomials(F, d);
    std::vector<std::vector<Fe>> fam(d + 1);
    for (unsigned j = 0; j <= d; ++j) fam[j].assign(j + 1, F.zero());
    for (const auto& [k, c] : pd.curve.terms()) {
        const unsigned i = k.first, j = k.second;
        for (unsigned m = 0; m <= i; ++m) {
            const Fe a = F.mul(c, F.mul(binom[i][m], F.pow(M.t, i - m)));
            if (a.v == 0) continue;
            for (unsigned l = 0; l <= j; ++l) {
                const Fe b = F.mul(binom[j][l], F.pow(M.x, j - l));
                fam[m + l][l] = F.add(fam[m + l][l], F.mul(a, b));
            }
        }
    }
    for (auto& v : fam) pd.family.emplace_back(field, std::move(v), 'u');

    pd.form_degree = d * (d - 1);
    pd.delta = form_discriminant(pd.family);
    pd.radical = Poly::constant(field, F.one(), 'u');
    if (pd.delta.is_zero()) {
        pd.generic = false;
        return pd;
    }
    pd.infinity_multiplicity = pd.form_degree - static_cast<unsigned>(pd.delta.degree());
    bool squarefree = pd.infinity_multiplicity <= 1;
    if (pd.delta.degree() >= 1) {
        const Factorization fz = factor(pd.delta);
        pd.branch_factors = fz.factors;
        for (const auto& fa : fz.factors) {
            pd.radical = pd.radical * fa.poly;
            if (fa.multiplicity > 1) squarefree = false;
        }
    }
    pd.generic = squarefree;
    return pd;
}

bool is_generic_point(const BiPoly& f, AffinePoint M, const FieldRef& field) {
    return pencil_discriminant(f, M, field).generic;
}

bool branch_loci_disjoint(const Pencil& a, const Pencil& b) {
    if (a.delta.is_zero() || b.delta.is_zero()) return false;
    if (a.infinity_branch() && b.infinity_branch()) return false;
    return gcd(a.radical, b.radical).degree() == 0;
}

std::vector<AffinePoint> find_generic_points(const std::vector<BiPoly>& curves, const FieldRef& field,
                                             std::size_t count, std::uint64_t trial_budget, std::uint64_t seed) {
    if (curves.empty()) fail(ErrorCode::InvalidArgument, "no curves given");
    const std::uint64_t q = field->q();
    const bool small = q <= (std::uint64_t{1} << 31) && q * q <= kExhaustiveTrials;
    const std::uint64_t lex_trials = small ? q * q : kExhaustiveTrials;
    Rng rng(seed);
    std::vector<AffinePoint> found;
    for (std::uint64_t trial = 0; trial < trial_budget && found.size() < count; ++trial) {
        AffinePoint M;
        if (trial < lex_trials) {
            M = {Fe{trial / q}, Fe{trial % q}};
        } else if (small) {
            break;  // every point has been examined
        } else {
            M = {Fe{rng() % q}, Fe{rng() % q}};
        }
        bool ok = true;
        std::vector<Pencil> pencils;
        for (const auto& f : curves) {
            if (f.over(field).eval(M.t, M.x).v == 0) {
                ok = false;
                break;
            }
            pencils.push_back(pencil_discriminant(f, M, field));
            if (!pencils.back().generic) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < pencils.size(); ++i) {
            for (std::size_t j = i + 1; ok && j < pencils.size(); ++j) ok = branch_loci_disjoint(pencils[i], pencils[j]);
        }
        if (ok && std::find(found.begin(), found.end(), M) == found.end()) found.push_back(M);
    }
    if (found.size() < count) {
        fail(ErrorCode::GenericPointNotFound, "no generic base point within the trial budget; enlarge the field");
    }
    return found;
}

AffinePoint find_generic_point(const std::vector<BiPoly>& curves, const FieldRef& field, std::uint64_t trial_budget,
                               std::uint64_t seed) {
    return find_generic_points(curves, field, 1, trial_budget, seed).front();
}

FiberPattern fiber_pattern(const Pencil& pd, PencilParam u) {
    const Field& F = *pd.field;
    std::vector<Fe> h(pd.d + 1, F.zero());
    for (unsigned j = 0; j <= pd.d; ++j) h[j] = u.infinity ? pd.family[j][j] : pd.family[j].eval(u.u);
    return pattern_of(Poly(pd.field, std::move(h), 's'), pd.d);
}

std::uint64_t PatternHistogram::count(const Key& k) const {
    auto it = unramified.find(k);
    return it == unramified.end() ? 0 : it->second;
}

namespace {

void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur, std::vector<FiberPattern>& out) {
    if (n == 0) {
        FiberPattern fp;
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) fp.parts.emplace_back(*it, 1u);
        out.push_back(std::move(fp));
        return;
    }
    for (unsigned k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<PatternHistogram::Key> cycle_type_classes(const std::vector<unsigned>& degrees) {
    std::vector<PatternHistogram::Key> keys{{}};
    for (unsigned d : degrees) {
        std::vector<FiberPattern> parts;
        std::vector<unsigned> cur;
        partitions(d, d, cur, parts);
        std::sort(parts.begin(), parts.end());
        std::vector<PatternHistogram::Key> next;
        for (const auto& k : keys) {
            for (const auto& fp : parts) {
                next.push_back(k);
                next.back().push_back(fp);
            }
        }
        keys = std::move(next);
    }
    return keys;
}

PatternHistogram pattern_histogram(const std::vector<Pencil>& pencils, const ParallelMap& pm) {
    if (pencils.empty()) fail(ErrorCode::InvalidArgument, "no pencils given");
    const FieldRef& field = pencils.front().field;
    for (const auto& p : pencils) {
        if (!(*p.field == *field) || !(p.M == pencils.front().M)) {
            fail(ErrorCode::InvalidArgument, "pencils must share the base point and the field");
        }
    }
    const std::uint64_t q = field->q();
    const std::uint64_t params = q + 1;  // index q is the vertical line
    constexpr std::uint64_t kBlock = 1024;
    const std::size_t blocks = static_cast<std::size_t>((params + kBlock - 1) / kBlock);
    std::vector<PatternHistogram> partial(blocks);
    pm.for_each(blocks, [&](std::size_t b) {
        PatternHistogram& h = partial[b];
        const std::uint64_t lo = b * kBlock, hi = std::min(params, lo + kBlock);
        for (std::uint64_t v = lo; v < hi; ++v) {
            const PencilParam u = v == q ? PencilParam::at_infinity() : PencilParam::finite(Fe{v});
            PatternHistogram::Key key;
            bool ram = false;
            for (const auto& p : pencils) {
                key.push_back(fiber_pattern(p, u));
                ram = ram || key.back().ramified();
            }
            if (v == q) h.x0_pattern = key;
            ++h.total;
            if (ram) {
                ++h.ramified;
                ++h.ramified_patterns[key];
            } else {
                ++h.unramified[key];
            }
        }
    });
    PatternHistogram out;
    for (auto& h : partial) {
        out.total += h.total;
        out.ramified += h.ramified;
        for (auto& [k, c] : h.unramified) out.unramified[k] += c;
        for (auto& [k, c] : h.ramified_patterns) out.ramified_patterns[k] += c;
        if (!h.x0_pattern.empty()) out.x0_pattern = h.x0_pattern;
    }
    return out;
}

}  // namespace fqs
