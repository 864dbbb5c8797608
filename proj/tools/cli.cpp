#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "fqs/conrad.hpp"
#include "fqs/curve.hpp"
#include "fqs/pencil.hpp"
#include "fqs/schinzel.hpp"

namespace fqs::cli {

using json = nlohmann::ordered_json;

ParseFailure::ParseFailure(ErrorCode code, std::size_t offset, const std::string& what)
    : Error(code, what + " at offset " + std::to_string(offset)), offset_(offset) {}

unsigned default_threads() {
    if (const char* env = std::getenv("FQS_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

FieldRef make_field(const RunConfig& cfg) {
    std::uint64_t p = 0;
    unsigned k = 0;
    if (cfg.q) {
        const auto [pp, kk] = prime_power(*cfg.q);
        if (kk == 0) fail(ErrorCode::NotPrime, "q = " + std::to_string(*cfg.q) + " is not a prime power");
        p = pp;
        k = kk;
        if ((cfg.p && *cfg.p != p) || (cfg.k && *cfg.k != k)) {
            fail(ErrorCode::InvalidArgument, "--q disagrees with --p/--k");
        }
    } else if (cfg.p) {
        p = *cfg.p;
        k = cfg.k.value_or(1);
    } else {
        fail(ErrorCode::InvalidArgument, "a field is required: --q or --p [--k]");
    }
    if (!cfg.modulus.empty()) {
        if (cfg.modulus.size() != k + 1) fail(ErrorCode::InvalidArgument, "the modulus degree must equal k");
        return Field::with_modulus(p, cfg.modulus);
    }
    return Field::make(p, k);
}

// ---------------------------------------------------------------------------
// Polynomial grammar

namespace {

constexpr std::uint64_t kMaxExponent = 1'000'000;

class Parser {
public:
    Parser(std::string_view text, const FieldRef& field) : s_(text), field_(field), F_(*field) {}

    BiPoly parse() {
        BiPoly f(field_);
        if (at_end()) error("empty polynomial");
        bool first = true;
        while (!at_end()) {
            bool negative = false;
            const char c = s_[pos_];
            if (c == '+' || c == '-') {
                negative = c == '-';
                ++pos_;
            } else if (!first) {
                error("expected '+' or '-'");
            }
            first = false;
            if (at_end()) error("expected a term");
            auto [i, j, coef] = term();
            f.add_term(i, j, negative ? F_.neg(coef) : coef);
        }
        return f;
    }

private:
    bool at_end() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return pos_ >= s_.size();
    }
    bool digit() { return !at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }
    bool letter() { return !at_end() && std::isalpha(static_cast<unsigned char>(s_[pos_])); }

    [[noreturn]] void error(const std::string& msg) { throw ParseFailure(ErrorCode::ParseError, pos_, msg); }

    Fe integer() {
        unsigned __int128 v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = (v * 10 + static_cast<unsigned>(s_[pos_] - '0')) % F_.p();
            ++pos_;
        }
        return Fe{static_cast<std::uint64_t>(v)};
    }

    std::uint64_t exponent() {
        if (!digit()) error("expected an exponent");
        std::uint64_t v = 0;
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > kMaxExponent) {
                pos_ = start;
                error("exponent too large");
            }
            ++pos_;
        }
        return v;
    }

    std::tuple<unsigned, unsigned, Fe> term() {
        Fe coef = F_.one();
        unsigned i = 0, j = 0;
        bool any = false;
        if (digit()) {
            coef = integer();
            any = true;
        }
        for (;;) {
            if (!at_end() && s_[pos_] == '*') {
                if (!any) error("unexpected '*'");
                ++pos_;
                if (digit()) {
                    coef = F_.mul(coef, integer());
                    continue;
                }
                if (!letter()) error("expected a factor");
            }
            if (!letter()) break;
            const std::size_t at = pos_;
            const char v = s_[pos_++];
            std::uint64_t e = 1;
            if (!at_end() && s_[pos_] == '^') {
                ++pos_;
                e = exponent();
            }
            switch (v) {
                case 't': i += static_cast<unsigned>(e); break;
                case 'x': j += static_cast<unsigned>(e); break;
                case 'y':
                    if (F_.k() == 1) {
                        throw ParseFailure(ErrorCode::UnknownVariable, at, "'y' names the generator of a proper extension only");
                    }
                    coef = F_.mul(coef, F_.pow(F_.generator(), e));
                    break;
                default:
                    throw ParseFailure(ErrorCode::UnknownVariable, at, std::string("unknown variable '") + v + "'");
            }
            if (i > kMaxExponent || j > kMaxExponent) error("degree too large");
            any = true;
        }
        if (!any) error("expected a term");
        return {i, j, coef};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    FieldRef field_;
    const Field& F_;
};

}  // namespace

BiPoly parse_poly(std::string_view text, const FieldRef& field) { return Parser(text, field).parse(); }

Poly parse_univariate(std::string_view text, const FieldRef& field) {
    const BiPoly b = parse_poly(text, field);
    if (b.degree_t() > 0 && b.degree_x() > 0) fail(ErrorCode::InvalidArgument, "expected a polynomial in one variable");
    if (b.degree_x() > 0) return b.at_t(field->zero());
    return b.at_x(field->zero());
}

Fe parse_element(std::string_view text, const FieldRef& field) {
    const BiPoly b = parse_poly(text, field);
    if (b.total_degree() > 0) fail(ErrorCode::InvalidArgument, "expected a field element");
    return b.coeff(0, 0);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json report = json::object();
    std::optional<Table> table;
    int code = 0;
};

json field_json(const Field& F) {
    std::vector<Fe> m;
    for (auto c : F.modulus()) m.push_back(Fe{c});
    const FieldRef prime = Field::make(F.p(), 1);
    return json{{"p", F.p()},
                {"k", F.k()},
                {"q", F.q()},
                {"modulus", F.modulus()},
                {"modulus_poly", Poly(prime, m, 'y').to_string()}};
}

std::string key_string(const PatternHistogram::Key& k) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? " | " : "") + k[i].to_string();
    return s;
}

json interval_json(const Interval& x) {
    return json::array({static_cast<double>(x.lo), static_cast<double>(x.hi)});
}

json factorization_json(const Factorization& fz, const Field& F) {
    json factors = json::array();
    for (const auto& fa : fz.factors) {
        factors.push_back({{"poly", fa.poly.to_string()}, {"degree", fa.poly.degree()}, {"multiplicity", fa.multiplicity}});
    }
    return json{{"unit", F.to_string(fz.unit)}, {"factors", factors}, {"single_irreducible", fz.single_irreducible()}};
}

json certificate_json(const IrreducibilityCertificate& c) {
    json j{{"status", std::string(to_string(c.status))}};
    if (c.status == IrreducibilityCertificate::Status::Irreducible) {
        j["witness_variable"] = std::string(1, c.witness_var);
        j["witness_extension"] = c.witness_extension;
        j["witness_value"] = c.witness_field->to_string(*c.witness_value);
        j["witness_poly"] = c.witness_poly->to_string();
    }
    if (c.factor) j["factor"] = c.factor->to_string();
    return j;
}

json curve_json(const CurveReport& r) {
    json j{{"d", r.d},
           {"char_ok", r.char_ok},
           {"smooth", r.smooth},
           {"singular_witness", r.singular_witness ? json(r.singular_witness->to_string()) : json(nullptr)},
           {"irreducible", certificate_json(r.irreducible)},
           {"genus", r.genus ? json(*r.genus) : json(nullptr)},
           {"dual_degree", r.dual_degree},
           {"bad_line_bound", r.bad_line_bound}};
    return j;
}

FieldRef extension(const FieldRef& base, unsigned s) {
    if (s < 1) fail(ErrorCode::InvalidArgument, "--s must be at least 1");
    if (s == 1) return base;
    return Field::make(base->p(), base->k() * s);
}

CountMode parse_mode(const std::string& m) {
    if (m == "inclusive") return CountMode::Inclusive;
    if (m == "full-degree" || m == "full") return CountMode::FullDegree;
    fail(ErrorCode::InvalidArgument, "--mode must be inclusive or full-degree");
}

std::vector<BiPoly> parse_all(const std::vector<std::string>& texts, const FieldRef& F) {
    std::vector<BiPoly> out;
    for (const auto& t : texts) out.push_back(parse_poly(t, F));
    return out;
}

json poly_inputs(const std::vector<std::string>& texts, const std::vector<BiPoly>& polys) {
    json a = json::array();
    for (std::size_t i = 0; i < texts.size(); ++i) a.push_back({{"text", texts[i]}, {"canonical", polys[i].to_string()}});
    return a;
}

std::string verdict_of(Comparison c) {
    switch (c) {
        case Comparison::AtLeast: return "PASS";
        case Comparison::Below: return "FAIL";
        case Comparison::Undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

void emit(const Output& o, Format fmt, std::ostream& out) {
    switch (fmt) {
        case Format::Json: out << o.report.dump(2) << '\n'; return;
        case Format::Text: {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(o.report, "", kv);
            for (const auto& [k, v] : kv) out << k << ": " << v << '\n';
            return;
        }
        case Format::Csv: {
            if (o.table) {
                for (std::size_t i = 0; i < o.table->header.size(); ++i) out << (i ? "," : "") << csv_cell(o.table->header[i]);
                out << '\n';
                for (const auto& row : o.table->rows) {
                    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
                    out << '\n';
                }
                return;
            }
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(o.report, "", kv);
            out << "key,value\n";
            for (const auto& [k, v] : kv) out << csv_cell(k) << ',' << csv_cell(v) << '\n';
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
    RunConfig cfg;
    std::string format = "json";
    std::string modulus;
    std::vector<std::string> polys;
    std::string M;
    unsigned s = 1;
    std::string mode;
    std::string engine = "auto";
    std::uint64_t budget = 0;
    unsigned smax = 4;
    unsigned D = 4;
    std::optional<std::uint64_t> b;
    std::optional<unsigned> d;
    std::optional<std::uint64_t> N;
    std::optional<std::int64_t> g;
    bool verify = false;
    bool unchecked = false;
};

Output cmd_field(const Options& o, const FieldRef& F, const ParallelMap&) {
    Output out;
    out.report["field"] = field_json(*F);
    out.report["generator"] = F->to_string(F->generator());
    out.report["prime_field"] = F->is_prime_field();
    return out;
}

Output cmd_factor(const Options& o, const FieldRef& F, const ParallelMap&) {
    if (o.polys.size() != 1) fail(ErrorCode::InvalidArgument, "factor takes exactly one --poly");
    const Poly f = parse_univariate(o.polys[0], F);
    Output out;
    out.report["inputs"] = {{"field", field_json(*F)}, {"poly", o.polys[0]}};
    out.report["canonical"] = f.to_string();
    out.report["degree"] = f.degree();
    const Factorization fz = factor(f, o.cfg.seed);
    out.report["factorization"] = factorization_json(fz, *F);
    out.report["irreducible"] = f.degree() >= 1 && is_irreducible(f);
    out.report["multiply_back_ok"] = fz.expand(F) == f;
    return out;
}

Output cmd_curve(const Options& o, const FieldRef& F, const ParallelMap&) {
    if (o.polys.size() != 1) fail(ErrorCode::InvalidArgument, "curve takes exactly one --poly");
    const auto curves = parse_all(o.polys, F);
    Output out;
    out.report["inputs"] = {{"field", field_json(*F)}, {"polys", poly_inputs(o.polys, curves)}};
    out.report["curve"] = curve_json(curve_invariants(curves[0]));
    return out;
}

Output cmd_pencil(const Options& o, const FieldRef& F, const ParallelMap& pm) {
    if (o.polys.empty()) fail(ErrorCode::InvalidArgument, "pencil needs at least one --poly");
    const auto curves = parse_all(o.polys, F);
    const FieldRef K = extension(F, o.s);
    const std::uint64_t budget = o.budget ? o.budget : 100000;
    Output out;
    out.report["inputs"] = {{"field", field_json(*F)},
                            {"polys", poly_inputs(o.polys, curves)},
                            {"s", o.s},
                            {"M", o.M.empty() ? json(nullptr) : json(o.M)},
                            {"trial_budget", budget}};

    AffinePoint M;
    if (!o.M.empty()) {
        const auto comma = o.M.find(',');
        if (comma == std::string::npos) fail(ErrorCode::InvalidArgument, "--M takes t0,x0");
        M = {parse_element(o.M.substr(0, comma), K), parse_element(o.M.substr(comma + 1), K)};
    } else {
        M = find_generic_point(curves, K, budget, o.cfg.seed);
    }
    out.report["M"] = {K->to_string(M.t), K->to_string(M.x)};

    std::vector<Pencil> pencils;
    json pj = json::array();
    std::vector<unsigned> degrees;
    for (const auto& f : curves) {
        pencils.push_back(pencil_discriminant(f, M, K));
        const Pencil& p = pencils.back();
        degrees.push_back(p.d);
        pj.push_back({{"curve", f.to_string()},
                      {"form_degree", p.form_degree},
                      {"delta", p.delta.to_string()},
                      {"infinity_multiplicity", p.infinity_multiplicity},
                      {"generic", p.generic},
                      {"branch_degree", p.branch_degree()}});
    }
    bool disjoint = true;
    for (std::size_t i = 0; i < pencils.size(); ++i) {
        for (std::size_t j = i + 1; j < pencils.size(); ++j) disjoint = disjoint && branch_loci_disjoint(pencils[i], pencils[j]);
    }
    out.report["pencils"] = pj;
    out.report["branch_loci_disjoint"] = disjoint;

    const PatternHistogram h = pattern_histogram(pencils, pm);
    json unram = json::array(), ram = json::array();
    Table table{{"pattern", "count", "ramified"}, {}};
    for (const auto& [k, c] : h.unramified) {
        unram.push_back({{"pattern", key_string(k)}, {"count", c}});
        table.rows.push_back({key_string(k), std::to_string(c), "false"});
    }
    for (const auto& [k, c] : h.ramified_patterns) {
        ram.push_back({{"pattern", key_string(k)}, {"count", c}});
        table.rows.push_back({key_string(k), std::to_string(c), "true"});
    }
    out.report["histogram"] = {{"unramified", unram},
                               {"ramified_patterns", ram},
                               {"ramified", h.ramified},
                               {"total", h.total},
                               {"x0_pattern", key_string(h.x0_pattern)}};
    out.table = std::move(table);

    // Chebotarev lower bound per cycle type; the vertical line through M is left out.
    std::optional<GaloisData> gd;
    try {
        std::vector<CurveReport> reports;
        for (const auto& f : curves) reports.push_back(curve_invariants(f));
        gd = galois_parameters(reports);
    } catch (const Error& e) {
        out.report["galois"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
    if (gd) {
        out.report["galois"] = {{"N", gd->N},
                                {"genus_paper", gd->genus_paper},
                                {"genus_sanity", gd->genus_sanity ? json(*gd->genus_sanity) : json(nullptr)},
                                {"branch_degrees", gd->branch_degrees},
                                {"consistent", gd->consistent}};
        const Interval rhs_paper = geyer_jarden_rhs(F->q(), o.s, gd->N, gd->genus_paper);
        std::optional<Interval> rhs_sanity;
        if (gd->genus_sanity) rhs_sanity = geyer_jarden_rhs(F->q(), o.s, gd->N, *gd->genus_sanity);
        auto check = [](std::uint64_t count, const Interval& rhs) -> std::string {
            if (rhs.nonpositive()) return "NOT_APPLICABLE";
            return verdict_of(compare_count(count, rhs));
        };
        json cj = json::array();
        for (const auto& k : cycle_type_classes(degrees)) {
            const std::uint64_t c = h.count(k);
            const std::uint64_t c0 = c - (k == h.x0_pattern ? 1 : 0);
            json row{{"pattern", key_string(k)},
                     {"count", c},
                     {"count_excluding_x0", c0},
                     {"gj_rhs", rhs_paper.approx()},
                     {"holds_paper", check(c0, rhs_paper)},
                     {"gj_rhs_sanity", rhs_sanity ? json(rhs_sanity->approx()) : json(nullptr)},
                     {"holds_sanity", rhs_sanity ? json(check(c0, *rhs_sanity)) : json(nullptr)}};
            if (row["holds_paper"] == "FAIL" || row["holds_sanity"] == "FAIL") out.code = 1;
            cj.push_back(std::move(row));
        }
        out.report["chebotarev"] = cj;
    }
    return out;
}

Output cmd_count(const Options& o, const FieldRef& F, const ParallelMap& pm) {
    if (o.polys.size() != 1) fail(ErrorCode::InvalidArgument, "count takes exactly one --poly");
    const auto curves = parse_all(o.polys, F);
    const BiPoly& f = curves[0];
    Output out;
    const std::string mode = o.mode.empty() ? "inclusive" : o.mode;
    out.report["inputs"] = {{"field", field_json(*F)},
                            {"polys", poly_inputs(o.polys, curves)},
                            {"s", o.s},
                            {"mode", mode},
                            {"engine", o.engine}};
    CountOptions co;
    co.mode = parse_mode(mode);
    co.parallel = &pm;
    co.check_hypotheses = !o.unchecked;
    if (o.engine == "generic") {
        co.engine = CountEngine::Generic;
    } else if (o.engine == "sieve") {
        co.engine = CountEngine::RootSieve;
    } else if (o.engine != "auto") {
        fail(ErrorCode::InvalidArgument, "--engine must be auto, generic or sieve");
    }
    const FieldRef K = extension(F, o.s);
    const CountReport r = count_irreducible_pairs(f, K, co);
    out.report["field_order"] = r.field_order;
    out.report["total_pairs"] = r.total_pairs.convert_to<std::uint64_t>();
    out.report["count_full_degree"] = r.count_full_degree;
    out.report["count_inclusive"] = r.count_inclusive;
    out.report["count"] = r.count();
    out.report["density"] = r.density();

    if (o.s == 1) {
        const BoundReport b = application_bound(F->q(), static_cast<unsigned>(f.total_degree()));
        const Comparison c = compare_count(r.count_inclusive, b.app_bound);
        out.report["app_bound"] = b.app_bound.approx();
        out.report["app_threshold_ok"] = b.app_threshold_ok;
        out.report["count_inclusive_vs_app_bound"] = verdict_of(c);
        if (o.verify) {
            const ApplicationReport ar = verify_application(f, &pm);
            out.report["verdict"] = std::string(to_string(ar.verdict));
            out.report["reasons"] = ar.reasons;
            out.report["vacuous"] = ar.vacuous;
            if (ar.verdict == Verdict::Fail) out.code = 1;
        } else if (b.app_threshold_ok && c == Comparison::Below) {
            out.code = 1;
        }
    }
    return out;
}

Output cmd_bound(const Options& o, const FieldRef& F, const ParallelMap&) {
    if (!o.d && !(o.N && o.g)) fail(ErrorCode::InvalidArgument, "bound needs --d, or --N and --g");
    Output out;
    out.report["inputs"] = {{"q", F->q()},
                            {"d", o.d ? json(*o.d) : json(nullptr)},
                            {"s", o.s},
                            {"N", o.N ? json(*o.N) : json(nullptr)},
                            {"g", o.g ? json(*o.g) : json(nullptr)}};
    std::uint64_t N = o.N.value_or(0);
    std::int64_t g = o.g.value_or(0);
    std::optional<std::int64_t> g_sanity;
    if (o.d) {
        const unsigned d = *o.d;
        const BoundReport b = application_bound(F->q(), d);
        const GaloisData gd = galois_parameters({d}, {(d - 1) * (d - 2) / 2});
        if (!o.N) N = gd.N;
        if (!o.g) {
            g = gd.genus_paper;
            g_sanity = gd.genus_sanity;
        }
        out.report["N"] = N;
        out.report["genus_paper"] = gd.genus_paper;
        out.report["genus_sanity"] = gd.genus_sanity ? json(*gd.genus_sanity) : json(nullptr);
        out.report["threshold"] = b.threshold.convert_to<std::string>();
        out.report["app_threshold_ok"] = b.app_threshold_ok;
        out.report["app_bound"] = b.app_bound.approx();
        out.report["app_bound_enclosure"] = interval_json(b.app_bound);
        out.report["positive"] = b.positive;
    }
    const Interval gj = geyer_jarden_rhs(F->q(), o.s, N, g);
    out.report["gj_rhs"] = gj.approx();
    out.report["gj_rhs_enclosure"] = interval_json(gj);
    out.report["gj_rhs_sanity"] = g_sanity ? json(geyer_jarden_rhs(F->q(), o.s, N, *g_sanity).approx()) : json(nullptr);
    return out;
}

Output cmd_search(const Options& o, const FieldRef& F, const ParallelMap& pm) {
    if (o.polys.empty()) fail(ErrorCode::InvalidArgument, "search needs at least one --poly");
    const auto curves = parse_all(o.polys, F);
    const std::string mode = o.mode.empty() ? "full-degree" : o.mode;
    Output out;
    out.report["inputs"] = {{"field", field_json(*F)},
                            {"polys", poly_inputs(o.polys, curves)},
                            {"smax", o.smax},
                            {"mode", mode},
                            {"pair_budget", o.budget}};
    SearchOptions so;
    so.mode = parse_mode(mode);
    so.parallel = &pm;
    so.seed = o.cfg.seed;
    so.pair_budget = o.budget;
    so.check_hypotheses = !o.unchecked;
    const SpecializationResult r = find_specialization(curves, o.smax, so);
    const Field& K = *r.field;
    json w = json::array();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        w.push_back({{"curve", curves[i].to_string()},
                     {"restriction", r.witnesses[i].restriction.to_string()},
                     {"factorization", factorization_json(r.witnesses[i].factorization, K)}});
    }
    out.report["witness"] = {{"s", r.s},
                             {"field", field_json(K)},
                             {"a", K.to_string(r.a)},
                             {"b", K.to_string(r.b)},
                             {"specializations", w}};
    out.report["pairs_scanned"] = r.pairs_scanned;
    return out;
}

Output cmd_conrad(const Options& o, const FieldRef& F, const ParallelMap& pm) {
    Output out;
    ConradReport r;
    if (!o.polys.empty()) {
        if (o.polys.size() != 1) fail(ErrorCode::InvalidArgument, "conrad takes at most one --poly");
        const auto curves = parse_all(o.polys, F);
        out.report["inputs"] = {{"field", field_json(*F)}, {"polys", poly_inputs(o.polys, curves)}, {"D", o.D}};
        r = verify_conrad(curves[0], o.D, pm);
    } else {
        const ConradInstance inst = conrad_polynomial(F->q(), o.b);
        out.report["inputs"] = {{"field", field_json(*F)}, {"b", o.b ? json(*o.b) : json(nullptr)}, {"D", o.D}};
        out.report["instance"] = {{"q", inst.q}, {"p", inst.p}, {"b", inst.b}, {"f", inst.f.to_string()}};
        r = verify_conrad(inst.f.over(F), o.D, pm);
    }
    json ce = json::array();
    for (const auto& c : r.counterexamples) {
        ce.push_back({{"g", c.g.to_string()}, {"value", c.value.to_string()}, {"class", std::string(to_string(c.cls))}});
    }
    out.report["substitutions"] = r.substitutions;
    out.report["reducible"] = r.reducible;
    out.report["irreducible"] = r.irreducible;
    out.report["zero"] = r.zero;
    out.report["unit"] = r.unit;
    out.report["holds"] = r.holds;
    out.report["counterexamples"] = ce;
    if (!r.holds) out.code = 1;
    return out;
}

using Handler = std::function<Output(const Options&, const FieldRef&, const ParallelMap&)>;

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--q", o.cfg.q, "field order (a prime power)");
    sub->add_option("--p", o.cfg.p, "characteristic");
    sub->add_option("--k", o.cfg.k, "extension degree over F_p");
    sub->add_option("--modulus", o.modulus, "defining polynomial coefficients, low degree first, comma separated");
    sub->add_option("--seed", o.cfg.seed, "master seed");
    sub->add_option("--threads", o.cfg.threads, "worker threads (default from FQS_THREADS)")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
}

std::vector<std::uint64_t> parse_modulus(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "bad modulus coefficient '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    o.cfg.threads = default_threads();
    CLI::App app{"Finite-field specialization experiments", "fqs"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, Handler>> subs;

    auto* field = app.add_subcommand("field", "describe a finite field");
    subs.emplace_back(field, cmd_field);
    auto* fac = app.add_subcommand("factor", "factor a univariate polynomial");
    subs.emplace_back(fac, cmd_factor);
    auto* curve = app.add_subcommand("curve", "smoothness, irreducibility and invariants of a plane curve");
    subs.emplace_back(curve, cmd_curve);
    auto* pencil = app.add_subcommand("pencil", "fibre pattern histogram of a projection from a point");
    subs.emplace_back(pencil, cmd_pencil);
    auto* count = app.add_subcommand("count", "count (a, b) with f(t, a t + b) irreducible");
    subs.emplace_back(count, cmd_count);
    auto* bound = app.add_subcommand("bound", "evaluate the count and Chebotarev lower bounds");
    subs.emplace_back(bound, cmd_bound);
    auto* search = app.add_subcommand("search", "find a simultaneous irreducible specialization");
    subs.emplace_back(search, cmd_search);
    auto* conrad = app.add_subcommand("conrad", "verify that x^{4q} + t^b has only reducible values");
    subs.emplace_back(conrad, cmd_conrad);

    for (auto& [sub, h] : subs) add_common(sub, o);
    for (auto* sub : {fac, curve, pencil, count, search, conrad}) sub->add_option("--poly", o.polys, "polynomial in t and x");
    for (auto* sub : {fac, curve, count, search}) sub->get_option("--poly")->required();
    pencil->get_option("--poly")->required();
    pencil->add_option("--M", o.M, "base point t0,x0 (default: first generic point)");
    for (auto* sub : {pencil, count, bound}) sub->add_option("--s", o.s, "work over F_{q^s}");
    pencil->add_option("--budget", o.budget, "base point trials");
    count->add_option("--mode", o.mode, "inclusive (default) or full-degree");
    count->add_option("--engine", o.engine, "auto, generic or sieve");
    count->add_flag("--verify", o.verify, "run the full hypothesis and bound check");
    count->add_flag("--unchecked", o.unchecked, "skip the smoothness and irreducibility checks");
    bound->add_option("--d", o.d, "curve degree");
    bound->add_option("--N", o.N, "Galois group order");
    bound->add_option("--g", o.g, "genus of the Galois closure");
    search->add_option("--smax", o.smax, "largest extension degree s");
    search->add_option("--mode", o.mode, "full-degree (default) or inclusive");
    search->add_option("--budget", o.budget, "pair budget over all s (0: unlimited)");
    search->add_flag("--unchecked", o.unchecked, "skip the smoothness and irreducibility checks");
    conrad->add_option("--b", o.b, "exponent b (default 2q-1)");
    conrad->add_option("--D", o.D, "degree cap for substituted polynomials");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    std::string name;
    Handler handler;
    for (auto& [sub, h] : subs) {
        if (sub->parsed()) {
            name = sub->get_name();
            handler = h;
        }
    }
    o.cfg.format = o.format == "csv" ? Format::Csv : o.format == "text" ? Format::Text : Format::Json;

    const auto start = std::chrono::steady_clock::now();
    Output result;
    try {
        if (!o.modulus.empty()) o.cfg.modulus = parse_modulus(o.modulus);
        const FieldRef F = make_field(o.cfg);
        const ThreadMap pm(o.cfg.threads);
        result = handler(o, F, pm);
    } catch (const Error& e) {
        json j{{"command", name}, {"seed", o.cfg.seed}};
        j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
        if (const auto* pf = dynamic_cast<const ParseFailure*>(&e)) j["error"]["offset"] = pf->offset();
        emit(Output{j, std::nullopt, 2}, o.cfg.format == Format::Csv ? Format::Text : o.cfg.format, out);
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report{{"command", name}, {"seed", o.cfg.seed}};
    for (auto& [k, v] : result.report.items()) report[k] = v;
    report["exit_code"] = result.code;
    report["timing"] = {{"nondeterministic", true}, {"wall_seconds", seconds}, {"threads", o.cfg.threads}};
    result.report = std::move(report);
    emit(result, o.cfg.format, out);
    return result.code;
}

}  // namespace fqs::cli
