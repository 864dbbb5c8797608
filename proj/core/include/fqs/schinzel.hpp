#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqs/curve.hpp"
#include "fqs/parallel.hpp"

namespace fqs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Closed interval [lo, hi] of rationals enclosing a real number.
struct Interval {
    Rational lo;
    Rational hi;

    double approx() const;
    bool positive() const { return lo > 0; }
    bool nonpositive() const { return hi <= 0; }
};

enum class Comparison { AtLeast, Below, Undecided };
std::string_view to_string(Comparison c);
/// count >= x, decided from the enclosure: AtLeast when count >= hi, Below when count < lo.
Comparison compare_count(std::uint64_t count, const Interval& x);

// ---------------------------------------------------------------------------
// Galois parameters

struct GaloisData {
    std::vector<unsigned> degrees;
    std::vector<unsigned> genera;          // genus of each curve
    std::uint64_t N = 0;                   // prod d_i!
    std::vector<unsigned> branch_degrees;  // 2 g_i - 2 + 2 d_i
    std::int64_t genus_paper = 0;          // g with g - 1 + N = N sum (g_i - 1 + d_i)
    std::optional<std::int64_t> genus_sanity;  // only for a single conic: its own closure, genus 0
    /// 1 + (N/2)(d-2)(d+1), the single-curve closed form; present when n = 1.
    std::optional<std::int64_t> genus_single_closed_form;
    /// Every displayed identity holds (N, branch degrees, both genus equations).
    bool consistent = false;
};

GaloisData galois_parameters(const std::vector<unsigned>& degrees, const std::vector<unsigned>& genera);
/// Requires smooth curves of degree >= 2; throws HypothesisViolation otherwise.
GaloisData galois_parameters(const std::vector<CurveReport>& curves);

// ---------------------------------------------------------------------------
// Bounds

/// (1/N)(Q - (N + 2g) Q^{1/2} - N Q^{1/4} - 2(g + N)) with Q = q^s.
Interval geyer_jarden_rhs(std::uint64_t q, unsigned s, std::uint64_t N, std::int64_t g);

struct BoundReport {
    std::uint64_t q = 0;
    unsigned d = 0;
    unsigned s = 1;
    std::uint64_t N = 0;
    std::int64_t g = 0;  // single-curve genus of the Galois closure, 1 + (N/2)(d-2)(d+1)
    Interval gj_rhs;
    BigInt threshold;  // 9 (d(d-1)d! + 2)^2
    bool app_threshold_ok = false;
    Interval app_bound;
    bool positive = false;  // app_bound > 0
};

/// Throws DegreeTooSmall for d < 2 and NotPrime when q is not a prime power.
BoundReport application_bound(std::uint64_t q, unsigned d);

// ---------------------------------------------------------------------------
// Counting

enum class CountMode { FullDegree, Inclusive };
std::string_view to_string(CountMode m);

enum class CountEngine { Auto, Generic, RootSieve };

struct CountOptions {
    CountMode mode = CountMode::Inclusive;
    CountEngine engine = CountEngine::Auto;
    /// Check smoothness and irreducibility too (degree and characteristic are always checked).
    bool check_hypotheses = true;
    const ParallelMap* parallel = nullptr;
};

struct CountReport {
    std::uint64_t q = 0;  // order of the coefficient field of f
    unsigned s = 1;       // counting field is F_{q^s}
    std::uint64_t field_order = 0;
    BigInt total_pairs;
    std::uint64_t count_full_degree = 0;
    std::uint64_t count_inclusive = 0;
    CountMode mode = CountMode::Inclusive;
    CountEngine engine = CountEngine::Generic;

    std::uint64_t count() const noexcept { return mode == CountMode::Inclusive ? count_inclusive : count_full_degree; }
    double density() const;
};

/// Exhaustive count of (a, b) in field^2 with f(t, a t + b) irreducible.
/// `field` must contain the coefficient field of f.
CountReport count_irreducible_pairs(const BiPoly& f, const FieldRef& field, const CountOptions& opts = {});

// ---------------------------------------------------------------------------
// Specialization search

struct Specialization {
    Poly restriction;
    Factorization factorization;
};

struct SpecializationResult {
    unsigned s = 0;
    FieldRef field;
    Fe a, b;
    std::vector<Specialization> witnesses;
    std::uint64_t pairs_scanned = 0;
};

struct SearchOptions {
    CountMode mode = CountMode::FullDegree;
    bool check_hypotheses = true;
    const ParallelMap* parallel = nullptr;
    std::uint64_t seed = kDefaultSeed;
    /// Maximum number of (a, b) pairs examined over all s; 0 means no limit.
    std::uint64_t pair_budget = 0;
};

/// Smallest s <= s_max and lexicographically first (a, b) in F_{q^s}^2 making every
/// f_i(t, a t + b) irreducible. Throws HypothesisViolation or NotFoundWithinBudget.
SpecializationResult find_specialization(const std::vector<BiPoly>& curves, unsigned s_max,
                                         const SearchOptions& opts = {});

/// Hypotheses of the main theorem for a list of curves; empty when all hold,
/// otherwise one message per failure.
std::vector<std::string> hypothesis_failures(const std::vector<BiPoly>& curves, bool require_odd_characteristic);

// ---------------------------------------------------------------------------
// End-to-end check of the single-curve count bound

enum class Verdict { Pass, Fail, ThresholdNotMet, HypothesisFail, Undecided };
std::string_view to_string(Verdict v);

struct ApplicationReport {
    Verdict verdict = Verdict::Undecided;
    std::vector<std::string> reasons;
    unsigned d = 0;
    bool char_ok = false;
    std::optional<bool> smooth;
    std::optional<ProjectivePoint> singular_witness;
    std::optional<IrreducibilityCertificate::Status> irreducible;
    std::optional<BoundReport> bound;
    std::optional<CountReport> count;
    bool vacuous = false;  // bound <= 0
};

ApplicationReport verify_application(const BiPoly& f, const ParallelMap* parallel = nullptr);

}  // namespace fqs
