#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types shared by every module: points of the unit bidisc,
// polydisc radii, bivariate multi-indices, log-domain magnitudes and the
// report envelope produced by the criterion checkers.

namespace bindex {

using Complex = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluatorFailure : Error { using Error::Error; };
struct DegenerateRadius : Error { using Error::Error; };
struct SkeletonOutsideDomain : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct NoNonzeroCoefficient : Error { using Error::Error; };
struct IterationOverrun : Error { using Error::Error; };
struct SpecParseError : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// MultiIndex
// ---------------------------------------------------------------------------

struct MultiIndex {
    int k1 = 0;
    int k2 = 0;

    int order() const { return k1 + k2; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    // total degree first, then k1 ascending; the canonical scan order
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.k1 < b.k1;
    }
};

// log(k1! * k2!)
inline double log_factorial(const MultiIndex& k) {
    return std::lgamma(double(k.k1) + 1.0) + std::lgamma(double(k.k2) + 1.0);
}

// Position of k in the canonical enumeration: band d starts at d(d+1)/2,
// entries within a band are (0,d), (1,d-1), ..., (d,0).
inline std::size_t canonical_position(const MultiIndex& k) {
    const std::size_t d = std::size_t(k.order());
    return d * (d + 1) / 2 + std::size_t(k.k1);
}

// All (k1,k2) with k1+k2 <= max_order in canonical order.
std::vector<MultiIndex> degree_enumerate(int max_order);

inline std::size_t table_size(int max_order) {
    return std::size_t(max_order + 1) * std::size_t(max_order + 2) / 2;
}

// ---------------------------------------------------------------------------
// BidiscPoint / Radii
// ---------------------------------------------------------------------------

struct BidiscPoint {
    Complex z1{0.0, 0.0};
    Complex z2{0.0, 0.0};

    bool inside_bidisc() const {
        return std::abs(z1) < 1.0 && std::abs(z2) < 1.0;
    }
    Complex coord(int j) const { return j == 0 ? z1 : z2; }
};

struct Radii {
    double r1 = 0.0;
    double r2 = 0.0;

    bool positive() const { return r1 > 0.0 && r2 > 0.0; }
    double coord(int j) const { return j == 0 ? r1 : r2; }

    Radii scaled(double s) const { return {r1 * s, r2 * s}; }
};

inline void require_positive(const Radii& r, const char* where) {
    if (!r.positive())
        throw DegenerateRadius(std::string(where) + ": radii must be positive");
}

// ---------------------------------------------------------------------------
// LogMagnitude
// ---------------------------------------------------------------------------

// A magnitude kept as its natural log (-inf encodes zero) plus an optional
// phase, so products like r^k with r = d/((d+1)c^m) stay representable far
// past the underflow range of linear doubles.
struct LogMagnitude {
    double log_abs = kNegInf;
    std::optional<double> phase;  // radians

    static LogMagnitude from_linear(double x) {
        if (x == 0.0) return {kNegInf, 0.0};
        return {std::log(std::abs(x)), x > 0 ? 0.0 : std::acos(-1.0)};
    }
    static LogMagnitude from_complex(const Complex& w) {
        double a = std::abs(w);
        if (a == 0.0) return {kNegInf, 0.0};
        return {std::log(a), std::arg(w)};
    }

    bool is_zero() const { return log_abs == kNegInf; }
    double to_linear() const { return is_zero() ? 0.0 : std::exp(log_abs); }
    Complex to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        double p = phase.value_or(0.0);
        return std::polar(std::exp(log_abs), p);
    }

    friend bool operator<(const LogMagnitude& a, const LogMagnitude& b) {
        return a.log_abs < b.log_abs;
    }
};

// log(sum of exp(xs)) without leaving log domain; xs may contain -inf.
double log_sum_exp(const std::vector<double>& xs);

// ---------------------------------------------------------------------------
// sampling grids
// ---------------------------------------------------------------------------

// Polar product sampling of one coordinate disc: radii r_max*k/n_r
// (k = 1..n_r) at angles anchor + 2*pi*m/n_theta, plus the center once.
// Doubling n_r and n_theta refines the grid to a superset, which is what
// makes the inf/sup estimates monotone under refinement.
struct DiscGrid {
    int n_r = 4;
    int n_theta = 8;
    double r_max = 0.95;

    std::size_t point_count() const {
        return std::size_t(n_r) * std::size_t(n_theta) + 1;
    }
    std::vector<Complex> points(Complex center = {0.0, 0.0},
                                double radius_scale = 1.0,
                                double anchor = 0.0) const;
    DiscGrid doubled() const { return {n_r * 2, n_theta * 2, r_max}; }
};

// Product grid over the bidisc (or over a polydisc around a center).
struct BidiscGrid {
    DiscGrid d1{};
    DiscGrid d2{};

    std::size_t point_count() const { return d1.point_count() * d2.point_count(); }
    std::vector<BidiscPoint> points() const;
    BidiscGrid doubled() const { return {d1.doubled(), d2.doubled()}; }
};

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

enum class TheoremId {
    LocalDominance,
    KthMaxModulus,
    PurePartials,
    ModulusRatio,
    Hayman,
    TailDominance,
    MainPolynomial,
};

enum class Verdict { Holds, Fails, Inconclusive };

const char* to_string(TheoremId id);
const char* to_string(Verdict v);

struct CriterionReport {
    TheoremId theorem_id{};
    Verdict verdict = Verdict::Inconclusive;
    // numeric witnesses (k0_1, p0, c, m0, ...); string-keyed and ordered so
    // serialization is deterministic
    std::map<std::string, double> witness;
    std::map<std::string, double> sampling;
    std::map<std::string, std::string> notes;
    std::optional<BidiscPoint> worst_point;
};

// Relative slack applied to every verdict inequality: Fails requires a
// violation beyond lhs <= (1+kVerdictSlack)*rhs at some sample.
inline constexpr double kVerdictSlack = 1e-9;

}  // namespace bindex
