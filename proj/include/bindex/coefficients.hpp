#pragma once

#include "bindex/domain.hpp"
#include "bindex/function.hpp"
#include "bindex/weights.hpp"

// Truncated Taylor tables b_{j1,j2} = F^(j1,j2)(z0)/(j1! j2!) at arbitrary
// expansion points, built from exact derivative rules or by discrete Cauchy
// integrals over a skeleton, plus the weight-normalized derivative grids
// a*_{j1,j2} = |b_{j1,j2}| / (l1^j1 l2^j2) every criterion feeds on.

namespace bindex {

struct CoeffTable {
    BidiscPoint center;
    int order = 0;
    std::vector<LogMagnitude> entries;  // canonical order, all |K| <= order
    std::optional<Radii> extraction_radii;
    // max |b_K| rho^K on the top band / max over the whole table, with
    // rho = extraction radii (or the default extraction radii for exact
    // tables); the dimensionless tail/alias proxy
    double tail_indicator = 0.0;
    bool exact = false;           // closed-form or polynomial route
    bool alias_warning = false;   // Cauchy route and tail_indicator > threshold

    const LogMagnitude& at(const MultiIndex& k) const {
        return entries[canonical_position(k)];
    }
    Complex coeff(const MultiIndex& k) const { return at(k).to_complex(); }
};

struct NormDerivGrid {
    BidiscPoint center;
    int order = 0;
    std::vector<double> log_values;  // log a*_K, canonical order
    std::array<double, 2> weight_at_center{1.0, 1.0};

    double at(const MultiIndex& k) const { return log_values[canonical_position(k)]; }
};

// Default extraction radius: stay well inside the bidisc so skeleton
// evaluation is stable for boundary-singular functions.
inline constexpr double kDefaultExtractionRadius = 0.25;

inline Radii default_extraction_radii(const BidiscPoint& z0) {
    return {std::min(0.5 * (1.0 - std::abs(z0.z1)), kDefaultExtractionRadius),
            std::min(0.5 * (1.0 - std::abs(z0.z2)), kDefaultExtractionRadius)};
}

inline constexpr double kAliasThreshold = 1e-8;

// Exact table from the derivative rules (polynomials re-center exactly).
CoeffTable taylor_closed_form(const AnalyticFunction& F, const BidiscPoint& z0, int order);

// Discrete bivariate Cauchy transform over the skeleton T^2(z0, rho);
// n_samples per axis must be a power of two with n >= 4*order.
CoeffTable taylor_cauchy(const AnalyticFunction& F, const BidiscPoint& z0,
                         const Radii& rho, int n_samples, int order,
                         double alias_threshold = kAliasThreshold);

// Preferred route: exact table when the family has derivative rules,
// otherwise Cauchy extraction at the default radii.
CoeffTable taylor_any(const AnalyticFunction& F, const BidiscPoint& z0, int order);

NormDerivGrid normalize(const CoeffTable& coeffs, const WeightField& L);

// a_k = max{a*_{j1,j2} : j1+j2 = k}, log-domain, length order+1
std::vector<double> diagonal_max(const NormDerivGrid& grid);

// Horner evaluation of the truncated series at z.
Complex eval_series(const CoeffTable& coeffs, const BidiscPoint& z);

}  // namespace bindex
