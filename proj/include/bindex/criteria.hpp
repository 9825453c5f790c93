#pragma once

#include "bindex/index.hpp"

// The theorem checkers: local derivative dominance, k-th max modulus,
// pure-partial sufficiency, two-radius modulus ratio with its index bound,
// the Hayman-type band inequality, series tail dominance, and the
// main-polynomial search / verification pair.

namespace bindex {

// --- Theorem checkers, each returning a CriterionReport with witnesses ------

// Dominance of weighted derivatives over the closed polydisc
// D^2[z0, R/L(z0)] by a single normalized derivative at the center.
// Derivatives at off-center samples come from local Cauchy extraction
// (one code path for every family).
CriterionReport check_local_dominance(const AnalyticFunction& F, const WeightField& L,
                                      const BidiscPoint& z0, const Radii& r, int n0,
                                      const DiscGrid& polydisc_samples, double tol = 1e-9);

// max |F^(k0)| over the polydisc skeleton against |F^(k0)(z0)|.
CriterionReport check_kth_max_modulus(const AnalyticFunction& F, const BidiscPoint& z0,
                                      const Radii& rho, const MultiIndex& k0,
                                      int skeleton_samples);

// both pure partials F^(k10,0) and F^(0,k20); p is the larger ratio
CriterionReport check_pure_partials(const AnalyticFunction& F, const BidiscPoint& z0,
                                    const Radii& rho, int k10, int k20,
                                    int skeleton_samples);

// p1 = max over the grid of M(R''/L(z0)) / M(R'/L(z0))
CriterionReport check_modulus_ratio(const AnalyticFunction& F, const WeightField& L,
                                    const std::vector<BidiscPoint>& z0_grid,
                                    const Radii& r_prime, const Radii& r_second,
                                    int skeleton_samples);

// (-sum_j ln(1-r'_j) + ln p1) / ln min{r''_1, r''_2}; callers floor it
double index_bound_from_ratio(const Radii& r_prime, const Radii& r_second, double p1);

// band p+1 of |F^(J)|/l^J against bands <= p (no factorials); when
// grid_index is supplied the report records whether c <= ((N+1)!)^2.
// cap_tol gates the extraction tail indicator of non-exact tables.
CriterionReport check_hayman(const AnalyticFunction& F, const WeightField& L,
                             const std::vector<BidiscPoint>& z0_grid, int p,
                             std::optional<int> grid_index = std::nullopt,
                             double cap_tol = 1e-6);

// head sum over |K| <= N of a*_K against c times the tail N < |K| <= cap
CriterionReport check_tail_dominance(const AnalyticFunction& F, const WeightField& L,
                                     const std::vector<BidiscPoint>& z0_grid, int N,
                                     double c, int cap);

// --- Main polynomial ---------------------------------------------------------

struct MainPolyStep {
    int m = 0;
    double log_r = kNegInf;
    double log_mu = kNegInf;
    int s = 0;
    double log_mu_star = kNegInf;      // -inf when the candidate set is empty
    std::optional<int> s_star;
};

struct MainPolySearchResult {
    LogMagnitude c_log;     // c = 2((N+1)^3 + 6(N+3)!)
    double d = 0.0;
    LogMagnitude eta_log;   // eta(d) = d/((d+1) c^(2(N+1)))
    int m0 = 0;
    LogMagnitude r_log;     // r_{m0} = d/((d+1) c^m0)
    int k0 = 0;             // s_{m0}
    std::vector<MainPolyStep> trace;
    bool within_guarantee = false;  // m0 <= 2N+1
    std::string scan_note;          // the m=0 candidate-range substitution
};

// Searches r_m = d/((d+1)c^m) for the first m with mu*_m <= mu_m / c.
// log_a is the diagonal sequence from diagonal_max (log-domain).
MainPolySearchResult find_main_polynomial(const std::vector<double>& log_a, int N,
                                          double d, double beta = 2.0);

// Is the degree-k0 homogeneous band dominant on T^2(z0, R/L(z0))?  Compares
// max |sum of all other bands| over the skeleton with half the band's
// maximal term at rho = R/L(z0).
CriterionReport verify_main_polynomial(const CoeffTable& coeffs, const WeightField& L,
                                       const BidiscPoint& z0, const Radii& r, int k0,
                                       int skeleton_samples);

}  // namespace bindex
