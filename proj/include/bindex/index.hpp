#pragma once

#include "bindex/coefficients.hpp"

// The local joint index at a point, index profiles over exhaustion grids,
// the maximal term / central index of a power expansion, skeleton maximum
// modulus and the dominance-step constant q(R).

namespace bindex {

enum class IndexStatus { Ok, Unbounded, Inconclusive };

struct LocalIndexResult {
    IndexStatus status = IndexStatus::Inconclusive;
    // least m such that the full scan max is attained within degrees <= m
    // (with relative tol slack); meaningful when status == Ok
    std::optional<int> n0;
    MultiIndex argmax_index;       // first canonical index attaining the max
    LogMagnitude dominating_value; // max a*_K over the scan
    int cap = 0;
    double slack = 0.0;            // max_all / max_{deg<=n0} - 1, in [0, tol]
    double tail_indicator = 0.0;
    std::string reason;            // set when status != Ok
};

// Scan of the normalized-derivative definition at one point, truncated at
// total degree `cap` and certified against the beyond-cap tail via Cauchy
// geometric bounds (see local_index in index.cpp).
LocalIndexResult local_index(const AnalyticFunction& F, const WeightField& L,
                             const BidiscPoint& z0, int cap, double tol = 1e-9);

// same scan on a prebuilt normalized grid; no tail certification
LocalIndexResult local_index_scan(const NormDerivGrid& grid, int cap, double tol,
                                  double tail_indicator, bool table_exact);

struct IndexProfilePoint {
    BidiscPoint z;
    LocalIndexResult res;
};

struct IndexProfileLevel {
    double max_radius = 0.0;
    std::vector<IndexProfilePoint> points;
    int sup_n0 = 0;                 // sup over Ok points of this level
    int running_sup = 0;            // sup over this and all previous levels
    std::size_t inconclusive = 0;
    std::size_t unbounded = 0;
};

struct IndexProfile {
    std::vector<IndexProfileLevel> levels;
    int sup_n0 = 0;  // lower bound for the global index
    std::size_t total_points = 0;
    std::size_t inconclusive = 0;
    std::size_t unbounded = 0;
};

inline std::vector<double> default_exhaustion_levels() { return {0.5, 0.7, 0.9, 0.95}; }
inline DiscGrid default_profile_grid() { return {8, 8, 1.0}; }  // r_max set per level

IndexProfile index_profile(const AnalyticFunction& F, const WeightField& L,
                           const std::vector<double>& levels, int cap,
                           DiscGrid per_coordinate = default_profile_grid(),
                           double tol = 1e-9);

// --- maximal term -------------------------------------------------------------

struct MaximalTermResult {
    LogMagnitude mu;                 // max |b_K| R^K
    std::vector<MultiIndex> nu_set;  // all attaining indices (within tol)
    int nu_norm = 0;                 // max total degree over nu_set
};

MaximalTermResult maximal_term(const CoeffTable& coeffs, const Radii& r, double tol = 1e-9);

// --- maximum modulus ----------------------------------------------------------

struct MaxModulusResult {
    double m = 0.0;      // linear value (may overflow to inf; log_m is exact)
    double log_m = kNegInf;
    BidiscPoint argmax;
};

MaxModulusResult max_modulus(const AnalyticFunction& F, const BidiscPoint& z0,
                             const Radii& r, int n_samples);

// --- q(R) ----------------------------------------------------------------------

// floor(2(N+1)(r1+r2) * prod_j lambda1_j^-N lambda2_j^(N+1)) + 1, log-domain
long long q_constant(int N, const Radii& r, const LambdaEstimate& lambdas);

}  // namespace bindex
