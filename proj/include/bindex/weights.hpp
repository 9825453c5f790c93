#pragma once

#include <array>
#include <functional>

#include "bindex/domain.hpp"

// Weight fields L = (l1, l2) on the bidisc, admissibility validation,
// grid estimates of the polydisc ratio bounds lambda_{1,j}/lambda_{2,j},
// two-sided comparability and the scaled field (beta l_1/r_1, beta l_2/r_2).

namespace bindex {

enum class WeightFamily { BoundaryPower, Constant, Custom };

class WeightField {
public:
    using Evaluator = std::function<double(const BidiscPoint&)>;

    // l_j = scale_j * (1-|z1|)^(-e[j][0]) * (1-|z2|)^(-e[j][1])
    static WeightField boundary_power(double beta,
                                      std::array<std::array<double, 2>, 2> exponents,
                                      double sigma);
    static WeightField constant(double beta, double c1, double c2);
    static WeightField custom(double beta, Evaluator l1, Evaluator l2);

    // the worked example's weight; sigma = 1 is the bare field, the shipped
    // admissible variant uses sigma = 2*beta
    static WeightField example_weight(double beta, double sigma);

    WeightFamily family() const { return family_; }
    double beta() const { return beta_; }

    double eval(int j, const BidiscPoint& z) const;  // l_{j+1}(z) > 0
    std::array<double, 2> eval_both(const BidiscPoint& z) const {
        return {eval(0, z), eval(1, z)};
    }

    // componentwise positive multiple (c1*l1, c2*l2)
    WeightField scaled(double c1, double c2) const;

    // l_j(z) = factor(j,0,|z1|) * factor(j,1,|z2|) for the non-custom families
    bool separable() const { return family_ != WeightFamily::Custom; }
    double factor(int j, int axis, double modulus) const;

    // serialization hooks used by io
    const std::array<std::array<double, 2>, 2>& exponents() const { return exponents_; }
    std::array<double, 2> scales() const { return scales_; }

private:
    WeightFamily family_ = WeightFamily::Constant;
    double beta_ = 2.0;
    std::array<std::array<double, 2>, 2> exponents_{};  // BoundaryPower
    std::array<double, 2> scales_{1.0, 1.0};            // per-component scale
    Evaluator l_[2];                                    // Custom
};

// --- validate_weight ---------------------------------------------------------

struct WeightValidation {
    double admissible_fraction = 0.0;  // fraction of grid points with both margins > 0
    double worst_margin = 0.0;         // min over grid and j of l_j(z)(1-|z_j|) - beta
    BidiscPoint worst_point;
    std::size_t grid_points = 0;
};

WeightValidation validate_weight(const WeightField& L, const BidiscGrid& grid);

// --- lambda_bounds -----------------------------------------------------------

struct LambdaEstimate {
    Radii r;
    std::array<double, 2> lambda1{1.0, 1.0};  // per-coordinate inf ratios
    std::array<double, 2> lambda2{1.0, 1.0};  // per-coordinate sup ratios
    BidiscGrid outer_grid;
    DiscGrid inner_grid;          // shape per coordinate, radius-relative
    std::size_t clipped = 0;      // inner samples discarded outside the bidisc
    bool q2_consistent = false;   // 0 < lambda1 <= lambda2 < inf and no clipping
    // interval half-width proxy: how much the last refinement doubling moved
    // the estimates (grid values are not certified bounds)
    std::array<double, 2> delta1{0.0, 0.0};
    std::array<double, 2> delta2{0.0, 0.0};
    bool has_delta = false;
};

LambdaEstimate lambda_bounds(const WeightField& L, const Radii& r,
                             const BidiscGrid& outer_grid, const DiscGrid& inner_grid);

// estimate at the doubled grids together with the movement the doubling
// produced, reported as the refinement delta
LambdaEstimate lambda_bounds_interval(const WeightField& L, const Radii& r,
                                      const BidiscGrid& outer_grid,
                                      const DiscGrid& inner_grid);

inline BidiscGrid default_lambda_outer() { return {{3, 6, 0.95}, {3, 6, 0.95}}; }
inline DiscGrid default_lambda_inner() { return {8, 16, 1.0}; }

// --- comparability -----------------------------------------------------------

enum class Comparability { Comparable, NotComparable, Inconclusive };

struct ComparabilityWitness {
    std::array<double, 2> theta_low{0.0, 0.0};
    std::array<double, 2> theta_high{0.0, 0.0};
    Comparability verdict = Comparability::Inconclusive;
    double finest_spread = 0.0;  // max_j sup/inf ratio on the boundary-nearest level
};

// Ratio field l_j / ltilde_j sampled on `grid` and on copies of it pushed
// toward the boundary (max radius 1 - 10^-t, t = 1..7); NotComparable when
// the spread at the finest level exceeds spread_cap.
ComparabilityWitness comparability(const WeightField& L, const WeightField& Ltilde,
                                   const BidiscGrid& grid, double spread_cap = 1e6);

// --- scaled_weight -----------------------------------------------------------

// L* = (beta*l1/r1, beta*l2/r2)
WeightField scaled_weight(const WeightField& L, const Radii& r);

}  // namespace bindex
