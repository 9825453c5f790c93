#include "bindex/weights.hpp"

#include <algorithm>
#include <cmath>

#include "bindex/parallel.hpp"

namespace bindex {

namespace {

void check_beta(double beta) {
    if (!(beta > 1.0)) throw DomainViolation("weight: beta must exceed 1");
}

}  // namespace

WeightField WeightField::boundary_power(double beta,
                                        std::array<std::array<double, 2>, 2> exponents,
                                        double sigma) {
    check_beta(beta);
    if (!(sigma > 0.0)) throw DomainViolation("weight: scale must be positive");
    WeightField w;
    w.family_ = WeightFamily::BoundaryPower;
    w.beta_ = beta;
    w.exponents_ = exponents;
    w.scales_ = {sigma, sigma};
    return w;
}

WeightField WeightField::constant(double beta, double c1, double c2) {
    check_beta(beta);
    if (!(c1 > 0.0 && c2 > 0.0)) throw DomainViolation("weight: constants must be positive");
    WeightField w;
    w.family_ = WeightFamily::Constant;
    w.beta_ = beta;
    w.scales_ = {c1, c2};
    return w;
}

WeightField WeightField::custom(double beta, Evaluator l1, Evaluator l2) {
    check_beta(beta);
    WeightField w;
    w.family_ = WeightFamily::Custom;
    w.beta_ = beta;
    w.l_[0] = std::move(l1);
    w.l_[1] = std::move(l2);
    return w;
}

WeightField WeightField::example_weight(double beta, double sigma) {
    return boundary_power(beta, {{{2.0, 1.0}, {1.0, 2.0}}}, sigma);
}

double WeightField::eval(int j, const BidiscPoint& z) const {
    double v = 0.0;
    switch (family_) {
        case WeightFamily::Constant:
            v = scales_[j];
            break;
        case WeightFamily::BoundaryPower: {
            double d1 = 1.0 - std::abs(z.z1);
            double d2 = 1.0 - std::abs(z.z2);
            if (d1 <= 0.0 || d2 <= 0.0)
                throw EvaluatorFailure("boundary_power weight evaluated outside the bidisc");
            v = scales_[j] * std::pow(d1, -exponents_[j][0]) * std::pow(d2, -exponents_[j][1]);
            break;
        }
        case WeightFamily::Custom:
            if (!l_[j]) throw EvaluatorFailure("custom weight has no evaluator");
            v = scales_[j] * l_[j](z);
            break;
    }
    if (!(v > 0.0) || !std::isfinite(v))
        throw EvaluatorFailure("weight must be positive and finite");
    return v;
}

WeightField WeightField::scaled(double c1, double c2) const {
    if (!(c1 > 0.0 && c2 > 0.0)) throw DomainViolation("weight scale must be positive");
    WeightField w = *this;
    w.scales_[0] *= c1;
    w.scales_[1] *= c2;
    return w;
}

double WeightField::factor(int j, int axis, double modulus) const {
    switch (family_) {
        case WeightFamily::Constant:
            return axis == 0 ? scales_[j] : 1.0;
        case WeightFamily::BoundaryPower: {
            double d = 1.0 - modulus;
            if (d <= 0.0) throw EvaluatorFailure("boundary_power factor outside the bidisc");
            double f = std::pow(d, -exponents_[j][axis]);
            return axis == 0 ? scales_[j] * f : f;
        }
        case WeightFamily::Custom:
            throw UnsupportedFamily("custom weights are not separable");
    }
    throw UnsupportedFamily("factor: unknown family");
}

WeightValidation validate_weight(const WeightField& L, const BidiscGrid& grid) {
    WeightValidation out;
    out.worst_margin = std::numeric_limits<double>::infinity();
    auto pts = grid.points();
    out.grid_points = pts.size();
    std::size_t ok = 0;
    for (const auto& z : pts) {
        bool admissible = true;
        for (int j = 0; j < 2; ++j) {
            double margin = L.eval(j, z) * (1.0 - std::abs(z.coord(j))) - L.beta();
            if (margin <= 0.0) admissible = false;
            if (margin < out.worst_margin) {
                out.worst_margin = margin;
                out.worst_point = z;
            }
        }
        if (admissible) ++ok;
    }
    out.admissible_fraction = pts.empty() ? 0.0 : double(ok) / double(pts.size());
    return out;
}

namespace {

struct MinMax {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double x) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
};

// inner samples of one coordinate disc |w - c| <= rho, anchored at arg(c) so
// the radial extremes of the modulus are hit exactly; clipped to |w| < 1;
// returns how many samples were discarded.  shape.r_max acts as a fraction
// of the polydisc radius (1.0 = sample out to the boundary circle).
std::size_t inner_axis_points(Complex c, double rho, const DiscGrid& shape,
                              std::vector<Complex>& out) {
    double anchor = (c == Complex{0.0, 0.0}) ? 0.0 : std::arg(c);
    auto raw = shape.points(c, rho, anchor);
    out.clear();
    std::size_t clipped = 0;
    for (const auto& w : raw) {
        if (std::abs(w) < 1.0)
            out.push_back(w);
        else
            ++clipped;
    }
    return clipped;
}

}  // namespace

LambdaEstimate lambda_bounds(const WeightField& L, const Radii& r,
                             const BidiscGrid& outer_grid, const DiscGrid& inner_grid) {
    require_positive(r, "lambda_bounds");
    if (r.r1 > L.beta() || r.r2 > L.beta())
        throw DomainViolation("lambda_bounds: radii must lie in (0, beta]");

    LambdaEstimate est;
    est.r = r;
    est.outer_grid = outer_grid;
    est.inner_grid = inner_grid;

    auto outer_pts = outer_grid.points();
    struct Slot {
        MinMax ratio[2];
        std::size_t clipped = 0;
    };
    std::vector<Slot> slots(outer_pts.size());

    detail::parallel_for(outer_pts.size(), [&](std::size_t i) {
        const BidiscPoint& z0 = outer_pts[i];
        Slot& slot = slots[i];
        const double l0[2] = {L.eval(0, z0), L.eval(1, z0)};
        std::vector<Complex> ax1, ax2;
        slot.clipped += inner_axis_points(z0.z1, r.r1 / l0[0], inner_grid, ax1);
        slot.clipped += inner_axis_points(z0.z2, r.r2 / l0[1], inner_grid, ax2);
        if (ax1.empty() || ax2.empty()) return;

        if (L.separable()) {
            // l_j(w) = f_j0(|w1|) f_j1(|w2|): extremes over the product grid
            // factor into per-axis extremes of each positive factor
            for (int j = 0; j < 2; ++j) {
                MinMax f1, f2;
                for (const auto& w : ax1) f1.add(L.factor(j, 0, std::abs(w)));
                for (const auto& w : ax2) f2.add(L.factor(j, 1, std::abs(w)));
                slot.ratio[j].add(f1.lo * f2.lo / l0[j]);
                slot.ratio[j].add(f1.hi * f2.hi / l0[j]);
            }
        } else {
            for (const auto& w1 : ax1)
                for (const auto& w2 : ax2) {
                    BidiscPoint w{w1, w2};
                    for (int j = 0; j < 2; ++j) slot.ratio[j].add(L.eval(j, w) / l0[j]);
                }
        }
    });

    MinMax ratio[2];
    std::size_t clipped = 0;
    for (const auto& slot : slots) {
        clipped += slot.clipped;
        for (int j = 0; j < 2; ++j) {
            if (slot.ratio[j].lo <= slot.ratio[j].hi) {
                ratio[j].add(slot.ratio[j].lo);
                ratio[j].add(slot.ratio[j].hi);
            }
        }
    }

    for (int j = 0; j < 2; ++j) {
        est.lambda1[j] = ratio[j].lo;
        est.lambda2[j] = ratio[j].hi;
    }
    est.clipped = clipped;
    est.q2_consistent = clipped == 0 && est.lambda1[0] > 0.0 && est.lambda1[1] > 0.0 &&
                        std::isfinite(est.lambda2[0]) && std::isfinite(est.lambda2[1]) &&
                        est.lambda1[0] <= est.lambda2[0] && est.lambda1[1] <= est.lambda2[1];
    return est;
}

LambdaEstimate lambda_bounds_interval(const WeightField& L, const Radii& r,
                                      const BidiscGrid& outer_grid,
                                      const DiscGrid& inner_grid) {
    LambdaEstimate base = lambda_bounds(L, r, outer_grid, inner_grid);
    LambdaEstimate fine = lambda_bounds(L, r, outer_grid.doubled(), inner_grid.doubled());
    for (int j = 0; j < 2; ++j) {
        fine.delta1[j] = std::abs(fine.lambda1[j] - base.lambda1[j]);
        fine.delta2[j] = std::abs(fine.lambda2[j] - base.lambda2[j]);
    }
    fine.has_delta = true;
    return fine;
}

ComparabilityWitness comparability(const WeightField& L, const WeightField& Ltilde,
                                   const BidiscGrid& grid, double spread_cap) {
    ComparabilityWitness w;
    MinMax all[2];
    MinMax finest[2];

    auto sweep = [&](const BidiscGrid& g, bool is_finest) {
        for (const auto& z : g.points()) {
            for (int j = 0; j < 2; ++j) {
                double q = L.eval(j, z) / Ltilde.eval(j, z);
                all[j].add(q);
                if (is_finest) finest[j].add(q);
            }
        }
    };

    sweep(grid, false);
    for (int t = 1; t <= 7; ++t) {
        BidiscGrid g = grid;
        g.d1.r_max = 1.0 - std::pow(10.0, -t);
        g.d2.r_max = 1.0 - std::pow(10.0, -t);
        sweep(g, t == 7);
    }

    for (int j = 0; j < 2; ++j) {
        w.theta_low[j] = all[j].lo;
        w.theta_high[j] = all[j].hi;
    }
    double spread = 0.0;
    for (int j = 0; j < 2; ++j)
        if (finest[j].lo > 0.0) spread = std::max(spread, finest[j].hi / finest[j].lo);
    w.finest_spread = spread;
    if (!(spread > 0.0) || !std::isfinite(spread))
        w.verdict = Comparability::Inconclusive;
    else
        w.verdict = spread > spread_cap ? Comparability::NotComparable
                                        : Comparability::Comparable;
    return w;
}

WeightField scaled_weight(const WeightField& L, const Radii& r) {
    require_positive(r, "scaled_weight");
    if (r.r1 > L.beta() || r.r2 > L.beta())
        throw DomainViolation("scaled_weight: radii must lie in (0, beta]");
    return L.scaled(L.beta() / r.r1, L.beta() / r.r2);
}

}  // namespace bindex
