#include "bindex/criteria.hpp"

#include <algorithm>

#include "bindex/parallel.hpp"

namespace bindex {

namespace {

// log |F^(k)(z)| via a local Cauchy table; the single derivative route used
// by the polydisc checkers so every family (black boxes included) goes
// through the same spectrally accurate path.
CoeffTable local_table(const AnalyticFunction& F, const BidiscPoint& z, int order) {
    int n = 4;
    while (n < std::max(16, 4 * order)) n *= 2;
    return taylor_cauchy(F, z, default_extraction_radii(z), n, order);
}

double log_derivative_mag(const AnalyticFunction& F, const MultiIndex& k,
                          const BidiscPoint& z) {
    if (F.has_exact_derivatives())
        return LogMagnitude::from_complex(F.derivative(k, z)).log_abs;
    CoeffTable t = local_table(F, z, k.order());
    return t.at(k).log_abs + log_factorial(k);
}

std::vector<BidiscPoint> skeleton_points(const BidiscPoint& z0, const Radii& rho, int n) {
    if (std::abs(z0.z1) + rho.r1 >= 1.0 || std::abs(z0.z2) + rho.r2 >= 1.0)
        throw SkeletonOutsideDomain("skeleton leaves the bidisc");
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<BidiscPoint> pts;
    pts.reserve(std::size_t(n) * n);
    for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2)
            pts.push_back({z0.z1 + std::polar(rho.r1, two_pi * m1 / n),
                           z0.z2 + std::polar(rho.r2, two_pi * m2 / n)});
    return pts;
}

}  // namespace

CriterionReport check_local_dominance(const AnalyticFunction& F, const WeightField& L,
                                      const BidiscPoint& z0, const Radii& r, int n0,
                                      const DiscGrid& polydisc_samples,
                                      [[maybe_unused]] double tol) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::LocalDominance;
    if (n0 < 0) throw DomainViolation("check_local_dominance: n0 must be nonnegative");

    const double l0[2] = {L.eval(0, z0), L.eval(1, z0)};
    const Radii rho{r.r1 / l0[0], r.r2 / l0[1]};
    if (std::abs(z0.z1) + rho.r1 >= 1.0 || std::abs(z0.z2) + rho.r2 >= 1.0)
        throw SkeletonOutsideDomain("check_local_dominance: polydisc leaves the bidisc");

    // polydisc samples: anchored polar product grid, center included
    std::vector<Complex> ax1 = polydisc_samples.points(
        z0.z1, rho.r1, z0.z1 == Complex{} ? 0.0 : std::arg(z0.z1));
    std::vector<Complex> ax2 = polydisc_samples.points(
        z0.z2, rho.r2, z0.z2 == Complex{} ? 0.0 : std::arg(z0.z2));

    std::vector<BidiscPoint> pts;
    pts.reserve(ax1.size() * ax2.size());
    for (const auto& a : ax1)
        for (const auto& b : ax2) pts.push_back({a, b});

    // lhs over samples: derivatives via one local extraction per sample,
    // weights evaluated at the sample
    std::vector<double> lhs_per_point(pts.size(), kNegInf);
    detail::parallel_for(pts.size(), [&](std::size_t i) {
        CoeffTable t = local_table(F, pts[i], n0);
        NormDerivGrid g = normalize(t, L);
        double best = kNegInf;
        for (const auto& k : degree_enumerate(n0)) best = std::max(best, g.at(k));
        lhs_per_point[i] = best;
    });
    double lhs = kNegInf;
    BidiscPoint worst = z0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (lhs_per_point[i] > lhs) {
            lhs = lhs_per_point[i];
            worst = pts[i];
        }

    // center denominators: exact derivatives when the family has them, so a
    // genuinely vanishing center is a true -inf and not extraction round-off
    CoeffTable t0 = taylor_any(F, z0, n0);
    NormDerivGrid g0 = normalize(t0, L);
    double center_best = kNegInf;
    MultiIndex k0{0, 0};
    for (const auto& k : degree_enumerate(n0)) {
        if (g0.at(k) > center_best) {
            center_best = g0.at(k);
            k0 = k;
        }
    }
    // extraction round-off backstop for black boxes: a center this far below
    // the polydisc max is numerically indistinguishable from zero
    if (!t0.exact && center_best < lhs + std::log(1e-12)) center_best = kNegInf;

    rep.sampling["polydisc_points"] = double(pts.size());
    rep.sampling["n0"] = double(n0);
    rep.sampling["r1"] = r.r1;
    rep.sampling["r2"] = r.r2;
    rep.worst_point = worst;
    rep.witness["lhs_log"] = lhs;

    if (center_best == kNegInf) {
        rep.verdict = Verdict::Fails;
        rep.notes["error"] = "all_derivatives_vanish: every normalized derivative up to n0 "
                             "vanishes at the center";
        return rep;
    }
    double p0 = std::exp(lhs - center_best);
    rep.witness["k0_1"] = double(k0.k1);
    rep.witness["k0_2"] = double(k0.k2);
    rep.witness["p0"] = p0;
    rep.verdict = Verdict::Holds;
    return rep;
}

CriterionReport check_kth_max_modulus(const AnalyticFunction& F, const BidiscPoint& z0,
                                      const Radii& rho, const MultiIndex& k0,
                                      int skeleton_samples) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::KthMaxModulus;
    require_positive(rho, "check_kth_max_modulus");

    double center = log_derivative_mag(F, k0, z0);
    double best = kNegInf;
    BidiscPoint worst = z0;
    for (const auto& z : skeleton_points(z0, rho, skeleton_samples)) {
        double v = log_derivative_mag(F, k0, z);
        if (v > best) {
            best = v;
            worst = z;
        }
    }
    rep.sampling["skeleton_n"] = double(skeleton_samples);
    rep.witness["k0_1"] = double(k0.k1);
    rep.witness["k0_2"] = double(k0.k2);
    rep.worst_point = worst;
    if (center == kNegInf) {
        rep.verdict = Verdict::Fails;
        rep.notes["error"] = "center_derivative_zero";
        return rep;
    }
    rep.witness["p"] = std::exp(std::max(best, center) - center);
    rep.verdict = Verdict::Holds;
    return rep;
}

CriterionReport check_pure_partials(const AnalyticFunction& F, const BidiscPoint& z0,
                                    const Radii& rho, int k10, int k20,
                                    int skeleton_samples) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::PurePartials;
    CriterionReport a = check_kth_max_modulus(F, z0, rho, {k10, 0}, skeleton_samples);
    CriterionReport b = check_kth_max_modulus(F, z0, rho, {0, k20}, skeleton_samples);
    rep.sampling = a.sampling;
    rep.witness["k10"] = double(k10);
    rep.witness["k20"] = double(k20);
    if (a.verdict == Verdict::Fails || b.verdict == Verdict::Fails) {
        rep.verdict = Verdict::Fails;
        rep.notes["error"] = "center_derivative_zero";
        rep.worst_point = a.verdict == Verdict::Fails ? a.worst_point : b.worst_point;
        return rep;
    }
    double pa = a.witness.at("p"), pb = b.witness.at("p");
    rep.witness["p"] = std::max(pa, pb);
    rep.witness["p_z1"] = pa;
    rep.witness["p_z2"] = pb;
    rep.worst_point = pa >= pb ? a.worst_point : b.worst_point;
    rep.verdict = Verdict::Holds;
    return rep;
}

CriterionReport check_modulus_ratio(const AnalyticFunction& F, const WeightField& L,
                                    const std::vector<BidiscPoint>& z0_grid,
                                    const Radii& r_prime, const Radii& r_second,
                                    int skeleton_samples) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::ModulusRatio;
    require_positive(r_prime, "check_modulus_ratio");
    if (!(r_prime.r1 < r_second.r1 && r_prime.r2 < r_second.r2))
        throw DomainViolation("check_modulus_ratio: need R' < R'' componentwise");
    if (r_second.r1 > L.beta() || r_second.r2 > L.beta())
        throw DomainViolation("check_modulus_ratio: R'' must stay within (0, beta]");

    double best = kNegInf;
    BidiscPoint worst;
    bool have_worst = false;
    for (const auto& z0 : z0_grid) {
        const double l0[2] = {L.eval(0, z0), L.eval(1, z0)};
        MaxModulusResult outer = max_modulus(
            F, z0, {r_second.r1 / l0[0], r_second.r2 / l0[1]}, skeleton_samples);
        MaxModulusResult inner = max_modulus(
            F, z0, {r_prime.r1 / l0[0], r_prime.r2 / l0[1]}, skeleton_samples);
        if (inner.log_m == kNegInf) {
            rep.verdict = Verdict::Fails;
            rep.notes["error"] = "inner_max_zero: the function vanishes on the inner skeleton";
            rep.worst_point = z0;
            return rep;
        }
        double ratio = outer.log_m - inner.log_m;
        if (ratio > best) {
            best = ratio;
            worst = z0;
            have_worst = true;
        }
    }
    rep.sampling["grid_points"] = double(z0_grid.size());
    rep.sampling["skeleton_n"] = double(skeleton_samples);
    if (!have_worst) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes["error"] = "empty grid";
        return rep;
    }
    rep.witness["p1"] = std::exp(std::max(best, 0.0));
    rep.witness["log_p1"] = std::max(best, 0.0);
    rep.worst_point = worst;
    rep.verdict = Verdict::Holds;
    return rep;
}

double index_bound_from_ratio(const Radii& r_prime, const Radii& r_second, double p1) {
    if (!(r_prime.r1 > 0.0 && r_prime.r1 < 1.0 && r_prime.r2 > 0.0 && r_prime.r2 < 1.0))
        throw DomainViolation("index_bound_from_ratio: need 0 < r'_j < 1");
    if (!(r_second.r1 > 1.0 && r_second.r2 > 1.0))
        throw DomainViolation("index_bound_from_ratio: need r''_j > 1");
    if (!(p1 >= 1.0)) throw DomainViolation("index_bound_from_ratio: need p1 >= 1");
    double denom = std::log(std::min(r_second.r1, r_second.r2));
    double num = -(std::log1p(-r_prime.r1) + std::log1p(-r_prime.r2));
    return num / denom + std::log(p1) / denom;
}

CriterionReport check_hayman(const AnalyticFunction& F, const WeightField& L,
                             const std::vector<BidiscPoint>& z0_grid, int p,
                             std::optional<int> grid_index, double cap_tol) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::Hayman;
    if (p < 0) throw DomainViolation("check_hayman: p must be nonnegative");

    double c_min = kNegInf;  // log of the max grid ratio
    BidiscPoint worst;
    bool have = false;
    for (const auto& z : z0_grid) {
        CoeffTable t = taylor_any(F, z, p + 1);
        if (!t.exact && t.tail_indicator > cap_tol) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes["error"] = "truncation_unsound: extraction tail indicator above cap_tol";
            rep.worst_point = z;
            return rep;
        }
        const double l1 = std::log(L.eval(0, z)), l2 = std::log(L.eval(1, z));
        double num = kNegInf, den = kNegInf;
        for (const auto& k : degree_enumerate(p + 1)) {
            // |F^(K)| / l^K, no factorial normalization in this criterion
            double v = t.at(k).log_abs + log_factorial(k) - k.k1 * l1 - k.k2 * l2;
            if (k.order() == p + 1)
                num = std::max(num, v);
            else
                den = std::max(den, v);
        }
        if (den == kNegInf) {
            rep.verdict = Verdict::Fails;
            rep.notes["error"] = "denominator_zero: all derivatives to order p vanish";
            rep.worst_point = z;
            return rep;
        }
        double ratio = num == kNegInf ? kNegInf : num - den;
        if (!have || ratio > c_min) {
            c_min = ratio;
            worst = z;
            have = true;
        }
    }
    rep.sampling["grid_points"] = double(z0_grid.size());
    rep.sampling["p"] = double(p);
    if (!have) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes["error"] = "empty grid";
        return rep;
    }
    double c_lin = c_min == kNegInf ? 0.0 : std::exp(c_min);
    rep.witness["c_min"] = c_lin;
    rep.worst_point = worst;
    if (grid_index) {
        double bound = std::exp(2.0 * std::lgamma(double(*grid_index) + 2.0));
        rep.witness["necessity_bound"] = bound;
        rep.notes["necessity_bound_ok"] =
            c_lin <= bound * (1.0 + kVerdictSlack) ? "yes" : "no";
    }
    rep.verdict = Verdict::Holds;
    return rep;
}

CriterionReport check_tail_dominance(const AnalyticFunction& F, const WeightField& L,
                                     const std::vector<BidiscPoint>& z0_grid, int N,
                                     double c, int cap) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::TailDominance;
    if (cap <= N) throw DomainViolation("check_tail_dominance: cap must exceed N");
    if (!(c > 0.0)) throw DomainViolation("check_tail_dominance: c must be positive");
    // the inequality is checked on moduli; the statement's missing absolute
    // value bars are resolved toward the modulus form used by its proof
    rep.notes["absolute_values"] = "applied";

    const double log_c = std::log(c);
    double worst_margin = std::numeric_limits<double>::infinity();
    BidiscPoint worst;
    bool have = false;
    bool truncation_bad = false;
    for (const auto& z : z0_grid) {
        CoeffTable t = taylor_any(F, z, cap);
        NormDerivGrid g = normalize(t, L);
        std::vector<double> head_terms, tail_terms, top_terms;
        for (const auto& k : degree_enumerate(cap)) {
            double v = g.at(k);
            if (k.order() <= N)
                head_terms.push_back(v);
            else
                tail_terms.push_back(v);
            if (k.order() == cap) top_terms.push_back(v);
        }
        double head = log_sum_exp(head_terms);
        double tail = log_sum_exp(tail_terms);
        double top = log_sum_exp(top_terms);
        if (tail != kNegInf && top != kNegInf && std::exp(top - tail) > 0.01)
            truncation_bad = true;
        // margin = log head - log (c * tail); Holds needs margin >= ~0
        double margin = tail == kNegInf
                            ? std::numeric_limits<double>::infinity()
                            : head - (log_c + tail);
        if (!have || margin < worst_margin) {
            worst_margin = margin;
            worst = z;
            have = true;
        }
    }
    rep.sampling["grid_points"] = double(z0_grid.size());
    rep.sampling["N"] = double(N);
    rep.sampling["cap"] = double(cap);
    rep.witness["c"] = c;
    if (!have) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes["error"] = "empty grid";
        return rep;
    }
    rep.worst_point = worst;
    rep.witness["worst_log_margin"] = worst_margin;
    if (truncation_bad) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes["error"] =
            "truncation_unsound: the top degree band contributes more than 1% of the tail";
        return rep;
    }
    rep.verdict = worst_margin >= -std::log1p(kVerdictSlack) ? Verdict::Holds : Verdict::Fails;
    return rep;
}

MainPolySearchResult find_main_polynomial(const std::vector<double>& log_a, int N,
                                          double d, double beta) {
    if (log_a.empty() || std::all_of(log_a.begin(), log_a.end(),
                                     [](double v) { return v == kNegInf; }))
        throw NoNonzeroCoefficient("find_main_polynomial: need a nonzero diagonal sequence");
    if (N < 0) throw DomainViolation("find_main_polynomial: N must be nonnegative");
    if (!(d > 0.0 && d <= beta))
        throw DomainViolation("find_main_polynomial: d must lie in (0, beta]");

    MainPolySearchResult out;
    out.d = d;
    // c = 2((N+1)^3 + 6(N+3)!), via log-gamma so large N stays representable
    double log_c = std::log(2.0) +
                   log_sum_exp({3.0 * std::log(double(N + 1)),
                                std::log(6.0) + std::lgamma(double(N + 4))});
    out.c_log = LogMagnitude{log_c, std::nullopt};
    const double log_d_frac = std::log(d) - std::log1p(d);  // log d/(d+1)
    out.eta_log = LogMagnitude{log_d_frac - 2.0 * double(N + 1) * log_c, std::nullopt};
    out.scan_note = "m=0 scans the full sequence (length " +
                    std::to_string(log_a.size()) + ") in place of the n0 cap";

    const int max_iter = 10 * (2 * N + 2);
    int s_prev = int(log_a.size()) - 1;
    for (int m = 0;; ++m) {
        if (m > max_iter)
            throw IterationOverrun(
                "find_main_polynomial: no stop within 10(2N+2) steps; the index premise "
                "likely fails for this sequence");
        const double log_r = log_d_frac - double(m) * log_c;
        double mu = kNegInf;
        int s = 0;
        for (int k = 0; k <= s_prev; ++k) {
            double v = log_a[std::size_t(k)] + double(k) * log_r;
            if (v > mu) {
                mu = v;
                s = k;
            }
        }
        double mu_star = kNegInf;
        std::optional<int> s_star;
        for (int k = 0; k <= s_prev; ++k) {
            if (k == s) continue;
            double v = log_a[std::size_t(k)] + double(k) * log_r;
            if (v > mu_star) {
                mu_star = v;
                s_star = k;
            }
        }
        out.trace.push_back({m, log_r, mu, s, mu_star, s_star});
        if (mu_star <= mu - log_c) {
            out.m0 = m;
            out.k0 = s;
            out.r_log = LogMagnitude{log_r, std::nullopt};
            out.within_guarantee = m <= 2 * N + 1;
            return out;
        }
        s_prev = s;
    }
}

CriterionReport verify_main_polynomial(const CoeffTable& coeffs, const WeightField& L,
                                       const BidiscPoint& z0, const Radii& r, int k0,
                                       int skeleton_samples) {
    CriterionReport rep;
    rep.theorem_id = TheoremId::MainPolynomial;
    require_positive(r, "verify_main_polynomial");
    if (k0 < 0 || k0 > coeffs.order)
        throw DomainViolation("verify_main_polynomial: k0 outside the table order");

    const double l0[2] = {L.eval(0, z0), L.eval(1, z0)};
    const Radii rho{r.r1 / l0[0], r.r2 / l0[1]};
    if (coeffs.extraction_radii) {
        const auto& er = *coeffs.extraction_radii;
        if (rho.r1 > er.r1 * (1.0 + 1e-12) || rho.r2 > er.r2 * (1.0 + 1e-12))
            throw DomainViolation(
                "verify_main_polynomial: skeleton outside the extraction polydisc");
    }

    // rhs: half of the degree-k0 band's maximal term at rho
    const double lr1 = std::log(rho.r1), lr2 = std::log(rho.r2);
    double band = kNegInf;
    for (int k1 = 0; k1 <= k0; ++k1) {
        MultiIndex k{k1, k0 - k1};
        band = std::max(band, coeffs.at(k).log_abs + k.k1 * lr1 + k.k2 * lr2);
    }
    rep.sampling["skeleton_n"] = double(skeleton_samples);
    rep.witness["k0"] = double(k0);
    rep.witness["rho1"] = rho.r1;
    rep.witness["rho2"] = rho.r2;
    if (band == kNegInf) {
        rep.verdict = Verdict::Fails;
        rep.notes["error"] = "empty_band: no degree-k0 coefficient is nonzero";
        rep.worst_point = z0;
        return rep;
    }
    const double log_rhs = band - std::log(2.0);

    // lhs: the truncated series minus the degree-k0 band, summed as complex
    // values over the skeleton
    double lhs = kNegInf;
    BidiscPoint worst = z0;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int m1 = 0; m1 < skeleton_samples; ++m1) {
        Complex w1 = std::polar(rho.r1, two_pi * m1 / skeleton_samples);
        for (int m2 = 0; m2 < skeleton_samples; ++m2) {
            Complex w2 = std::polar(rho.r2, two_pi * m2 / skeleton_samples);
            Complex full{0.0, 0.0}, band_sum{0.0, 0.0};
            for (int k1 = coeffs.order; k1 >= 0; --k1) {
                Complex row{0.0, 0.0};
                for (int k2 = coeffs.order - k1; k2 >= 0; --k2)
                    row = row * w2 + coeffs.at({k1, k2}).to_complex();
                full = full * w1 + row;
            }
            for (int k1 = 0; k1 <= k0; ++k1) {
                MultiIndex k{k1, k0 - k1};
                Complex term = coeffs.at(k).to_complex();
                for (int i = 0; i < k.k1; ++i) term *= w1;
                for (int i = 0; i < k.k2; ++i) term *= w2;
                band_sum += term;
            }
            double v = std::abs(full - band_sum);
            double lv = v > 0.0 ? std::log(v) : kNegInf;
            if (lv > lhs) {
                lhs = lv;
                worst = {z0.z1 + w1, z0.z2 + w2};
            }
        }
    }
    rep.witness["lhs_max"] = lhs == kNegInf ? 0.0 : std::exp(lhs);
    rep.witness["rhs"] = std::exp(log_rhs);
    rep.worst_point = worst;
    rep.verdict = lhs <= log_rhs + std::log1p(kVerdictSlack) ? Verdict::Holds : Verdict::Fails;
    return rep;
}

}  // namespace bindex
