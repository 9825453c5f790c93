#include "bindex/index.hpp"

#include <algorithm>

#include "bindex/parallel.hpp"

namespace bindex {

namespace {

// Beyond-cap soundness certificate.  Cauchy's inequality at radius rho gives
//   a*_K <= M(rho) / prod_j (rho_j l_j(z0))^k_j,
// so if gamma = min_j rho_j l_j(z0) > 1 and 2*M(rho)/gamma^(cap+1) <= A
// (A the in-cap max, factor 2 headroom for the sampled M), every a*_K with
// |K| > cap stays below A and the truncated scan is decisive.  The radius is
// searched over a few fractions of the distance to the boundary: large
// fractions certify in the bulk, small ones near the boundary where the
// max modulus blows up faster than the weight.
bool certify_tail(const AnalyticFunction& F, const WeightField& L,
                  const BidiscPoint& z0, int cap, double log_A) {
    if (log_A == kNegInf) return false;
    const double d1 = 1.0 - std::abs(z0.z1);
    const double d2 = 1.0 - std::abs(z0.z2);
    const double l1 = L.eval(0, z0), l2 = L.eval(1, z0);
    static constexpr double kFractions[] = {0.5, 0.35, 0.25, 0.15, 0.1, 0.05, 0.025};
    for (double theta : kFractions) {
        Radii rho{theta * d1, theta * d2};
        double gamma = std::min(rho.r1 * l1, rho.r2 * l2);
        if (gamma <= 1.0) continue;
        MaxModulusResult m = max_modulus(F, z0, rho, 16);
        if (m.log_m + std::log(2.0) - double(cap + 1) * std::log(gamma) <= log_A)
            return true;
    }
    return false;
}

}  // namespace

LocalIndexResult local_index_scan(const NormDerivGrid& grid, int cap, double tol,
                                  double tail_indicator, bool table_exact) {
    LocalIndexResult res;
    res.cap = cap;
    res.tail_indicator = tail_indicator;

    // running band maxima M_m and the global argmax in canonical order
    std::vector<double> band_max(std::size_t(cap) + 1, kNegInf);
    double a_max = kNegInf;
    MultiIndex argmax{0, 0};
    for (const auto& k : degree_enumerate(cap)) {
        double v = grid.at(k);
        std::size_t d = std::size_t(k.order());
        band_max[d] = std::max(band_max[d], v);
        if (v > a_max) {
            a_max = v;
            argmax = k;
        }
    }
    for (std::size_t d = 1; d <= std::size_t(cap); ++d)
        band_max[d] = std::max(band_max[d], band_max[d - 1]);

    res.argmax_index = argmax;
    res.dominating_value = LogMagnitude{a_max, std::nullopt};

    if (!table_exact && tail_indicator > 1e-6) {
        res.status = IndexStatus::Inconclusive;
        res.reason = "truncation_unsound: extraction tail indicator above 1e-6";
        return res;
    }

    const double slack_log = std::log1p(tol);
    int n0 = cap;
    for (int m = 0; m <= cap; ++m) {
        if (a_max <= band_max[std::size_t(m)] + slack_log) {
            n0 = m;
            break;
        }
    }
    res.slack = std::exp(a_max - band_max[std::size_t(n0)]) - 1.0;
    if (n0 == cap && cap > 0 && a_max > band_max[std::size_t(cap) - 1] + slack_log) {
        // the band maxima still grow at the truncation edge
        res.status = IndexStatus::Unbounded;
        res.reason = "running max still increasing at the top band";
        return res;
    }
    res.status = IndexStatus::Ok;
    res.n0 = n0;
    return res;
}

LocalIndexResult local_index(const AnalyticFunction& F, const WeightField& L,
                             const BidiscPoint& z0, int cap, double tol) {
    if (cap < 1) throw DomainViolation("local_index: cap must be >= 1");
    CoeffTable table = taylor_any(F, z0, cap);
    NormDerivGrid grid = normalize(table, L);
    LocalIndexResult res = local_index_scan(grid, cap, tol, table.tail_indicator, table.exact);
    if (res.status != IndexStatus::Ok) return res;

    // polynomial with the whole support inside the scan: nothing beyond cap
    if (F.is_polynomial() && F.poly_degree() <= cap) return res;

    if (!certify_tail(F, L, z0, cap, res.dominating_value.log_abs)) {
        res.status = IndexStatus::Inconclusive;
        res.n0.reset();
        res.reason = "tail_not_certified: no radius certifies the beyond-cap bands";
    }
    return res;
}

IndexProfile index_profile(const AnalyticFunction& F, const WeightField& L,
                           const std::vector<double>& levels, int cap,
                           DiscGrid per_coordinate, double tol) {
    IndexProfile profile;
    int running = 0;
    for (double level : levels) {
        if (!(level > 0.0 && level < 1.0))
            throw DomainViolation("index_profile: levels must lie in (0,1)");
        DiscGrid g = per_coordinate;
        g.r_max = level;
        BidiscGrid grid{g, g};
        auto pts = grid.points();

        IndexProfileLevel lvl;
        lvl.max_radius = level;
        lvl.points.resize(pts.size());
        detail::parallel_for(pts.size(), [&](std::size_t i) {
            lvl.points[i] = {pts[i], local_index(F, L, pts[i], cap, tol)};
        });

        int sup = 0;
        for (const auto& p : lvl.points) {
            switch (p.res.status) {
                case IndexStatus::Ok: sup = std::max(sup, *p.res.n0); break;
                case IndexStatus::Unbounded: ++lvl.unbounded; break;
                case IndexStatus::Inconclusive: ++lvl.inconclusive; break;
            }
        }
        lvl.sup_n0 = sup;
        running = std::max(running, sup);
        lvl.running_sup = running;
        profile.total_points += lvl.points.size();
        profile.inconclusive += lvl.inconclusive;
        profile.unbounded += lvl.unbounded;
        profile.levels.push_back(std::move(lvl));
    }
    profile.sup_n0 = running;
    return profile;
}

MaximalTermResult maximal_term(const CoeffTable& coeffs, const Radii& r, double tol) {
    if (coeffs.order < 1) throw DomainViolation("maximal_term: table order must be >= 1");
    require_positive(r, "maximal_term");
    const double lr1 = std::log(r.r1), lr2 = std::log(r.r2);

    MaximalTermResult out;
    double mu = kNegInf;
    for (const auto& k : degree_enumerate(coeffs.order))
        mu = std::max(mu, coeffs.at(k).log_abs + k.k1 * lr1 + k.k2 * lr2);
    out.mu = LogMagnitude{mu, std::nullopt};
    if (mu == kNegInf) {  // zero table
        out.nu_set = {{0, 0}};
        out.nu_norm = 0;
        return out;
    }
    const double cutoff = mu - std::log1p(tol);
    for (const auto& k : degree_enumerate(coeffs.order)) {
        double t = coeffs.at(k).log_abs + k.k1 * lr1 + k.k2 * lr2;
        if (t >= cutoff) {
            out.nu_set.push_back(k);
            out.nu_norm = std::max(out.nu_norm, k.order());
        }
    }
    return out;
}

MaxModulusResult max_modulus(const AnalyticFunction& F, const BidiscPoint& z0,
                             const Radii& r, int n_samples) {
    require_positive(r, "max_modulus");
    if (n_samples < 1) throw DomainViolation("max_modulus: need at least one sample");
    if (std::abs(z0.z1) + r.r1 >= 1.0 || std::abs(z0.z2) + r.r2 >= 1.0)
        throw SkeletonOutsideDomain("max_modulus: skeleton leaves the bidisc");

    const double two_pi = 2.0 * std::acos(-1.0);
    MaxModulusResult out;
    for (int m1 = 0; m1 < n_samples; ++m1) {
        Complex w1 = z0.z1 + std::polar(r.r1, two_pi * double(m1) / double(n_samples));
        for (int m2 = 0; m2 < n_samples; ++m2) {
            Complex w2 = z0.z2 + std::polar(r.r2, two_pi * double(m2) / double(n_samples));
            double a = std::abs(F.eval({w1, w2}));
            double la = a > 0.0 ? std::log(a) : kNegInf;
            if (la > out.log_m) {
                out.log_m = la;
                out.argmax = {w1, w2};
            }
        }
    }
    out.m = out.log_m == kNegInf ? 0.0 : std::exp(out.log_m);
    return out;
}

long long q_constant(int N, const Radii& r, const LambdaEstimate& lambdas) {
    if (N < 0) throw DomainViolation("q_constant: N must be nonnegative");
    if (!(r.r1 >= 0.0 && r.r2 >= 0.0)) throw DomainViolation("q_constant: negative radii");
    for (int j = 0; j < 2; ++j)
        if (!(lambdas.lambda1[j] > 0.0) || lambdas.lambda1[j] > lambdas.lambda2[j])
            throw DomainViolation("q_constant: inconsistent lambda estimate");

    if (r.r1 + r.r2 == 0.0) return 1;  // floor(0) + 1
    double log_q = std::log(2.0 * double(N + 1) * (r.r1 + r.r2));
    for (int j = 0; j < 2; ++j)
        log_q += -double(N) * std::log(lambdas.lambda1[j]) +
                 double(N + 1) * std::log(lambdas.lambda2[j]);
    if (log_q > std::log(9e15)) throw DomainViolation("q_constant: value overflows integer range");
    double v = std::exp(log_q);
    // snap log-domain round-off at integer boundaries before flooring
    double nearest = std::round(v);
    if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, nearest)) v = nearest;
    return (long long)(std::floor(v)) + 1;
}

}  // namespace bindex
