#include "bindex/coefficients.hpp"

#include <algorithm>

#include "bindex/parallel.hpp"

namespace bindex {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// tail indicator of a finished entry list at radii rho
double compute_tail_indicator(const std::vector<LogMagnitude>& entries, int order,
                              const Radii& rho) {
    const double lr1 = std::log(rho.r1), lr2 = std::log(rho.r2);
    double top = kNegInf, all = kNegInf;
    for (const auto& k : degree_enumerate(order)) {
        double t = entries[canonical_position(k)].log_abs + k.k1 * lr1 + k.k2 * lr2;
        all = std::max(all, t);
        if (k.order() == order) top = std::max(top, t);
    }
    if (all == kNegInf) return 0.0;
    return std::exp(top - all);
}

}  // namespace

CoeffTable taylor_closed_form(const AnalyticFunction& F, const BidiscPoint& z0, int order) {
    if (order < 0) throw DomainViolation("taylor_closed_form: negative order");
    if (!F.has_exact_derivatives())
        throw UnsupportedFamily("taylor_closed_form: family lacks a derivative rule");
    CoeffTable t;
    t.center = z0;
    t.order = order;
    t.exact = true;
    t.entries.resize(table_size(order));
    for (const auto& k : degree_enumerate(order)) {
        LogMagnitude lm = LogMagnitude::from_complex(F.derivative(k, z0));
        lm.log_abs -= log_factorial(k);  // Taylor normalization b_K = F^(K)/K!
        t.entries[canonical_position(k)] = lm;
    }
    t.tail_indicator = compute_tail_indicator(t.entries, order, default_extraction_radii(z0));
    return t;
}

CoeffTable taylor_cauchy(const AnalyticFunction& F, const BidiscPoint& z0,
                         const Radii& rho, int n_samples, int order,
                         double alias_threshold) {
    if (order < 0) throw DomainViolation("taylor_cauchy: negative order");
    require_positive(rho, "taylor_cauchy");
    if (std::abs(z0.z1) + rho.r1 >= 1.0 || std::abs(z0.z2) + rho.r2 >= 1.0)
        throw SkeletonOutsideDomain("taylor_cauchy: closed polydisc leaves the bidisc");
    if (!is_pow2(n_samples) || n_samples < std::max(4, 4 * order))
        throw DomainViolation("taylor_cauchy: n_samples must be a power of two >= 4*order");

    const int n = n_samples;
    const double two_pi = 2.0 * std::acos(-1.0);

    // skeleton samples S[m1*n + m2]
    std::vector<Complex> ring1(n), ring2(n);
    for (int m = 0; m < n; ++m) {
        double th = two_pi * double(m) / double(n);
        ring1[m] = z0.z1 + std::polar(rho.r1, th);
        ring2[m] = z0.z2 + std::polar(rho.r2, th);
    }
    std::vector<Complex> samples(std::size_t(n) * n);
    detail::parallel_for(std::size_t(n), [&](std::size_t m1) {
        for (int m2 = 0; m2 < n; ++m2)
            samples[m1 * n + m2] = F.eval({ring1[m1], ring2[m2]});
    });

    // twiddle factors w[t] = exp(-2*pi*i*t/n)
    std::vector<Complex> w(n);
    for (int t = 0; t < n; ++t) w[t] = std::polar(1.0, -two_pi * double(t) / double(n));

    // compensated accumulation keeps the ring sums near eps so the rho^-k
    // rescaling does not surface round-off in the high-order entries
    auto kahan_add = [](Complex& sum, Complex& comp, const Complex& v) {
        Complex y = v - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    // stage 1: transform along axis 2 for the needed j2 only
    std::vector<Complex> g(std::size_t(n) * (order + 1));
    detail::parallel_for(std::size_t(n), [&](std::size_t m1) {
        for (int j2 = 0; j2 <= order; ++j2) {
            Complex acc{0.0, 0.0}, comp{0.0, 0.0};
            for (int m2 = 0; m2 < n; ++m2)
                kahan_add(acc, comp, samples[m1 * n + m2] * w[(std::size_t(j2) * m2) % n]);
            g[m1 * (order + 1) + j2] = acc;
        }
    });

    CoeffTable t;
    t.center = z0;
    t.order = order;
    t.extraction_radii = rho;
    t.entries.resize(table_size(order));
    const double lr1 = std::log(rho.r1), lr2 = std::log(rho.r2);
    const double log_n2 = 2.0 * std::log(double(n));
    for (const auto& k : degree_enumerate(order)) {
        Complex acc{0.0, 0.0}, comp{0.0, 0.0};
        for (int m1 = 0; m1 < n; ++m1)
            kahan_add(acc, comp,
                      g[std::size_t(m1) * (order + 1) + k.k2] * w[(std::size_t(k.k1) * m1) % n]);
        LogMagnitude lm = LogMagnitude::from_complex(acc);
        lm.log_abs -= log_n2 + k.k1 * lr1 + k.k2 * lr2;
        t.entries[canonical_position(k)] = lm;
    }
    t.tail_indicator = compute_tail_indicator(t.entries, order, rho);
    t.alias_warning = t.tail_indicator > alias_threshold;
    return t;
}

CoeffTable taylor_any(const AnalyticFunction& F, const BidiscPoint& z0, int order) {
    if (F.has_exact_derivatives()) return taylor_closed_form(F, z0, order);
    int n = 4;
    while (n < std::max(32, 4 * order)) n *= 2;
    return taylor_cauchy(F, z0, default_extraction_radii(z0), n, order);
}

NormDerivGrid normalize(const CoeffTable& coeffs, const WeightField& L) {
    NormDerivGrid g;
    g.center = coeffs.center;
    g.order = coeffs.order;
    const double l1 = L.eval(0, coeffs.center);
    const double l2 = L.eval(1, coeffs.center);
    g.weight_at_center = {l1, l2};
    const double ll1 = std::log(l1), ll2 = std::log(l2);
    g.log_values.resize(coeffs.entries.size());
    for (const auto& k : degree_enumerate(coeffs.order)) {
        std::size_t p = canonical_position(k);
        g.log_values[p] = coeffs.entries[p].log_abs - k.k1 * ll1 - k.k2 * ll2;
    }
    return g;
}

std::vector<double> diagonal_max(const NormDerivGrid& grid) {
    std::vector<double> a(std::size_t(grid.order) + 1, kNegInf);
    for (const auto& k : degree_enumerate(grid.order))
        a[std::size_t(k.order())] =
            std::max(a[std::size_t(k.order())], grid.log_values[canonical_position(k)]);
    return a;
}

Complex eval_series(const CoeffTable& coeffs, const BidiscPoint& z) {
    const Complex w1 = z.z1 - coeffs.center.z1;
    const Complex w2 = z.z2 - coeffs.center.z2;
    if (coeffs.extraction_radii) {
        const auto& rho = *coeffs.extraction_radii;
        if (std::abs(w1) > rho.r1 * (1.0 + 1e-12) || std::abs(w2) > rho.r2 * (1.0 + 1e-12))
            throw DomainViolation("eval_series: point outside the extraction polydisc");
    }
    // Horner in w1 over Horner-in-w2 band rows
    Complex acc{0.0, 0.0};
    for (int k1 = coeffs.order; k1 >= 0; --k1) {
        Complex row{0.0, 0.0};
        for (int k2 = coeffs.order - k1; k2 >= 0; --k2)
            row = row * w2 + coeffs.at({k1, k2}).to_complex();
        acc = acc * w1 + row;
    }
    return acc;
}

}  // namespace bindex
