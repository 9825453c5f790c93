#include "bindex/domain.hpp"

#include <algorithm>

namespace bindex {

std::vector<MultiIndex> degree_enumerate(int max_order) {
    if (max_order < 0) throw DomainViolation("degree_enumerate: negative order");
    std::vector<MultiIndex> out;
    out.reserve(table_size(max_order));
    for (int d = 0; d <= max_order; ++d)
        for (int k1 = 0; k1 <= d; ++k1)
            out.push_back({k1, d - k1});
    return out;
}

double log_sum_exp(const std::vector<double>& xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

std::vector<Complex> DiscGrid::points(Complex center, double radius_scale,
                                      double anchor) const {
    std::vector<Complex> out;
    out.reserve(point_count());
    out.push_back(center);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int k = 1; k <= n_r; ++k) {
        double rho = r_max * radius_scale * double(k) / double(n_r);
        for (int m = 0; m < n_theta; ++m) {
            double th = anchor + two_pi * double(m) / double(n_theta);
            out.push_back(center + std::polar(rho, th));
        }
    }
    return out;
}

std::vector<BidiscPoint> BidiscGrid::points() const {
    auto p1 = d1.points();
    auto p2 = d2.points();
    std::vector<BidiscPoint> out;
    out.reserve(p1.size() * p2.size());
    for (const auto& a : p1)
        for (const auto& b : p2) out.push_back({a, b});
    return out;
}

const char* to_string(TheoremId id) {
    switch (id) {
        case TheoremId::LocalDominance: return "local_dominance";
        case TheoremId::KthMaxModulus: return "kth_max_modulus";
        case TheoremId::PurePartials: return "pure_partials";
        case TheoremId::ModulusRatio: return "modulus_ratio";
        case TheoremId::Hayman: return "hayman";
        case TheoremId::TailDominance: return "tail_dominance";
        case TheoremId::MainPolynomial: return "main_polynomial";
    }
    return "unknown";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace bindex
