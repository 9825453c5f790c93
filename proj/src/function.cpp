#include "bindex/function.hpp"

#include <algorithm>
#include <mutex>

namespace bindex {

namespace {

// --- derivative polynomials for exp_reciprocal ------------------------------
//
// With u = 1/(1-z1), v = 1/(1-z2) and F = exp(uv):
//   d/dz1 (u^p v^q) = p u^(p+1) v^q,   d/dz1 F = u^2 v F
// so F^(j1,j2) = F * P_{j1,j2}(u,v) with integer-coefficient polynomials P
// built by the recurrence P -> dP + P * u^2 v (and symmetrically in z2).
// Coefficients are kept as doubles; they stay modest for the orders used.

struct UVPoly {
    // coeff[(p,q)] dense on a (p_max+1) x (q_max+1) grid
    int p_max = 0, q_max = 0;
    std::vector<double> c;  // row-major (p, q)

    double at(int p, int q) const { return c[std::size_t(p) * (q_max + 1) + q]; }
    double& at(int p, int q) { return c[std::size_t(p) * (q_max + 1) + q]; }
};

UVPoly uv_one() {
    UVPoly r;
    r.c.assign(1, 1.0);
    return r;
}

UVPoly uv_diff(const UVPoly& a, int axis) {
    // axis 0: d/dz1: (p,q) -> p*(p+1,q) plus the product term (p+2,q+1)
    // axis 1: d/dz2: (p,q) -> q*(p,q+1) plus the product term (p+1,q+2)
    UVPoly r;
    r.p_max = a.p_max + 2;
    r.q_max = a.q_max + 2;
    r.c.assign(std::size_t(r.p_max + 1) * (r.q_max + 1), 0.0);
    for (int p = 0; p <= a.p_max; ++p)
        for (int q = 0; q <= a.q_max; ++q) {
            double w = a.at(p, q);
            if (w == 0.0) continue;
            if (axis == 0) {
                if (p > 0) r.at(p + 1, q) += double(p) * w;
                r.at(p + 2, q + 1) += w;
            } else {
                if (q > 0) r.at(p, q + 1) += double(q) * w;
                r.at(p + 1, q + 2) += w;
            }
        }
    return r;
}

const UVPoly& exp_reciprocal_poly(const MultiIndex& k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, UVPoly> cache;
    std::scoped_lock lock(mu);
    if (cache.empty()) cache.emplace(std::make_pair(0, 0), uv_one());
    // fill along the z1 axis, then along z2 at fixed k1
    for (int i = 1; i <= k.k1; ++i)
        if (!cache.count({i, 0}))
            cache.emplace(std::make_pair(i, 0), uv_diff(cache.at({i - 1, 0}), 0));
    for (int j = 1; j <= k.k2; ++j)
        if (!cache.count({k.k1, j}))
            cache.emplace(std::make_pair(k.k1, j), uv_diff(cache.at({k.k1, j - 1}), 1));
    return cache.at({k.k1, k.k2});
}

Complex uv_eval(const UVPoly& a, Complex u, Complex v) {
    // Horner in u of Horner-in-v rows
    Complex acc{0.0, 0.0};
    for (int p = a.p_max; p >= 0; --p) {
        Complex row{0.0, 0.0};
        for (int q = a.q_max; q >= 0; --q) row = row * v + a.at(p, q);
        acc = acc * u + row;
    }
    return acc;
}

// --- derivative polynomials for rational_geom --------------------------------
//
// With w = 1/(1-z1*z2): dw/dz1 = z2 w^2, dw/dz2 = z1 w^2, so derivatives of
// F = w are polynomials in (z1, z2, w).

struct ZZWTerm {
    int p, q, s;
    double c;
};

std::vector<ZZWTerm> zzw_diff(const std::vector<ZZWTerm>& a, int axis) {
    std::map<std::tuple<int, int, int>, double> acc;
    for (const auto& t : a) {
        if (axis == 0) {
            if (t.p > 0) acc[{t.p - 1, t.q, t.s}] += double(t.p) * t.c;
            acc[{t.p, t.q + 1, t.s + 1}] += double(t.s) * t.c;
        } else {
            if (t.q > 0) acc[{t.p, t.q - 1, t.s}] += double(t.q) * t.c;
            acc[{t.p + 1, t.q, t.s + 1}] += double(t.s) * t.c;
        }
    }
    std::vector<ZZWTerm> r;
    for (const auto& [key, c] : acc)
        if (c != 0.0) r.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    return r;
}

const std::vector<ZZWTerm>& rational_geom_poly(const MultiIndex& k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<ZZWTerm>> cache;
    std::scoped_lock lock(mu);
    if (cache.empty())
        cache.emplace(std::make_pair(0, 0), std::vector<ZZWTerm>{{0, 0, 1, 1.0}});  // F = w
    for (int i = 1; i <= k.k1; ++i)
        if (!cache.count({i, 0}))
            cache.emplace(std::make_pair(i, 0), zzw_diff(cache.at({i - 1, 0}), 0));
    for (int j = 1; j <= k.k2; ++j)
        if (!cache.count({k.k1, j}))
            cache.emplace(std::make_pair(k.k1, j), zzw_diff(cache.at({k.k1, j - 1}), 1));
    return cache.at({k.k1, k.k2});
}

Complex cpow_int(Complex b, int e) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

double falling(int n, int j) {
    // n (n-1) ... (n-j+1)
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= double(n - i);
    return r;
}

}  // namespace

AnalyticFunction AnalyticFunction::poly(std::vector<PolyTerm> terms, std::string label) {
    AnalyticFunction f;
    f.family_ = Family::Poly;
    f.label_ = std::move(label);
    // canonical order, merged duplicates
    std::map<MultiIndex, Complex> merged;
    for (const auto& t : terms) merged[t.k] += t.c;
    for (const auto& [k, c] : merged)
        if (c != Complex{0.0, 0.0}) f.terms_.push_back({k, c});
    return f;
}

AnalyticFunction AnalyticFunction::constant(Complex c) {
    return poly({{{0, 0}, c}}, "const");
}

AnalyticFunction AnalyticFunction::exp_reciprocal() {
    AnalyticFunction f;
    f.family_ = Family::ExpReciprocal;
    f.label_ = "exp_reciprocal";
    return f;
}

AnalyticFunction AnalyticFunction::rational_geom() {
    AnalyticFunction f;
    f.family_ = Family::RationalGeom;
    f.label_ = "rational_geom";
    return f;
}

AnalyticFunction AnalyticFunction::exp_linear(Complex a, Complex b) {
    AnalyticFunction f;
    f.family_ = Family::ExpLinear;
    f.label_ = "exp_linear";
    f.params_[0] = a;
    f.params_[1] = b;
    return f;
}

AnalyticFunction AnalyticFunction::reciprocal_product(Complex a1, Complex a2) {
    if (std::abs(a1) <= 1.0 || std::abs(a2) <= 1.0)
        throw DomainViolation("reciprocal_product: poles must lie outside the closed bidisc");
    AnalyticFunction f;
    f.family_ = Family::ReciprocalProduct;
    f.label_ = "reciprocal_product";
    f.params_[0] = a1;
    f.params_[1] = a2;
    return f;
}

AnalyticFunction AnalyticFunction::black_box(Evaluator fn, std::string label) {
    AnalyticFunction f;
    f.family_ = Family::BlackBox;
    f.label_ = std::move(label);
    f.eval_ = std::move(fn);
    return f;
}

int AnalyticFunction::poly_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.k.order());
    return d;
}

Complex AnalyticFunction::eval(const BidiscPoint& z) const {
    switch (family_) {
        case Family::Poly: {
            Complex acc{0.0, 0.0};
            for (const auto& t : terms_)
                acc += t.c * cpow_int(z.z1, t.k.k1) * cpow_int(z.z2, t.k.k2);
            return acc;
        }
        case Family::ExpReciprocal:
            return std::exp(1.0 / ((1.0 - z.z1) * (1.0 - z.z2)));
        case Family::RationalGeom:
            return 1.0 / (1.0 - z.z1 * z.z2);
        case Family::ExpLinear:
            return std::exp(params_[0] * z.z1 + params_[1] * z.z2);
        case Family::ReciprocalProduct:
            return 1.0 / ((params_[0] - z.z1) * (params_[1] - z.z2));
        case Family::BlackBox:
            if (!eval_) throw EvaluatorFailure("black box has no evaluator");
            return eval_(z);
    }
    throw UnsupportedFamily("eval: unknown family");
}

Complex AnalyticFunction::derivative(const MultiIndex& k, const BidiscPoint& z) const {
    if (k.k1 == 0 && k.k2 == 0) return eval(z);
    switch (family_) {
        case Family::Poly: {
            Complex acc{0.0, 0.0};
            for (const auto& t : terms_) {
                if (t.k.k1 < k.k1 || t.k.k2 < k.k2) continue;
                double f = falling(t.k.k1, k.k1) * falling(t.k.k2, k.k2);
                acc += t.c * f * cpow_int(z.z1, t.k.k1 - k.k1) *
                       cpow_int(z.z2, t.k.k2 - k.k2);
            }
            return acc;
        }
        case Family::ExpReciprocal: {
            Complex u = 1.0 / (1.0 - z.z1);
            Complex v = 1.0 / (1.0 - z.z2);
            return std::exp(u * v) * uv_eval(exp_reciprocal_poly(k), u, v);
        }
        case Family::RationalGeom: {
            Complex w = 1.0 / (1.0 - z.z1 * z.z2);
            Complex acc{0.0, 0.0};
            for (const auto& t : rational_geom_poly(k))
                acc += t.c * cpow_int(z.z1, t.p) * cpow_int(z.z2, t.q) * cpow_int(w, t.s);
            return acc;
        }
        case Family::ExpLinear:
            return cpow_int(params_[0], k.k1) * cpow_int(params_[1], k.k2) * eval(z);
        case Family::ReciprocalProduct: {
            double f = std::tgamma(double(k.k1) + 1.0) * std::tgamma(double(k.k2) + 1.0);
            return f / (cpow_int(params_[0] - z.z1, k.k1 + 1) *
                        cpow_int(params_[1] - z.z2, k.k2 + 1));
        }
        case Family::BlackBox:
            throw UnsupportedFamily("black box functions have no derivative rule");
    }
    throw UnsupportedFamily("derivative: unknown family");
}

}  // namespace bindex
