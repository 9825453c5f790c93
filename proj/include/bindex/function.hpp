#pragma once

#include <functional>
#include <memory>

#include "bindex/domain.hpp"

// Function representations over the open bidisc.  ClosedForm families carry
// exact derivative rules, FiniteCoeffs is a polynomial given by its Taylor
// table at the origin, BlackBox only evaluates (derivatives of a black box
// go through Cauchy extraction in the coefficients module).

namespace bindex {

// polynomial as a sparse list of (index, coefficient)
struct PolyTerm {
    MultiIndex k;
    Complex c;
};

enum class Family {
    Poly,             // finite coefficient table at the origin
    ExpReciprocal,    // exp(1/((1-z1)(1-z2)))
    RationalGeom,     // 1/(1-z1*z2)
    ExpLinear,        // exp(a*z1 + b*z2)
    ReciprocalProduct,// 1/((a1-z1)(a2-z2)), |a_j| > 1
    BlackBox,
};

class AnalyticFunction {
public:
    using Evaluator = std::function<Complex(const BidiscPoint&)>;

    static AnalyticFunction poly(std::vector<PolyTerm> terms, std::string label = "poly");
    static AnalyticFunction constant(Complex c);
    static AnalyticFunction exp_reciprocal();
    static AnalyticFunction rational_geom();
    static AnalyticFunction exp_linear(Complex a, Complex b);
    static AnalyticFunction reciprocal_product(Complex a1, Complex a2);
    static AnalyticFunction black_box(Evaluator f, std::string label = "blackbox");

    Family family() const { return family_; }
    const std::string& label() const { return label_; }
    bool has_exact_derivatives() const { return family_ != Family::BlackBox; }
    bool is_polynomial() const { return family_ == Family::Poly; }
    const std::vector<PolyTerm>& poly_terms() const { return terms_; }
    int poly_degree() const;  // -1 for the zero polynomial
    Complex param(int i) const { return params_[i]; }

    Complex eval(const BidiscPoint& z) const;

    // F^(k1,k2)(z), exact; throws UnsupportedFamily for BlackBox
    Complex derivative(const MultiIndex& k, const BidiscPoint& z) const;

private:
    Family family_ = Family::Poly;
    std::string label_;
    std::vector<PolyTerm> terms_;   // Poly
    Complex params_[2] = {};        // ExpLinear / ReciprocalProduct
    Evaluator eval_;                // BlackBox
};

}  // namespace bindex
