#pragma once

#include <complex>
#include <vector>

#include "detzeta/errors.hpp"

namespace detzeta {

using Complex = std::complex<double>;

// Truncated bivariate power series with real coefficients,
//
//   s(w1, w2) = sum_{a,b} coeff(a,b) * (w1 - c1)^a * (w2 - c2)^b.
//
// Centers are real so that real arguments produce exactly real values.
// Evaluation outside the validity radii raises DomainError instead of
// silently extrapolating.
class BivariateSeries {
public:
    BivariateSeries() = default;
    BivariateSeries(std::vector<std::vector<double>> coeffs, double c1, double c2,
                    double r1, double r2);

    // coeffs[a][b] multiplies (w1-c1)^a (w2-c2)^b; rows may be ragged on input
    // and are normalized to a rectangular table.
    static BivariateSeries zero(double c1 = 0.0, double c2 = 0.0, double r1 = 1.0,
                                double r2 = 1.0);
    static BivariateSeries constant(double value, double c1 = 0.0, double c2 = 0.0,
                                    double r1 = 1.0, double r2 = 1.0);

    Complex eval(Complex w1, Complex w2) const;
    // Evaluation without the validity-radius guard, for callers that manage
    // their own domains (quadrature nodes sit exactly on validity boundaries).
    Complex eval_unchecked(Complex w1, Complex w2) const;

    // Exact term-by-term partial derivative, which = 1 or 2.
    BivariateSeries partial(int which) const;

    double coeff(int a, int b) const;
    int degree1() const { return static_cast<int>(coeffs_.size()) - 1; }
    int degree2() const;

    double center1() const { return c1_; }
    double center2() const { return c2_; }
    double radius1() const { return r1_; }
    double radius2() const { return r2_; }
    const std::vector<std::vector<double>>& table() const { return coeffs_; }

    bool in_domain(Complex w1, Complex w2) const;

    // Truncated algebra. All operands must share centers; the result keeps the
    // smaller validity radii and is truncated to the given maximum degrees.
    BivariateSeries scaled(double factor) const;
    static BivariateSeries add(const BivariateSeries& a, const BivariateSeries& b);
    static BivariateSeries sub(const BivariateSeries& a, const BivariateSeries& b);
    static BivariateSeries mul(const BivariateSeries& a, const BivariateSeries& b,
                               int max_deg1, int max_deg2);

    // 1/s for s with nonzero constant term, truncated; centers must be (0,0).
    static BivariateSeries reciprocal(const BivariateSeries& s, int max_deg1,
                                      int max_deg2);

    // Quotient s / w_var for a series vanishing identically at w_var = 0
    // (all coefficients of degree 0 in that variable below `tol`); shifts the
    // corresponding degree down by one. Centers must be (0,0).
    static BivariateSeries divide_by_variable(const BivariateSeries& s, int var,
                                              double tol);

    // Substitute u(w1,w2) for the first variable of s: s(u(w1,w2), w2).
    // All centers must be (0,0) and u must have no constant term.
    static BivariateSeries compose_w1(const BivariateSeries& s, const BivariateSeries& u,
                                      int max_deg1, int max_deg2);

    double max_abs_coeff_at_degree1(int a) const;

private:
    std::vector<std::vector<double>> coeffs_;  // [deg_w1][deg_w2]
    double c1_ = 0.0, c2_ = 0.0;
    double r1_ = 1.0, r2_ = 1.0;

    void normalize();
};

// Convenience builder: series from monomial list {(a, b, coeff)}.
BivariateSeries series_from_monomials(
    const std::vector<std::tuple<int, int, double>>& monomials, double c1, double c2,
    double r1, double r2);

}  // namespace detzeta
