#include "detzeta/series.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace detzeta {

namespace {
constexpr double kDomainSlack = 1e-9;  // absolute slack for boundary evaluation
}

BivariateSeries::BivariateSeries(std::vector<std::vector<double>> coeffs, double c1,
                                 double c2, double r1, double r2)
    : coeffs_(std::move(coeffs)), c1_(c1), c2_(c2), r1_(r1), r2_(r2) {
    if (r1_ <= 0 || r2_ <= 0) throw DomainError("validity radii must be positive");
    normalize();
}

void BivariateSeries::normalize() {
    if (coeffs_.empty()) coeffs_.push_back({0.0});
    std::size_t width = 1;
    for (const auto& row : coeffs_) width = std::max(width, row.size());
    for (auto& row : coeffs_) row.resize(width, 0.0);
}

BivariateSeries BivariateSeries::zero(double c1, double c2, double r1, double r2) {
    return BivariateSeries({{0.0}}, c1, c2, r1, r2);
}

BivariateSeries BivariateSeries::constant(double value, double c1, double c2, double r1,
                                          double r2) {
    return BivariateSeries({{value}}, c1, c2, r1, r2);
}

bool BivariateSeries::in_domain(Complex w1, Complex w2) const {
    return std::abs(w1 - Complex(c1_, 0.0)) <= r1_ + kDomainSlack &&
           std::abs(w2 - Complex(c2_, 0.0)) <= r2_ + kDomainSlack;
}

Complex BivariateSeries::eval(Complex w1, Complex w2) const {
    if (!in_domain(w1, w2))
        throw DomainError("series evaluated outside validity radii at " +
                          format_point(w1) + ", " + format_point(w2));
    return eval_unchecked(w1, w2);
}

Complex BivariateSeries::eval_unchecked(Complex w1, Complex w2) const {
    const Complex x = w1 - Complex(c1_, 0.0);
    const Complex y = w2 - Complex(c2_, 0.0);
    // Horner in w1 with inner Horner in w2.
    Complex acc(0.0, 0.0);
    for (int a = static_cast<int>(coeffs_.size()) - 1; a >= 0; --a) {
        const auto& row = coeffs_[a];
        Complex inner(0.0, 0.0);
        for (int b = static_cast<int>(row.size()) - 1; b >= 0; --b)
            inner = inner * y + Complex(row[b], 0.0);
        acc = acc * x + inner;
    }
    return acc;
}

BivariateSeries BivariateSeries::partial(int which) const {
    if (which != 1 && which != 2) throw DomainError("partial index must be 1 or 2");
    const int d1 = degree1();
    const int d2 = degree2();
    std::vector<std::vector<double>> out;
    if (which == 1) {
        out.assign(std::max(d1, 1), std::vector<double>(d2 + 1, 0.0));
        for (int a = 1; a <= d1; ++a)
            for (int b = 0; b <= d2; ++b) out[a - 1][b] = a * coeffs_[a][b];
    } else {
        out.assign(d1 + 1, std::vector<double>(std::max(d2, 1), 0.0));
        for (int a = 0; a <= d1; ++a)
            for (int b = 1; b <= d2; ++b) out[a][b - 1] = b * coeffs_[a][b];
    }
    return BivariateSeries(std::move(out), c1_, c2_, r1_, r2_);
}

double BivariateSeries::coeff(int a, int b) const {
    if (a < 0 || b < 0) return 0.0;
    if (a >= static_cast<int>(coeffs_.size())) return 0.0;
    if (b >= static_cast<int>(coeffs_[a].size())) return 0.0;
    return coeffs_[a][b];
}

int BivariateSeries::degree2() const {
    return coeffs_.empty() ? 0 : static_cast<int>(coeffs_[0].size()) - 1;
}

double BivariateSeries::max_abs_coeff_at_degree1(int a) const {
    double m = 0.0;
    if (a < 0 || a >= static_cast<int>(coeffs_.size())) return 0.0;
    for (double v : coeffs_[a]) m = std::max(m, std::abs(v));
    return m;
}

BivariateSeries BivariateSeries::scaled(double factor) const {
    auto out = coeffs_;
    for (auto& row : out)
        for (double& v : row) v *= factor;
    return BivariateSeries(std::move(out), c1_, c2_, r1_, r2_);
}

namespace {
void require_same_centers(const BivariateSeries& a, const BivariateSeries& b) {
    if (a.center1() != b.center1() || a.center2() != b.center2())
        throw DomainError("series algebra requires matching centers");
}
}  // namespace

BivariateSeries BivariateSeries::add(const BivariateSeries& a, const BivariateSeries& b) {
    require_same_centers(a, b);
    const int d1 = std::max(a.degree1(), b.degree1());
    const int d2 = std::max(a.degree2(), b.degree2());
    std::vector<std::vector<double>> out(d1 + 1, std::vector<double>(d2 + 1, 0.0));
    for (int i = 0; i <= d1; ++i)
        for (int j = 0; j <= d2; ++j) out[i][j] = a.coeff(i, j) + b.coeff(i, j);
    return BivariateSeries(std::move(out), a.center1(), a.center2(),
                           std::min(a.radius1(), b.radius1()),
                           std::min(a.radius2(), b.radius2()));
}

BivariateSeries BivariateSeries::sub(const BivariateSeries& a, const BivariateSeries& b) {
    return add(a, b.scaled(-1.0));
}

BivariateSeries BivariateSeries::mul(const BivariateSeries& a, const BivariateSeries& b,
                                     int max_deg1, int max_deg2) {
    require_same_centers(a, b);
    std::vector<std::vector<double>> out(max_deg1 + 1,
                                         std::vector<double>(max_deg2 + 1, 0.0));
    for (int i = 0; i <= std::min(a.degree1(), max_deg1); ++i)
        for (int j = 0; j <= std::min(a.degree2(), max_deg2); ++j) {
            const double av = a.coeff(i, j);
            if (av == 0.0) continue;
            for (int k = 0; i + k <= max_deg1 && k <= b.degree1(); ++k)
                for (int l = 0; j + l <= max_deg2 && l <= b.degree2(); ++l)
                    out[i + k][j + l] += av * b.coeff(k, l);
        }
    return BivariateSeries(std::move(out), a.center1(), a.center2(),
                           std::min(a.radius1(), b.radius1()),
                           std::min(a.radius2(), b.radius2()));
}

BivariateSeries BivariateSeries::reciprocal(const BivariateSeries& s, int max_deg1,
                                            int max_deg2) {
    if (s.center1() != 0.0 || s.center2() != 0.0)
        throw DomainError("reciprocal requires centers at the origin");
    const double g0 = s.coeff(0, 0);
    if (std::abs(g0) < 1e-14)
        throw SingularityNotRemovable("reciprocal of series with vanishing constant term");
    // s = g0 (1 - t) with t of positive valuation: 1/s = (1/g0) sum t^m.
    BivariateSeries t = sub(constant(1.0, 0, 0, s.radius1(), s.radius2()),
                            s.scaled(1.0 / g0));
    BivariateSeries acc = constant(1.0, 0, 0, s.radius1(), s.radius2());
    BivariateSeries power = constant(1.0, 0, 0, s.radius1(), s.radius2());
    const int mmax = max_deg1 + max_deg2;
    for (int m = 1; m <= mmax; ++m) {
        power = mul(power, t, max_deg1, max_deg2);
        acc = add(acc, power);
    }
    return acc.scaled(1.0 / g0);
}

BivariateSeries BivariateSeries::divide_by_variable(const BivariateSeries& s, int var,
                                                    double tol) {
    if (s.center1() != 0.0 || s.center2() != 0.0)
        throw DomainError("divide_by_variable requires centers at the origin");
    const int d1 = s.degree1();
    const int d2 = s.degree2();
    if (var == 2) {
        for (int a = 0; a <= d1; ++a)
            if (std::abs(s.coeff(a, 0)) > tol)
                throw SingularityNotRemovable(
                    "series does not vanish at w2=0; constant term " +
                    std::to_string(s.coeff(a, 0)));
        std::vector<std::vector<double>> out(d1 + 1,
                                             std::vector<double>(std::max(d2, 1), 0.0));
        for (int a = 0; a <= d1; ++a)
            for (int b = 1; b <= d2; ++b) out[a][b - 1] = s.coeff(a, b);
        return BivariateSeries(std::move(out), 0, 0, s.radius1(), s.radius2());
    }
    if (var == 1) {
        for (int b = 0; b <= d2; ++b)
            if (std::abs(s.coeff(0, b)) > tol)
                throw SingularityNotRemovable(
                    "series does not vanish at w1=0; constant term " +
                    std::to_string(s.coeff(0, b)));
        std::vector<std::vector<double>> out(std::max(d1, 1),
                                             std::vector<double>(d2 + 1, 0.0));
        for (int a = 1; a <= d1; ++a)
            for (int b = 0; b <= d2; ++b) out[a - 1][b] = s.coeff(a, b);
        return BivariateSeries(std::move(out), 0, 0, s.radius1(), s.radius2());
    }
    throw DomainError("variable index must be 1 or 2");
}

BivariateSeries BivariateSeries::compose_w1(const BivariateSeries& s,
                                            const BivariateSeries& u, int max_deg1,
                                            int max_deg2) {
    if (s.center1() != 0.0 || s.center2() != 0.0 || u.center1() != 0.0 ||
        u.center2() != 0.0)
        throw DomainError("compose_w1 requires centers at the origin");
    if (std::abs(u.coeff(0, 0)) > 1e-14)
        throw DomainError("compose_w1 requires the substituted series to vanish at 0");
    // Horner in the first variable of s: result = sum_a row_a(w2) * u^a.
    BivariateSeries result = zero(0, 0, s.radius1(), s.radius2());
    for (int a = s.degree1(); a >= 0; --a) {
        std::vector<std::vector<double>> row(1, std::vector<double>(s.degree2() + 1));
        for (int b = 0; b <= s.degree2(); ++b) row[0][b] = s.coeff(a, b);
        BivariateSeries row_series(std::move(row), 0, 0, s.radius1(), s.radius2());
        result = add(mul(result, u, max_deg1, max_deg2), row_series);
    }
    return result;
}

BivariateSeries series_from_monomials(
    const std::vector<std::tuple<int, int, double>>& monomials, double c1, double c2,
    double r1, double r2) {
    int d1 = 0, d2 = 0;
    for (const auto& [a, b, v] : monomials) {
        d1 = std::max(d1, a);
        d2 = std::max(d2, b);
    }
    std::vector<std::vector<double>> table(d1 + 1, std::vector<double>(d2 + 1, 0.0));
    for (const auto& [a, b, v] : monomials) table[a][b] += v;
    return BivariateSeries(std::move(table), c1, c2, r1, r2);
}

}  // namespace detzeta
