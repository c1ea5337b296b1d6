#pragma once

#include <array>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "detzeta/series.hpp"
#include "detzeta/solve.hpp"

namespace detzeta {

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

struct Disc {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    bool contains(Complex z, double margin = 0.0) const {
        return std::abs(z - center) <= radius - margin;
    }
    // Signed distance from z to the boundary, positive inside.
    double interior_margin(Complex z) const { return radius - std::abs(z - center); }
};

// Circular-sector petal at the origin: { rho e^{i phi} : 0 < rho < r, |phi| < theta }.
// The (theta_tilde, r_tilde) pair bounds the enclosing sector the domain is
// guaranteed to live in; algorithms sample the inner sector and verify images
// against the outer one.
struct Petal {
    int nu = 1;
    double theta = 0.0;
    double r = 0.0;
    double theta_tilde = 0.0;
    double r_tilde = 0.0;
    int orientation = 2;  // 1: first coordinate is the petal, 2: second

    bool contains(Complex z) const {
        const double rho = std::abs(z);
        if (rho <= 0.0 || rho >= r) return false;
        return std::abs(std::arg(z)) < theta;
    }
    bool contains_tilde(Complex z) const {
        const double rho = std::abs(z);
        if (rho < 0.0 || rho > r_tilde) return false;
        if (rho == 0.0) return true;  // images may reach the fixed point itself
        return std::abs(std::arg(z)) <= theta_tilde;
    }
    // Membership in the reflected (attracting) petal e^{i pi/nu} * petal.
    bool contains_reflected(Complex z) const {
        const double rho = std::abs(z);
        if (rho <= 0.0 || rho >= r) return false;
        double a = std::arg(z) - M_PI / nu;
        while (a > M_PI) a -= 2 * M_PI;
        while (a < -M_PI) a += 2 * M_PI;
        return std::abs(a) < theta;
    }
    void check() const;
};

using Domain = std::variant<Disc, Petal>;

bool domain_contains(const Domain& d, Complex z);
// Interior check used for image inclusions: discs use a strict margin, petals
// accept the enclosing tilde sector (with the origin allowed, since parabolic
// images may converge to the fixed point).
bool domain_contains_image(const Domain& d, Complex z, double margin = 0.0);
double domain_margin(const Domain& d, Complex z);
Complex domain_center(const Domain& d);
// Real trace of the domain: [lo, hi] with lo < hi.
std::pair<double, double> domain_real_interval(const Domain& d);
// Boundary respectively interior sample points (petals sample the inner sector).
std::vector<Complex> domain_boundary_samples(const Domain& d, int count);
std::vector<Complex> domain_interior_samples(const Domain& d, int per_axis);

// ---------------------------------------------------------------------------
// Symbols and transitions
// ---------------------------------------------------------------------------

struct SymbolSet {
    std::vector<int> s0;  // parabolic blocks
    std::vector<int> s1;  // hyperbolic blocks

    int count() const { return static_cast<int>(s0.size() + s1.size()); }
    bool is_parabolic(int id) const;
    void check() const;  // throws StructuralError
};

class TransitionMatrix {
public:
    TransitionMatrix() = default;
    explicit TransitionMatrix(std::vector<std::vector<int>> t);

    bool at(int i, int j) const { return t_[i][j] != 0; }
    int size() const { return static_cast<int>(t_.size()); }
    bool irreducible() const;  // strongly connected, no wandering states
    // Integer trace of the m-th power (counts cyclic words of length m).
    long long power_trace(int m) const;
    const std::vector<std::vector<int>>& raw() const { return t_; }

private:
    std::vector<std::vector<int>> t_;
};

// ---------------------------------------------------------------------------
// Block maps
// ---------------------------------------------------------------------------

enum class BlockKind { Hyperbolic, ParabolicPa, ParabolicPb };

const char* to_string(BlockKind k);

// One analytic branch f_{ij} : D^1_i x D^2_i -> D^1_j x C of the symbolic map.
//
// Hyperbolic blocks store both components as series. Parabolic self-blocks
// store their normal-form data instead: a (P.a) block keeps f^1 and the series
// phi_tilde entering
//     phi_s(w1, z2) = z2 - z2^{1+nu} + z2^{2+nu} phi_tilde(w1, z2),
// the partial inverse being exact by construction and f^2 recovered by Newton
// inversion of phi_s; a (P.b) block keeps f^2 and the phi_tilde of
//     phi_u(w1, z2) = w1 - w1^{1+nu} + w1^{2+nu} phi_tilde(w1, z2),
// with f^1(w1,w2) = phi_u(w1, f^2(w1,w2)).
class BlockMap {
public:
    static BlockMap hyperbolic(BivariateSeries f1, BivariateSeries f2,
                               double extension_margin);
    static BlockMap parabolic_pa(BivariateSeries f1, int nu, BivariateSeries phi_tilde,
                                 double extension_margin);
    static BlockMap parabolic_pb(BivariateSeries f2, int nu, BivariateSeries phi_tilde,
                                 double extension_margin);

    BlockKind kind() const { return kind_; }
    int nu() const { return nu_; }
    double extension_margin() const { return extension_margin_; }
    const BivariateSeries& phi_tilde() const { return phi_tilde_; }
    const std::optional<BivariateSeries>& f1_series() const { return f1_; }
    const std::optional<BivariateSeries>& f2_series() const { return f2_; }
    // Normal-form pinning series (P.a: phi_s, P.b: phi_u).
    const std::optional<BivariateSeries>& normal_form_series() const { return normal_; }

    Complex eval_f1(Complex w1, Complex w2) const;
    Complex eval_f2(Complex w1, Complex w2) const;
    Complex2 map_point(const Complex2& x) const;
    // Row-major [d1f1, d2f1, d1f2, d2f2].
    std::array<Complex, 4> jacobian(Complex w1, Complex w2) const;

    // Partial inverse phi_s(w1, z2): unique solution of f^2(w1, .) = z2.
    // seed_center is the w2-center used for the Newton linearization seed.
    Complex phi_s(Complex w1, Complex z2, Complex seed_center,
                  const SolveOptions& opts = {}) const;
    Complex dphi_s_d1(Complex w1, Complex z2, Complex seed_center,
                      const SolveOptions& opts = {}) const;
    Complex dphi_s_d2(Complex w1, Complex z2, Complex seed_center,
                      const SolveOptions& opts = {}) const;
    Complex phi_u(Complex w1, Complex z2, Complex seed_center,
                  const SolveOptions& opts = {}) const;

    // (P.b) only: w1 with phi_u(w1, z2) = z1, Newton seeded at z1.
    Complex phi_u_inverse(Complex z1, Complex z2, const SolveOptions& opts = {}) const;

private:
    BlockKind kind_ = BlockKind::Hyperbolic;
    int nu_ = 0;
    double extension_margin_ = 0.0;
    std::optional<BivariateSeries> f1_;
    std::optional<BivariateSeries> f2_;
    BivariateSeries phi_tilde_;
    std::optional<BivariateSeries> normal_;   // phi_s (P.a) or phi_u (P.b)
    std::optional<BivariateSeries> normal_d1_;
    std::optional<BivariateSeries> normal_d2_;
    std::optional<BivariateSeries> f1_d1_, f1_d2_, f2_d1_, f2_d2_;

    static BivariateSeries build_normal_form(int nu, const BivariateSeries& phi_tilde,
                                             int var);
};

// ---------------------------------------------------------------------------
// Contours
// ---------------------------------------------------------------------------

struct Circle {
    Complex center{0.0, 0.0};
    double radius = 1.0;

    Complex node(int k, int n) const {
        const double t = 2.0 * M_PI * k / n;
        return center + radius * Complex(std::cos(t), std::sin(t));
    }
    // Quadrature weight dw/(2 pi i) for the trapezoid rule on the circle.
    Complex weight(int k, int n) const {
        return (node(k, n) - center) / static_cast<double>(n);
    }
};

struct ContourSpec {
    Circle contour1;  // w1 integral: boundary of D^1_k, or Gamma^1_k for (P.b)
    Circle contour2;  // w2 integral: boundary of D^2_k, or Gamma^2_k for (P.a)
    int nodes = 32;
};

// ---------------------------------------------------------------------------
// The model
// ---------------------------------------------------------------------------

struct DomainPair {
    Domain d1;
    Domain d2;
};

using Word = std::vector<int>;

class SymbolicModel {
public:
    SymbolicModel(SymbolSet symbols, TransitionMatrix transitions,
                  std::vector<DomainPair> domains,
                  std::map<std::pair<int, int>, BlockMap> blocks,
                  std::vector<ContourSpec> contours, std::string name = "");

    const SymbolSet& symbols() const { return symbols_; }
    const TransitionMatrix& transitions() const { return transitions_; }
    int num_symbols() const { return transitions_.size(); }
    bool is_parabolic(int id) const { return symbols_.is_parabolic(id); }
    const DomainPair& domains(int id) const { return domains_.at(id); }
    const ContourSpec& contour(int id) const { return contours_.at(id); }
    const BlockMap& block(int i, int j) const;
    bool has_edge(int i, int j) const { return transitions_.at(i, j); }
    std::vector<std::pair<int, int>> edges() const;
    const std::string& name() const { return name_; }

    bool is_admissible(const Word& word) const;
    bool all_in_s0(const Word& word) const;
    Complex domain_center1(int id) const { return domain_center(domains_.at(id).d1); }
    Complex domain_center2(int id) const { return domain_center(domains_.at(id).d2); }

private:
    SymbolSet symbols_;
    TransitionMatrix transitions_;
    std::vector<DomainPair> domains_;
    std::map<std::pair<int, int>, BlockMap> blocks_;
    std::vector<ContourSpec> contours_;
    std::string name_;

    void check_structure() const;  // throws StructuralError
};

}  // namespace detzeta
