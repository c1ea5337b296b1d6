#include "detzeta/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace detzeta {

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

void Petal::check() const {
    if (nu < 1) throw StructuralError("petal multiplicity nu must be >= 1");
    const double lo = M_PI / (2.0 * nu), hi = M_PI / nu;
    if (!(lo < theta && theta < theta_tilde && theta_tilde < hi))
        throw StructuralError("petal angles must satisfy pi/(2 nu) < theta < theta~ < pi/nu");
    if (!(0 < r && r < r_tilde))
        throw StructuralError("petal radii must satisfy 0 < r < r~");
    if (orientation != 1 && orientation != 2)
        throw StructuralError("petal orientation must be 1 or 2");
}

bool domain_contains(const Domain& d, Complex z) {
    if (std::holds_alternative<Disc>(d)) return std::get<Disc>(d).contains(z);
    return std::get<Petal>(d).contains(z);
}

bool domain_contains_image(const Domain& d, Complex z, double margin) {
    if (std::holds_alternative<Disc>(d))
        return std::get<Disc>(d).contains(z, margin);
    return std::get<Petal>(d).contains_tilde(z);
}

double domain_margin(const Domain& d, Complex z) {
    if (std::holds_alternative<Disc>(d)) return std::get<Disc>(d).interior_margin(z);
    const auto& p = std::get<Petal>(d);
    // Distance to the outer sector boundary; crude but monotone.
    const double rho = std::abs(z);
    if (rho == 0.0) return p.r_tilde;
    const double radial = p.r_tilde - rho;
    const double angular = (p.theta_tilde - std::abs(std::arg(z))) * rho;
    return std::min(radial, angular);
}

Complex domain_center(const Domain& d) {
    if (std::holds_alternative<Disc>(d)) return std::get<Disc>(d).center;
    // A petal has no natural center; use a point on the axis well inside.
    return Complex(std::get<Petal>(d).r * 0.5, 0.0);
}

std::pair<double, double> domain_real_interval(const Domain& d) {
    if (std::holds_alternative<Disc>(d)) {
        const auto& disc = std::get<Disc>(d);
        return {disc.center.real() - disc.radius, disc.center.real() + disc.radius};
    }
    return {0.0, std::get<Petal>(d).r};
}

std::vector<Complex> domain_boundary_samples(const Domain& d, int count) {
    std::vector<Complex> out;
    out.reserve(count);
    if (std::holds_alternative<Disc>(d)) {
        const auto& disc = std::get<Disc>(d);
        for (int k = 0; k < count; ++k) {
            const double t = 2.0 * M_PI * k / count;
            out.push_back(disc.center + disc.radius * Complex(std::cos(t), std::sin(t)));
        }
        return out;
    }
    // Petal boundary: the arc at rho = r plus the two edge rays.
    const auto& p = std::get<Petal>(d);
    const int arc = count / 2, ray = count - arc;
    for (int k = 0; k < arc; ++k) {
        const double a = -p.theta + 2.0 * p.theta * (k + 0.5) / arc;
        out.push_back(p.r * Complex(std::cos(a), std::sin(a)));
    }
    for (int k = 0; k < ray; ++k) {
        const double rho = p.r * (k + 1.0) / (ray + 1.0);
        const double a = (k % 2 == 0) ? p.theta : -p.theta;
        out.push_back(rho * Complex(std::cos(a), std::sin(a)));
    }
    return out;
}

std::vector<Complex> domain_interior_samples(const Domain& d, int per_axis) {
    std::vector<Complex> out;
    if (std::holds_alternative<Disc>(d)) {
        const auto& disc = std::get<Disc>(d);
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j) {
                const double x = -1.0 + 2.0 * (i + 0.5) / per_axis;
                const double y = -1.0 + 2.0 * (j + 0.5) / per_axis;
                if (x * x + y * y >= 0.96) continue;
                out.push_back(disc.center + disc.radius * Complex(x, y));
            }
        return out;
    }
    const auto& p = std::get<Petal>(d);
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j) {
            const double rho = p.r * (i + 0.5) / per_axis;
            const double a = -p.theta + 2.0 * p.theta * (j + 0.5) / per_axis;
            if (rho <= 1e-6) continue;
            out.push_back(rho * Complex(std::cos(a), std::sin(a)));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Symbols and transitions
// ---------------------------------------------------------------------------

bool SymbolSet::is_parabolic(int id) const {
    return std::find(s0.begin(), s0.end(), id) != s0.end();
}

void SymbolSet::check() const {
    if (s1.empty()) throw StructuralError("S1 must be nonempty");
    std::set<int> seen;
    for (int id : s0)
        if (!seen.insert(id).second)
            throw StructuralError("duplicate symbol id " + std::to_string(id));
    for (int id : s1)
        if (!seen.insert(id).second)
            throw StructuralError("S0 and S1 must be disjoint (id " +
                                  std::to_string(id) + ")");
    const int n = count();
    for (int id : seen)
        if (id < 0 || id >= n)
            throw StructuralError("symbol ids must be 0.." + std::to_string(n - 1));
}

TransitionMatrix::TransitionMatrix(std::vector<std::vector<int>> t) : t_(std::move(t)) {
    const std::size_t n = t_.size();
    for (const auto& row : t_)
        if (row.size() != n) throw StructuralError("transition matrix must be square");
}

bool TransitionMatrix::irreducible() const {
    const int n = size();
    if (n == 0) return false;
    auto reachable = [&](bool reverse) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                const bool edge = reverse ? at(v, u) : at(u, v);
                if (edge && !seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    if (!reachable(false) || !reachable(true)) return false;
    // No wandering states: every symbol has an outgoing and an incoming edge
    // (implied by strong connectivity for n > 1; check the loop for n == 1).
    if (n == 1) return at(0, 0);
    return true;
}

long long TransitionMatrix::power_trace(int m) const {
    const int n = size();
    std::vector<std::vector<long long>> acc(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc[i][j] = at(i, j) ? 1 : 0;
    auto mul = [&](const auto& a, const auto& b) {
        std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (!a[i][k]) continue;
                for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
            }
        return c;
    };
    auto result = acc;
    for (int p = 1; p < m; ++p) result = mul(result, acc);
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr += result[i][i];
    return tr;
}

// ---------------------------------------------------------------------------
// Block maps
// ---------------------------------------------------------------------------

namespace {

// Allocation-free Newton used on the hot pinning paths; mirrors the
// semantics of newton_solve_1d (derivative floor, residual acceptance).
template <typename F, typename DF>
Complex newton_fast(F&& g, DF&& dg, Complex seed, const SolveOptions& opts) {
    Complex z = seed;
    Complex fz = g(z);
    for (int it = 0; it <= opts.max_iter; ++it) {
        const Complex dz = dg(z);
        if (std::abs(dz) < 1e-14)
            throw DerivativeVanished("|g'| < 1e-14 at iterate " + format_point(z));
        if (std::abs(fz) <= opts.tol) return z;
        z -= opts.damping * fz / dz;
        fz = g(z);
    }
    throw NoConvergence("Newton failed, residual " + std::to_string(std::abs(fz)));
}

}  // namespace

const char* to_string(BlockKind k) {
    switch (k) {
        case BlockKind::Hyperbolic: return "H";
        case BlockKind::ParabolicPa: return "P.a";
        case BlockKind::ParabolicPb: return "P.b";
    }
    return "?";
}

BivariateSeries BlockMap::build_normal_form(int nu, const BivariateSeries& phi_tilde,
                                            int var) {
    // var = 2: phi_s(w1, z2) = z2 - z2^{1+nu} + z2^{2+nu} phi_tilde(w1, z2)
    // var = 1: phi_u(w1, z2) = w1 - w1^{1+nu} + w1^{2+nu} phi_tilde(w1, z2)
    const double R1 = phi_tilde.radius1(), R2 = phi_tilde.radius2();
    const int d1 = std::max(phi_tilde.degree1() + (var == 1 ? nu + 2 : 0), nu + 2);
    const int d2 = std::max(phi_tilde.degree2() + (var == 2 ? nu + 2 : 0), nu + 2);
    BivariateSeries lin =
        (var == 2) ? series_from_monomials({{0, 1, 1.0}, {0, 1 + nu, -1.0}}, 0, 0, R1, R2)
                   : series_from_monomials({{1, 0, 1.0}, {1 + nu, 0, -1.0}}, 0, 0, R1, R2);
    BivariateSeries mono =
        (var == 2) ? series_from_monomials({{0, 2 + nu, 1.0}}, 0, 0, R1, R2)
                   : series_from_monomials({{2 + nu, 0, 1.0}}, 0, 0, R1, R2);
    return BivariateSeries::add(lin, BivariateSeries::mul(mono, phi_tilde, d1, d2));
}

BlockMap BlockMap::hyperbolic(BivariateSeries f1, BivariateSeries f2,
                              double extension_margin) {
    BlockMap b;
    b.kind_ = BlockKind::Hyperbolic;
    b.extension_margin_ = extension_margin;
    b.f1_d1_ = f1.partial(1);
    b.f1_d2_ = f1.partial(2);
    b.f2_d1_ = f2.partial(1);
    b.f2_d2_ = f2.partial(2);
    b.f1_ = std::move(f1);
    b.f2_ = std::move(f2);
    return b;
}

BlockMap BlockMap::parabolic_pa(BivariateSeries f1, int nu, BivariateSeries phi_tilde,
                                double extension_margin) {
    if (nu < 1) throw StructuralError("parabolic block requires nu >= 1");
    BlockMap b;
    b.kind_ = BlockKind::ParabolicPa;
    b.nu_ = nu;
    b.extension_margin_ = extension_margin;
    b.f1_d1_ = f1.partial(1);
    b.f1_d2_ = f1.partial(2);
    b.f1_ = std::move(f1);
    b.normal_ = build_normal_form(nu, phi_tilde, 2);
    b.normal_d1_ = b.normal_->partial(1);
    b.normal_d2_ = b.normal_->partial(2);
    b.phi_tilde_ = std::move(phi_tilde);
    return b;
}

BlockMap BlockMap::parabolic_pb(BivariateSeries f2, int nu, BivariateSeries phi_tilde,
                                double extension_margin) {
    if (nu < 1) throw StructuralError("parabolic block requires nu >= 1");
    BlockMap b;
    b.kind_ = BlockKind::ParabolicPb;
    b.nu_ = nu;
    b.extension_margin_ = extension_margin;
    b.f2_d1_ = f2.partial(1);
    b.f2_d2_ = f2.partial(2);
    b.f2_ = std::move(f2);
    b.normal_ = build_normal_form(nu, phi_tilde, 1);
    b.normal_d1_ = b.normal_->partial(1);
    b.normal_d2_ = b.normal_->partial(2);
    b.phi_tilde_ = std::move(phi_tilde);
    return b;
}

Complex BlockMap::eval_f2(Complex w1, Complex w2) const {
    if (f2_) return f2_->eval(w1, w2);
    // (P.a): f^2(w1, .) inverts the exact phi_s(w1, .); solve phi_s = w2.
    const auto& phi = *normal_;
    const auto& dphi = *normal_d2_;
    return newton_fast([&](Complex z) { return phi.eval(w1, z) - w2; },
                       [&](Complex z) { return dphi.eval(w1, z); }, w2,
                       SolveOptions{1e-13, 60, 1.0});
}

Complex BlockMap::eval_f1(Complex w1, Complex w2) const {
    if (f1_) return f1_->eval(w1, w2);
    // (P.b): f^1(w1, w2) = phi_u(w1, f^2(w1, w2)).
    return normal_->eval(w1, eval_f2(w1, w2));
}

Complex2 BlockMap::map_point(const Complex2& x) const {
    return {eval_f1(x.first, x.second), eval_f2(x.first, x.second)};
}

std::array<Complex, 4> BlockMap::jacobian(Complex w1, Complex w2) const {
    switch (kind_) {
        case BlockKind::Hyperbolic:
            return {f1_d1_->eval(w1, w2), f1_d2_->eval(w1, w2), f2_d1_->eval(w1, w2),
                    f2_d2_->eval(w1, w2)};
        case BlockKind::ParabolicPa: {
            // Implicit partials of f^2 through phi_s(w1, f^2(w1,w2)) = w2.
            const Complex z2 = eval_f2(w1, w2);
            const Complex ds1 = normal_d1_->eval(w1, z2);
            const Complex ds2 = normal_d2_->eval(w1, z2);
            const Complex d1f2 = -ds1 / ds2;
            const Complex d2f2 = 1.0 / ds2;
            return {f1_d1_->eval(w1, w2), f1_d2_->eval(w1, w2), d1f2, d2f2};
        }
        case BlockKind::ParabolicPb: {
            // f^1 = phi_u(w1, f^2); chain rule with the exact phi_u series.
            const Complex z2 = f2_->eval(w1, w2);
            const Complex du1 = normal_d1_->eval(w1, z2);
            const Complex du2 = normal_d2_->eval(w1, z2);
            const Complex d1f2 = f2_d1_->eval(w1, w2);
            const Complex d2f2 = f2_d2_->eval(w1, w2);
            return {du1 + du2 * d1f2, du2 * d2f2, d1f2, d2f2};
        }
    }
    throw DomainError("unreachable block kind");
}

Complex BlockMap::phi_s(Complex w1, Complex z2, Complex seed_center,
                        const SolveOptions& opts) const {
    if (kind_ == BlockKind::ParabolicPa) return normal_->eval(w1, z2);
    const auto& f2 = *f2_;
    const auto& d2 = *f2_d2_;
    // Seed at the linearization around the source-domain center.
    Complex seed = seed_center;
    const Complex slope = d2.eval(w1, seed_center);
    if (std::abs(slope) > 1e-12)
        seed = seed_center + (z2 - f2.eval(w1, seed_center)) / slope;
    try {
        const Complex root =
            newton_fast([&](Complex z) { return f2.eval_unchecked(w1, z) - z2; },
                        [&](Complex z) { return d2.eval_unchecked(w1, z); }, seed, opts);
        if (!f2.in_domain(w1, root))
            throw DomainError("solution outside the series validity domain");
        return root;
    } catch (const Error& e) {
        throw SolveError("partial inverse solve failed at w1=" + format_point(w1) +
                         ", z2=" + format_point(z2) + ": " + e.what());
    }
}

Complex BlockMap::dphi_s_d2(Complex w1, Complex z2, Complex seed_center,
                            const SolveOptions& opts) const {
    if (kind_ == BlockKind::ParabolicPa) return normal_d2_->eval(w1, z2);
    const Complex w2 = phi_s(w1, z2, seed_center, opts);
    return 1.0 / f2_d2_->eval(w1, w2);
}

Complex BlockMap::dphi_s_d1(Complex w1, Complex z2, Complex seed_center,
                            const SolveOptions& opts) const {
    if (kind_ == BlockKind::ParabolicPa) return normal_d1_->eval(w1, z2);
    const Complex w2 = phi_s(w1, z2, seed_center, opts);
    return -f2_d1_->eval(w1, w2) / f2_d2_->eval(w1, w2);
}

Complex BlockMap::phi_u(Complex w1, Complex z2, Complex seed_center,
                        const SolveOptions& opts) const {
    if (kind_ == BlockKind::ParabolicPb) return normal_->eval(w1, z2);
    return eval_f1(w1, phi_s(w1, z2, seed_center, opts));
}

Complex BlockMap::phi_u_inverse(Complex z1, Complex z2, const SolveOptions& opts) const {
    if (kind_ != BlockKind::ParabolicPb)
        throw DomainError("phi_u_inverse is defined for (P.b) blocks only");
    const auto& phi = *normal_;
    const auto& dphi = *normal_d1_;
    try {
        return newton_fast([&](Complex w) { return phi.eval(w, z2) - z1; },
                           [&](Complex w) { return dphi.eval(w, z2); }, z1, opts);
    } catch (const Error& e) {
        throw InverseFailure("phi_u inversion failed at z1=" + format_point(z1) +
                             ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// The model
// ---------------------------------------------------------------------------

SymbolicModel::SymbolicModel(SymbolSet symbols, TransitionMatrix transitions,
                             std::vector<DomainPair> domains,
                             std::map<std::pair<int, int>, BlockMap> blocks,
                             std::vector<ContourSpec> contours, std::string name)
    : symbols_(std::move(symbols)),
      transitions_(std::move(transitions)),
      domains_(std::move(domains)),
      blocks_(std::move(blocks)),
      contours_(std::move(contours)),
      name_(std::move(name)) {
    check_structure();
}

void SymbolicModel::check_structure() const {
    symbols_.check();
    const int n = symbols_.count();
    if (transitions_.size() != n)
        throw StructuralError("transition matrix size does not match symbol count");
    if (static_cast<int>(domains_.size()) != n)
        throw StructuralError("domain list size does not match symbol count");
    if (static_cast<int>(contours_.size()) != n)
        throw StructuralError("contour list size does not match symbol count");
    for (int i : symbols_.s0)
        for (int j : symbols_.s0)
            if (transitions_.at(i, j) != (i == j))
                throw StructuralError("S0 x S0 transitions must be exactly the diagonal");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (transitions_.at(i, j) && blocks_.find({i, j}) == blocks_.end())
                throw StructuralError("missing block map for edge (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
    for (const auto& [edge, block] : blocks_) {
        const auto [i, j] = edge;
        if (!transitions_.at(i, j))
            throw StructuralError("block map provided for a non-edge (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        const bool self_parabolic = symbols_.is_parabolic(i) && i == j;
        if (self_parabolic && block.kind() == BlockKind::Hyperbolic)
            throw StructuralError("parabolic self-edge must carry a parabolic block");
        if (!self_parabolic && block.kind() != BlockKind::Hyperbolic)
            throw StructuralError("parabolic blocks are allowed on S0 self-edges only");
    }
    for (int k = 0; k < n; ++k) {
        const auto& pair = domains_[k];
        const bool parab = symbols_.is_parabolic(k);
        const bool petal1 = std::holds_alternative<Petal>(pair.d1);
        const bool petal2 = std::holds_alternative<Petal>(pair.d2);
        if (!parab && (petal1 || petal2))
            throw StructuralError("hyperbolic symbols must use disc domains");
        if (parab) {
            if (petal1 == petal2)
                throw StructuralError("parabolic symbol needs exactly one petal domain");
            const auto& block = blocks_.at({k, k});
            if (petal2 && block.kind() != BlockKind::ParabolicPa)
                throw StructuralError("second-coordinate petal requires a (P.a) block");
            if (petal1 && block.kind() != BlockKind::ParabolicPb)
                throw StructuralError("first-coordinate petal requires a (P.b) block");
            const auto& petal = petal1 ? std::get<Petal>(pair.d1) : std::get<Petal>(pair.d2);
            petal.check();
            if (petal.orientation != (petal1 ? 1 : 2))
                throw StructuralError("petal orientation tag inconsistent with position");
        }
    }
    if (!transitions_.irreducible())
        throw StructuralError("transition matrix must be irreducible with no wandering states");
}

const BlockMap& SymbolicModel::block(int i, int j) const {
    auto it = blocks_.find({i, j});
    if (it == blocks_.end())
        throw StructuralError("no block for edge (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    return it->second;
}

std::vector<std::pair<int, int>> SymbolicModel::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [edge, block] : blocks_) out.push_back(edge);
    return out;
}

bool SymbolicModel::is_admissible(const Word& word) const {
    if (word.empty()) return false;
    for (int s : word)
        if (s < 0 || s >= num_symbols()) return false;
    for (std::size_t k = 0; k + 1 < word.size(); ++k)
        if (!transitions_.at(word[k], word[k + 1])) return false;
    return true;
}

bool SymbolicModel::all_in_s0(const Word& word) const {
    return std::all_of(word.begin(), word.end(),
                       [&](int s) { return symbols_.is_parabolic(s); });
}

}  // namespace detzeta
