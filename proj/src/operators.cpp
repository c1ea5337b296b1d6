#include "detzeta/operators.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace detzeta {

namespace {
constexpr double kDenominatorFloor = 1e-8;

std::vector<Complex> circle_nodes(const Circle& c, int n) {
    std::vector<Complex> out(n);
    for (int k = 0; k < n; ++k) out[k] = c.node(k, n);
    return out;
}
std::vector<Complex> circle_weights(const Circle& c, int n) {
    std::vector<Complex> out(n);
    for (int k = 0; k < n; ++k) out[k] = c.weight(k, n);
    return out;
}
}  // namespace

NodeGeometry make_node_geometry(const SymbolicModel& model, int symbol,
                                int nodes_override) {
    const ContourSpec& spec = model.contour(symbol);
    const int n = nodes_override > 0 ? nodes_override : spec.nodes;
    NodeGeometry g;
    g.symbol = symbol;
    g.nodes1 = circle_nodes(spec.contour1, n);
    g.weights1 = circle_weights(spec.contour1, n);
    g.nodes2 = circle_nodes(spec.contour2, n);
    g.weights2 = circle_weights(spec.contour2, n);
    return g;
}

bool same_geometry(const NodeGeometry& a, const NodeGeometry& b, double tol) {
    if (a.symbol != b.symbol) return false;
    if (a.nodes1.size() != b.nodes1.size() || a.nodes2.size() != b.nodes2.size())
        return false;
    for (std::size_t i = 0; i < a.nodes1.size(); ++i)
        if (std::abs(a.nodes1[i] - b.nodes1[i]) > tol) return false;
    for (std::size_t i = 0; i < a.nodes2.size(); ++i)
        if (std::abs(a.nodes2[i] - b.nodes2[i]) > tol) return false;
    return true;
}

ContourCheck validate_contour(const SymbolicModel& model, int symbol,
                              int grid_density) {
    ContourCheck check;
    check.symbol = symbol;
    if (!model.is_parabolic(symbol)) {
        check.clearance = std::numeric_limits<double>::infinity();
        check.enclosed = true;
        return check;
    }
    const BlockMap& self = model.block(symbol, symbol);
    const ContourSpec& spec = model.contour(symbol);
    const SolveOptions opts{1e-12, 80, 1.0};

    // Sample the compact set of incoming images.
    std::vector<Complex> cloud;
    if (self.kind() == BlockKind::ParabolicPa) {
        // K^2_k: union over hyperbolic successors j of phi_{kj,s}(D^1_k, D^2_j).
        for (int j : model.symbols().s1) {
            if (!model.has_edge(symbol, j)) continue;
            const BlockMap& block = model.block(symbol, j);
            const Complex seed = model.domain_center2(symbol);
            for (Complex w1 : domain_interior_samples(model.domains(symbol).d1, grid_density))
                for (Complex z2 : domain_interior_samples(model.domains(j).d2, grid_density))
                    cloud.push_back(block.phi_s(w1, z2, seed, opts));
        }
        const Circle& gamma = spec.contour2;
        double clearance = std::numeric_limits<double>::infinity();
        bool enclosed = true;
        for (Complex p : cloud) {
            const double d = std::abs(p - gamma.center);
            clearance = std::min(clearance, std::abs(gamma.radius - d));
            if (d >= gamma.radius) enclosed = false;
        }
        check.clearance = clearance;
        check.enclosed = enclosed;
        if (!enclosed || clearance <= 0)
            throw ContourViolation("petal w2 contour of symbol " + std::to_string(symbol) +
                                   " does not enclose the incoming pinning images");
        return check;
    }

    // (P.b): G^1_k = union over hyperbolic predecessors j of phi_{jk,u}(D^1_j, D^2_k);
    // the w1 contour must keep clear of it and must not wind around it.
    for (int j : model.symbols().s1) {
        if (!model.has_edge(j, symbol)) continue;
        const BlockMap& block = model.block(j, symbol);
        const Complex seed = model.domain_center2(j);
        for (Complex w1 : domain_interior_samples(model.domains(j).d1, grid_density))
            for (Complex z2 : domain_interior_samples(model.domains(symbol).d2, grid_density))
                cloud.push_back(block.phi_u(w1, z2, seed, opts));
    }
    const Circle& gamma = spec.contour1;
    double clearance = std::numeric_limits<double>::infinity();
    bool outside = true;
    for (Complex p : cloud) {
        const double d = std::abs(p - gamma.center);
        clearance = std::min(clearance, std::abs(d - gamma.radius));
        if (d <= gamma.radius) outside = false;
    }
    check.clearance = clearance;
    check.enclosed = false;
    if (!outside || clearance <= 0)
        throw ContourViolation("petal w1 contour of symbol " + std::to_string(symbol) +
                               " intersects the incoming unstable images");
    return check;
}

namespace {

struct KernelTables {
    // Indexed [c][b]: c over source w1 nodes, b over target z2 nodes.
    std::vector<std::vector<Complex>> phi_s, dphi_s, phi_u;
};

KernelTables make_tables(const SymbolicModel& model, const BlockMap& block, int k,
                         const NodeGeometry& src, const NodeGeometry& dst) {
    const SolveOptions opts{1e-13, 80, 1.0};
    const Complex seed = model.domain_center2(k);
    const std::size_t nc = src.nodes1.size(), nb = dst.nodes2.size();
    KernelTables t;
    t.phi_s.assign(nc, std::vector<Complex>(nb));
    t.dphi_s.assign(nc, std::vector<Complex>(nb));
    t.phi_u.assign(nc, std::vector<Complex>(nb));
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t b = 0; b < nb; ++b) {
            const Complex w1 = src.nodes1[c], z2 = dst.nodes2[b];
            t.phi_s[c][b] = block.phi_s(w1, z2, seed, opts);
            t.dphi_s[c][b] = block.dphi_s_d2(w1, z2, seed, opts);
            t.phi_u[c][b] = block.phi_u(w1, z2, seed, opts);
        }
    return t;
}

OperatorSection build_kernel_section(const SymbolicModel& model, std::pair<int, int> edge,
                                     const NodeGeometry& src, const NodeGeometry& dst) {
    const auto [k, j] = edge;
    const BlockMap& block = model.block(k, j);
    const int sign = build_pinning_pair(model, edge).sign_s();
    const auto tables = make_tables(model, block, k, src, dst);

    const int n1t = static_cast<int>(dst.nodes1.size());
    const int n2t = static_cast<int>(dst.nodes2.size());
    const int n1s = static_cast<int>(src.nodes1.size());
    const int n2s = static_cast<int>(src.nodes2.size());
    OperatorSection out;
    out.word = {k, j};
    out.source = src;
    out.target = dst;
    out.matrix = Eigen::MatrixXcd(n1t * n2t, n1s * n2s);
    double min_den = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n1s; ++c) {
        for (int b = 0; b < n2t; ++b) {
            const Complex ps = tables.phi_s[c][b];
            const Complex pu = tables.phi_u[c][b];
            const Complex num = static_cast<double>(sign) * tables.dphi_s[c][b];
            for (int a = 0; a < n1t; ++a) {
                const Complex den_u = dst.nodes1[a] - pu;
                min_den = std::min(min_den, std::abs(den_u));
                const Complex left = num / den_u * src.weights1[c];
                for (int d = 0; d < n2s; ++d) {
                    const Complex den_s = src.nodes2[d] - ps;
                    if (a == 0) min_den = std::min(min_den, std::abs(den_s));
                    out.matrix(a * n2t + b, c * n2s + d) =
                        left * src.weights2[d] / den_s;
                }
            }
        }
    }
    if (min_den < kDenominatorFloor)
        throw ContourViolation("kernel denominator collapses to " +
                               std::to_string(min_den) + " on edge (" +
                               std::to_string(k) + "," + std::to_string(j) + ")");
    out.min_denominator = min_den;
    return out;
}

OperatorSection build_pb_self_section(const SymbolicModel& model, int k,
                                      const NodeGeometry& geom) {
    const BlockMap& block = model.block(k, k);
    const int sign = build_pinning_pair(model, {k, k}).sign_s();
    const SolveOptions opts{1e-13, 80, 1.0};
    const Complex seed = model.domain_center2(k);
    const Circle& gamma = model.contour(k).contour1;

    const int n1 = static_cast<int>(geom.nodes1.size());
    const int n2 = static_cast<int>(geom.nodes2.size());
    OperatorSection out;
    out.word = {k, k};
    out.source = geom;
    out.target = geom;
    out.matrix = Eigen::MatrixXcd::Zero(n1 * n2, n1 * n2);
    double min_den = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n1; ++a) {
        for (int b = 0; b < n2; ++b) {
            const Complex z1 = geom.nodes1[a], z2 = geom.nodes2[b];
            const Complex v1 = block.phi_u_inverse(z1, z2, opts);
            // Cauchy interpolation in the first coordinate needs the inverse
            // image strictly inside the contour disc. On a petal tangent to
            // the fixed point this fails for the nodes nearest the origin;
            // the direct-product model operators are the supported route for
            // iterated parabolic blocks.
            if (std::abs(v1 - gamma.center) >= gamma.radius * (1.0 - 1e-9))
                throw ContourViolation(
                    "inverse branch leaves the interpolation contour at node (" +
                    std::to_string(a) + "," + std::to_string(b) + "): " +
                    format_point(v1));
            const Complex ps = block.phi_s(v1, z2, seed, opts);
            const Complex dps = block.dphi_s_d2(v1, z2, seed, opts);
            const Complex dpu = block.normal_form_series()->partial(1).eval(v1, z2);
            const Complex factor = static_cast<double>(sign) * dps / dpu;
            for (int c = 0; c < n1; ++c) {
                const Complex den_interp = geom.nodes1[c] - v1;
                min_den = std::min(min_den, std::abs(den_interp));
                const Complex left = geom.weights1[c] / den_interp * factor;
                for (int d = 0; d < n2; ++d) {
                    const Complex den_s = geom.nodes2[d] - ps;
                    min_den = std::min(min_den, std::abs(den_s));
                    out.matrix(a * n2 + b, c * n2 + d) = left * geom.weights2[d] / den_s;
                }
            }
        }
    }
    if (min_den < kDenominatorFloor)
        throw ContourViolation("kernel denominator collapses on the (P.b) self-edge");
    out.min_denominator = min_den;
    return out;
}

}  // namespace

OperatorSection build_section(const SymbolicModel& model, std::pair<int, int> edge,
                              int nodes_override) {
    const auto [k, j] = edge;
    if (!model.has_edge(k, j))
        throw AdmissibilityError("no transition on edge (" + std::to_string(k) + "," +
                                 std::to_string(j) + ")");
    const NodeGeometry src = make_node_geometry(model, k, nodes_override);
    const NodeGeometry dst = make_node_geometry(model, j, nodes_override);
    if (k == j && model.is_parabolic(k) &&
        model.block(k, k).kind() == BlockKind::ParabolicPb)
        return build_pb_self_section(model, k, src);
    return build_kernel_section(model, edge, src, dst);
}

OperatorSection compose_sections(const OperatorSection& a, const OperatorSection& b) {
    if (!same_geometry(a.target, b.source))
        throw GeometryMismatch("target geometry of the first section does not match the "
                               "source geometry of the second");
    OperatorSection out;
    out.word = a.word;
    out.word.insert(out.word.end(), b.word.begin() + 1, b.word.end());
    out.source = a.source;
    out.target = b.target;
    out.matrix = b.matrix * a.matrix;
    out.min_denominator = std::min(a.min_denominator, b.min_denominator);
    return out;
}

OperatorSection word_section(const SymbolicModel& model, const Word& word,
                             int nodes_override) {
    if (word.size() < 2) throw AdmissibilityError("word must have length >= 2");
    OperatorSection acc = build_section(model, {word[0], word[1]}, nodes_override);
    for (std::size_t k = 1; k + 1 < word.size(); ++k)
        acc = compose_sections(acc,
                               build_section(model, {word[k], word[k + 1]}, nodes_override));
    return acc;
}

Complex section_trace(const OperatorSection& s) {
    if (s.matrix.rows() != s.matrix.cols())
        throw GeometryMismatch("trace requires a square section (cyclic word)");
    return s.matrix.trace();
}

const OperatorSection& SectionCache::edge(int k, int j) {
    auto it = cache_.find({k, j});
    if (it == cache_.end())
        it = cache_.emplace(std::make_pair(k, j), build_section(*model_, {k, j}, nodes_))
                 .first;
    return it->second;
}

Complex cycle_section_trace(SectionCache& cache, const Word& cycle) {
    const std::size_t m = cycle.size();
    if (m == 1) return section_trace(cache.edge(cycle[0], cycle[0]));
    std::vector<const Eigen::MatrixXcd*> chain;
    for (std::size_t k = 0; k < m; ++k)
        chain.push_back(&cache.edge(cycle[k], cycle[(k + 1) % m]).matrix);
    // tr(A_m ... A_1) with one fewer product: accumulate B = A_{m-1} ... A_1,
    // then contract against A_m entrywise.
    Eigen::MatrixXcd acc = *chain[0];
    for (std::size_t k = 1; k + 1 < m; ++k) acc = (*chain[k]) * acc;
    return (chain[m - 1]->transpose().cwiseProduct(acc)).sum();
}

std::vector<Complex> section_spectrum(const OperatorSection& s) {
    if (s.matrix.rows() != s.matrix.cols())
        throw GeometryMismatch("spectrum requires a square section");
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(s.matrix, /*computeU=*/false);
    std::vector<Complex> eigs(s.matrix.rows());
    for (int i = 0; i < s.matrix.rows(); ++i) eigs[i] = schur.matrixT()(i, i);
    std::sort(eigs.begin(), eigs.end(),
              [](Complex x, Complex y) { return std::abs(x) > std::abs(y); });
    return eigs;
}

Complex section_fredholm_det(const OperatorSection& s, Complex z) {
    if (s.matrix.rows() != s.matrix.cols())
        throw GeometryMismatch("determinant requires a square section");
    const Eigen::MatrixXcd m =
        Eigen::MatrixXcd::Identity(s.matrix.rows(), s.matrix.cols()) - z * s.matrix;
    return m.partialPivLu().determinant();
}

OperatorSection full_section(const SymbolicModel& model, int nodes_override) {
    if (!model.symbols().s0.empty())
        throw DomainError(
            "the one-step operator of a model with parabolic symbols is not assembled "
            "as a single matrix (continuous spectrum); use the model operators");
    const int n = model.num_symbols();
    std::vector<NodeGeometry> geoms;
    std::vector<int> offset(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        geoms.push_back(make_node_geometry(model, k, nodes_override));
        offset[k + 1] = offset[k] + geoms[k].size();
    }
    OperatorSection out;
    out.word = {};
    out.matrix = Eigen::MatrixXcd::Zero(offset[n], offset[n]);
    out.min_denominator = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            if (!model.has_edge(k, j)) continue;
            OperatorSection block = build_section(model, {k, j}, nodes_override);
            out.matrix.block(offset[j], offset[k], geoms[j].size(), geoms[k].size()) =
                block.matrix;
            out.min_denominator = std::min(out.min_denominator, block.min_denominator);
        }
    out.source.symbol = -1;
    out.target.symbol = -1;
    return out;
}

// ---------------------------------------------------------------------------
// Fatou conjugation
// ---------------------------------------------------------------------------

BivariateSeries fatou_error_series_pa(const BivariateSeries& phi_s, int max_deg1,
                                      int max_deg2) {
    // phi_s = z2 G(w1,z2); E = ((1/G - 1)/z2 - 1)/z2.
    const int wide2 = max_deg2 + 3;
    BivariateSeries G = BivariateSeries::divide_by_variable(phi_s, 2, 1e-10);
    if (std::abs(G.coeff(0, 0) - 1.0) > 1e-10)
        throw SingularityNotRemovable("phi_s is not tangent to the identity at 0");
    BivariateSeries H = BivariateSeries::sub(
        BivariateSeries::reciprocal(G, max_deg1, wide2),
        BivariateSeries::constant(1.0, 0, 0, G.radius1(), G.radius2()));
    BivariateSeries HH = BivariateSeries::divide_by_variable(H, 2, 1e-10);
    BivariateSeries N = BivariateSeries::sub(
        HH, BivariateSeries::constant(1.0, 0, 0, G.radius1(), G.radius2()));
    return BivariateSeries::divide_by_variable(N, 2, 1e-10);
}

BivariateSeries invert_series_w1(const BivariateSeries& phi_u, int max_deg1,
                                 int max_deg2) {
    if (std::abs(phi_u.coeff(0, 0)) > 1e-12 || std::abs(phi_u.coeff(1, 0) - 1.0) > 1e-12)
        throw SingularityNotRemovable("phi_u is not tangent to the identity at 0");
    // Newton iteration in the series algebra: v <- v - (phi_u(v) - z1)/phi_u'(v).
    BivariateSeries v = series_from_monomials({{1, 0, 1.0}}, 0, 0, phi_u.radius1(),
                                              phi_u.radius2());
    const BivariateSeries z1 = v;
    const BivariateSeries dphi = phi_u.partial(1);
    const int iters = static_cast<int>(std::ceil(std::log2(max_deg1 + 2))) + 2;
    for (int it = 0; it < iters; ++it) {
        BivariateSeries fv = BivariateSeries::compose_w1(phi_u, v, max_deg1, max_deg2);
        BivariateSeries dfv = BivariateSeries::compose_w1(dphi, v, max_deg1, max_deg2);
        BivariateSeries num = BivariateSeries::sub(fv, z1);
        BivariateSeries step = BivariateSeries::mul(
            num, BivariateSeries::reciprocal(dfv, max_deg1, max_deg2), max_deg1,
            max_deg2);
        v = BivariateSeries::sub(v, step);
    }
    return v;
}

BivariateSeries fatou_error_series_pb(const BivariateSeries& phi_u, int max_deg1,
                                      int max_deg2) {
    const int wide1 = max_deg1 + 3;
    BivariateSeries v = invert_series_w1(phi_u, wide1, max_deg2);
    BivariateSeries V = BivariateSeries::divide_by_variable(v, 1, 1e-10);
    if (std::abs(V.coeff(0, 0) - 1.0) > 1e-10)
        throw SingularityNotRemovable("inverse branch is not tangent to the identity");
    BivariateSeries H = BivariateSeries::sub(
        BivariateSeries::reciprocal(V, wide1, max_deg2),
        BivariateSeries::constant(1.0, 0, 0, V.radius1(), V.radius2()));
    BivariateSeries HH = BivariateSeries::divide_by_variable(H, 1, 1e-10);
    BivariateSeries N = BivariateSeries::add(
        HH, BivariateSeries::constant(1.0, 0, 0, V.radius1(), V.radius2()));
    return BivariateSeries::divide_by_variable(N, 1, 1e-10);
}

FatouData fatou_conjugate(const SymbolicModel& model, int symbol, int max_deg1,
                          int max_deg2) {
    if (!model.is_parabolic(symbol))
        throw DomainError("fatou_conjugate requires a parabolic symbol");
    const BlockMap& block = model.block(symbol, symbol);
    FatouData data;
    data.symbol = symbol;
    data.kind = block.kind();
    if (block.kind() == BlockKind::ParabolicPa)
        data.error_series =
            fatou_error_series_pa(*block.normal_form_series(), max_deg1, max_deg2);
    else
        data.error_series =
            fatou_error_series_pb(*block.normal_form_series(), max_deg1, max_deg2);
    // Half-plane metadata: the image of the petal contour under F(z) = 1/z.
    const Circle& gamma = block.kind() == BlockKind::ParabolicPa
                              ? model.contour(symbol).contour2
                              : model.contour(symbol).contour1;
    double R = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 64; ++k) {
        const Complex z = gamma.node(k, 64);
        if (std::abs(z) > 1e-12) R = std::min(R, std::abs((1.0 / z).real()));
    }
    data.half_plane_R = R;
    return data;
}

double fatou_residual(const SymbolicModel& model, const FatouData& data,
                      int grid_density) {
    const BlockMap& block = model.block(data.symbol, data.symbol);
    const auto& pair = model.domains(data.symbol);
    double worst = 0.0;
    const SolveOptions opts{1e-13, 80, 1.0};
    if (data.kind == BlockKind::ParabolicPa) {
        const auto w1s = domain_interior_samples(pair.d1, grid_density);
        const auto z2s = domain_interior_samples(pair.d2, grid_density);
        for (Complex w1 : w1s)
            for (Complex z2 : z2s) {
                if (std::abs(z2) < 1e-3) continue;
                const Complex phi = block.phi_s(w1, z2, Complex(0, 0), opts);
                const Complex lhs = 1.0 / phi - 1.0 / z2 - 1.0;
                const Complex rhs = z2 * data.error_series.eval(w1, z2);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        return worst;
    }
    // (P.b): sample the attracting petal (reflection of the repelling one).
    const auto z1s = domain_interior_samples(pair.d1, grid_density);
    const auto z2s = domain_interior_samples(pair.d2, grid_density);
    for (Complex z1r : z1s)
        for (Complex z2 : z2s) {
            const Complex z1 = -z1r;
            if (std::abs(z1) < 1e-3) continue;
            const Complex v = block.phi_u_inverse(z1, z2, opts);
            const Complex lhs = 1.0 / v - 1.0 / z1 + 1.0;
            const Complex rhs = z1 * data.error_series.eval(z1, z2);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

// ---------------------------------------------------------------------------
// Model operators
// ---------------------------------------------------------------------------

ModelSpectrum model_operator_spectrum(const ModelOperator& op, int max_power) {
    ModelSpectrum out;
    switch (op.kind) {
        case ModelOperatorKind::Tplus:
        case ModelOperatorKind::Tminus: {
            out.has_interval = true;
            out.interval_lo = 0.0;
            out.interval_hi = 1.0;
            for (double t : op.t_grid) {
                if (t < 0) throw ParameterOutOfRange("T grid values must be >= 0");
                out.points.push_back(std::exp(-t));
            }
            std::sort(out.points.begin(), out.points.end());
            return out;
        }
        case ModelOperatorKind::Mu: {
            if (std::abs(op.lambda) >= 1.0)
                throw ParameterOutOfRange("Mu requires |lambda| < 1");
            double p = 1.0;
            for (int l = 0; l <= max_power; ++l) {
                out.points.push_back(p);
                p *= op.lambda;
            }
            return out;
        }
        case ModelOperatorKind::Ms: {
            if (std::abs(op.lambda) >= 1.0 || op.lambda == 0.0)
                throw ParameterOutOfRange("Ms requires 0 < |lambda| < 1");
            const double sgn = op.lambda > 0 ? 1.0 : -1.0;
            double p = op.lambda;
            for (int l = 1; l <= max_power; ++l) {
                out.points.push_back(sgn * p);
                p *= op.lambda;
            }
            return out;
        }
    }
    throw ParameterOutOfRange("unknown model operator kind");
}

double model_operator_power_trace(const ModelOperator& op, int power) {
    if (power < 1) throw ParameterOutOfRange("power must be >= 1");
    const double lp = std::pow(op.lambda, power);
    switch (op.kind) {
        case ModelOperatorKind::Mu:
            return 1.0 / (1.0 - lp);
        case ModelOperatorKind::Ms:
            return std::abs(lp) / (1.0 - lp);
        default:
            throw ParameterOutOfRange("power trace applies to the nuclear factors only");
    }
}

std::vector<double> direct_product_witnesses(const ParabolicPrediction& prediction,
                                             int grid_size) {
    if (grid_size < 2) throw ParameterOutOfRange("grid size must be >= 2");
    std::vector<double> translation;  // witnesses of T+- in (0, 1]
    translation.reserve(grid_size);
    for (int i = 1; i <= grid_size; ++i)
        translation.push_back(static_cast<double>(i) / grid_size);

    std::vector<double> nuclear;
    if (prediction.kind == BlockKind::ParabolicPa) {
        double p = 1.0;
        while (std::abs(p) * grid_size >= 0.5) {
            nuclear.push_back(p);
            p *= prediction.lambda;
        }
    } else {
        const double sgn = prediction.lambda > 0 ? 1.0 : -1.0;
        double p = prediction.lambda;
        while (std::abs(p) * grid_size >= 0.5) {
            nuclear.push_back(sgn * p);
            p *= prediction.lambda;
        }
    }
    std::vector<double> out;
    out.reserve(nuclear.size() * translation.size() + 1);
    for (double a : nuclear)
        for (double t : translation) out.push_back(a * t);
    out.push_back(0.0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Perturbation gap
// ---------------------------------------------------------------------------

double parabolic_deviation(const SymbolicModel& model, int symbol, double epsilon,
                           int grid_density) {
    if (!model.is_parabolic(symbol))
        throw DomainError("parabolic_deviation requires a parabolic symbol");
    if (epsilon <= 0 || epsilon > 1)
        throw DomainError("epsilon must lie in (0, 1]");
    const BlockMap& block = model.block(symbol, symbol);
    const auto& pair = model.domains(symbol);
    const SolveOptions opts{1e-13, 80, 1.0};
    const auto predictions = parabolic_spectrum_prediction(model);
    double lambda = 0.0;
    for (const auto& p : predictions)
        if (p.symbol == symbol) lambda = p.lambda;

    double sup = 0.0;
    if (block.kind() == BlockKind::ParabolicPa) {
        const auto& disc = std::get<Disc>(pair.d1);
        std::vector<Complex> w1s;
        for (int k = 0; k < grid_density; ++k) {
            const double t = 2.0 * M_PI * k / grid_density;
            w1s.push_back(disc.center + epsilon * disc.radius *
                                            Complex(std::cos(t), std::sin(t)));
        }
        std::vector<Complex> z2s;
        for (Complex z : domain_interior_samples(pair.d2, grid_density))
            z2s.push_back(epsilon * z);
        for (Complex w1 : w1s)
            for (Complex z2 : z2s) {
                const Complex pu = block.phi_u(w1, z2, Complex(0, 0), opts);
                sup = std::max(sup, std::abs(Complex(lambda, 0) - pu / w1));
            }
        return sup;
    }
    // (P.b): sample the scaled attracting petal in the first coordinate.
    std::vector<Complex> w1s;
    for (Complex z : domain_interior_samples(pair.d1, grid_density))
        w1s.push_back(-epsilon * z);
    std::vector<Complex> z2s;
    for (Complex z : domain_interior_samples(pair.d2, grid_density))
        z2s.push_back(epsilon * z);
    for (Complex w1 : w1s)
        for (Complex z2 : z2s) {
            if (std::abs(z2) < 1e-6) continue;
            const Complex ps = block.phi_s(w1, z2, Complex(0, 0), opts);
            const Complex dps = block.dphi_s_d2(w1, z2, Complex(0, 0), opts);
            sup = std::max({sup, std::abs(Complex(lambda, 0) - ps / z2),
                            std::abs(Complex(lambda, 0) - dps)});
        }
    return sup;
}

}  // namespace detzeta
