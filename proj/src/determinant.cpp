#include "detzeta/determinant.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "detzeta/words.hpp"

namespace detzeta {

namespace {

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

constexpr std::size_t kChunk = 4096;

}  // namespace

std::vector<double> trace_sequence(const SymbolicModel& model, int order, int jobs) {
    if (order < 1) throw DomainError("trace order must be >= 1");
    if (jobs < 1) jobs = 1;
    std::vector<double> traces(order, 0.0);
    const SolveOptions opts{1e-13, 500, 1.0};

    for (int m = 1; m <= order; ++m) {
        // Deterministic chunked reduction: each chunk of 4096 consecutive
        // words is summed sequentially; chunk partials combine in rank order,
        // independent of the worker count.
        struct Batch {
            std::size_t index;
            std::vector<Word> words;
        };
        std::mutex mu;
        std::condition_variable cv_full, cv_empty;
        std::queue<Batch> queue;
        bool done = false;
        std::vector<double> chunk_sums;
        std::exception_ptr failure;

        auto worker = [&]() {
            for (;;) {
                Batch batch;
                {
                    std::unique_lock<std::mutex> lk(mu);
                    cv_full.wait(lk, [&] { return done || !queue.empty() || failure; });
                    if (failure) return;
                    if (queue.empty()) {
                        if (done) return;
                        continue;
                    }
                    batch = std::move(queue.front());
                    queue.pop();
                    cv_empty.notify_all();
                }
                Kahan partial;
                try {
                    for (const Word& w : batch.words)
                        partial.add(periodic_point(model, w, opts).trace_term);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!failure) failure = std::current_exception();
                    cv_full.notify_all();
                    cv_empty.notify_all();
                    return;
                }
                std::lock_guard<std::mutex> lk(mu);
                chunk_sums[batch.index] = partial.sum;
            }
        };

        const std::uint64_t total = count_cyclic_words(model, m);
        chunk_sums.assign(static_cast<std::size_t>((total + kChunk - 1) / kChunk), 0.0);
        std::vector<std::thread> pool;
        const int nworkers = std::min<int>(jobs, std::max<std::size_t>(chunk_sums.size(), 1));
        for (int t = 0; t < nworkers; ++t) pool.emplace_back(worker);

        Batch current;
        current.index = 0;
        current.words.reserve(kChunk);
        visit_cyclic_words(model, m, [&](std::uint64_t rank, const Word& w) {
            current.words.push_back(w);
            if (current.words.size() == kChunk) {
                std::unique_lock<std::mutex> lk(mu);
                cv_empty.wait(lk, [&] { return queue.size() < 4 * pool.size() || failure; });
                if (failure) return;
                queue.push(std::move(current));
                cv_full.notify_one();
                current = Batch{static_cast<std::size_t>(rank / kChunk) + 1, {}};
                current.words.reserve(kChunk);
            }
        });
        {
            std::lock_guard<std::mutex> lk(mu);
            if (!current.words.empty()) queue.push(std::move(current));
            done = true;
            cv_full.notify_all();
        }
        for (auto& t : pool) t.join();
        if (failure) {
            try {
                std::rethrow_exception(failure);
            } catch (const Error& e) {
                throw Error(e.kind(), std::string("trace_sequence at order ") +
                                          std::to_string(m) + ": " + e.what());
            }
        }
        Kahan acc;
        for (double v : chunk_sums) acc.add(v);
        traces[m - 1] = acc.sum;
    }
    return traces;
}

std::vector<double> determinant_coefficients(const std::vector<double>& traces) {
    const int M = static_cast<int>(traces.size());
    std::vector<double> c(M + 1, 0.0);
    c[0] = 1.0;
    for (int n = 1; n <= M; ++n) {
        Kahan acc;
        for (int m = 1; m <= n; ++m) acc.add(traces[m - 1] * c[n - m]);
        c[n] = -acc.sum / n;
    }
    return c;
}

DeterminantSeries determinant_series(const SymbolicModel& model, int order, int jobs) {
    DeterminantSeries s;
    s.order = order;
    s.traces = trace_sequence(model, order, jobs);
    s.coeffs = determinant_coefficients(s.traces);
    return s;
}

EvalResult evaluate_determinant(const DeterminantSeries& series, Complex z) {
    const auto& c = series.coeffs;
    if (c.empty()) throw DomainError("empty determinant series");
    Complex acc(0, 0);
    for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n)
        acc = acc * z + Complex(c[n], 0);
    // Tail control from the trailing term ratios |c_{n+1} z / c_n|.
    const int M = static_cast<int>(c.size()) - 1;
    double rho = 0.0;
    bool seen = false;
    for (int n = std::max(0, M - 4); n + 1 <= M; ++n) {
        if (std::abs(c[n]) == 0.0) continue;
        const double r = std::abs(c[n + 1]) * std::abs(z) / std::abs(c[n]);
        rho = r;
        seen = true;
        if (r >= 1.0)
            throw TailNotConverging("trailing coefficient ratio " + std::to_string(r) +
                                    " at degree " + std::to_string(n));
    }
    const double last_term = std::abs(c[M]) * std::pow(std::abs(z), M);
    EvalResult out;
    out.value = acc;
    out.tail_bound = seen ? last_term / (1.0 - rho) : last_term;
    return out;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    // Trailing coefficients of a cycle-expansion polynomial decay below the
    // noise floor; trim them, then root-find on the reversed polynomial
    // (leading coefficient c_0, well conditioned) so the small-modulus zeros
    // come out accurately. Roots are z = 1/w for the reversed roots w != 0.
    int deg = static_cast<int>(coeffs.size()) - 1;
    double scale = 0.0;
    for (double v : coeffs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0 || std::abs(coeffs[0]) < 1e-14 * scale) return {};
    while (deg > 0 && std::abs(coeffs[deg]) < 4e-16 * scale) --deg;
    if (deg == 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    // Reversed polynomial Q(w) = sum_n coeffs[deg - n] w^n, monic up to c_0.
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[deg - i] / coeffs[0];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    auto horner = [&](Complex z, int lo) {
        Complex acc(0, 0);
        for (int n = deg; n >= lo; --n) acc = acc * z + Complex(coeffs[n], 0);
        return acc;
    };
    std::vector<Complex> roots;
    for (int i = 0; i < deg; ++i) {
        const Complex w = es.eigenvalues()[i];
        if (std::abs(w) <= 1e-12) continue;
        Complex z = 1.0 / w;
        // Newton polish against the polynomial itself; companion eigenvalues
        // of clustered roots carry intrinsic conditioning error.
        for (int it = 0; it < 3; ++it) {
            Complex p(0, 0), dp(0, 0);
            for (int n = deg; n >= 1; --n) {
                dp = dp * z + Complex(n * coeffs[n], 0);
            }
            p = horner(z, 0);
            if (std::abs(dp) < 1e-14) break;
            const Complex step = p / dp;
            if (std::abs(step) > 0.5 * std::abs(z)) break;
            z -= step;
        }
        roots.push_back(z);
    }
    return roots;
}

double smallest_zero_modulus(const DeterminantSeries& series) {
    const auto roots = polynomial_roots(series.coeffs);
    double best = std::numeric_limits<double>::infinity();
    for (Complex r : roots) best = std::min(best, std::abs(r));
    return best;
}

Complex closed_form_factor(const FactorSpec& spec, Complex z) {
    const double aE = std::abs(spec.lambda_E), aF = std::abs(spec.lambda_F);
    switch (spec.kind) {
        case FactorKind::Sink:
            if (!(aE < aF && aF < 1.0))
                throw KindMismatch("sink requires |lE| < |lF| < 1");
            break;
        case FactorKind::Saddle:
            if (!(aE < 1.0 && aF > 1.0))
                throw KindMismatch("saddle requires |lE| < 1 < |lF|");
            break;
        case FactorKind::Source:
            if (!(1.0 < aE && aE < aF))
                throw KindMismatch("source requires 1 < |lE| < |lF|");
            break;
    }
    if (spec.trunc_J < 1 || spec.trunc_K < 1)
        throw DomainError("factor truncation must be >= 1");
    Complex zP(1, 0);
    for (int p = 0; p < spec.period; ++p) zP *= z;
    Complex prod(1, 0);
    const int j0 = spec.kind == FactorKind::Source ? 1 : 0;
    const int k0 = spec.kind == FactorKind::Sink ? 0 : 1;
    for (int j = j0; j <= spec.trunc_J; ++j) {
        const double ej = spec.kind == FactorKind::Source
                              ? std::pow(spec.lambda_E, -j)
                              : std::pow(spec.lambda_E, j);
        for (int k = k0; k <= spec.trunc_K; ++k) {
            const double fk = spec.kind == FactorKind::Sink
                                  ? std::pow(spec.lambda_F, k)
                                  : std::pow(spec.lambda_F, -k);
            prod *= (Complex(1, 0) - zP * ej * fk);
        }
    }
    return prod;
}

SlitSet slit_set(double lambda_E, double lambda_F, int period) {
    if (period < 1) throw DomainError("period must be >= 1");
    constexpr double tol = 1e-12;
    SlitSet s;
    s.period = period;
    const bool F_plus = std::abs(lambda_F - 1.0) <= tol;
    const bool F_minus = std::abs(lambda_F + 1.0) <= tol;
    const bool E_plus = std::abs(lambda_E - 1.0) <= tol;
    const bool E_minus = std::abs(lambda_E + 1.0) <= tol;
    if (F_minus && std::abs(lambda_E) < 1.0) {
        s.case_tag = "F=-1";
        s.base_lo = -1.0;
        s.base_hi = 1.0;
        s.scale = 1.0;
    } else if (F_plus && std::abs(lambda_E) < 1.0) {
        s.case_tag = "F=+1";
        s.base_lo = std::min(0.0, lambda_E);
        s.base_hi = 1.0;
        s.scale = 1.0;
    } else if (E_minus && std::abs(lambda_F) > 1.0) {
        s.case_tag = "E=-1";
        s.base_lo = -1.0;
        s.base_hi = 1.0;
        s.scale = 1.0 / std::abs(lambda_F);
    } else if (E_plus && std::abs(lambda_F) > 1.0) {
        s.case_tag = "E=+1";
        s.base_lo = std::min(0.0, 1.0 / lambda_F);
        s.base_hi = 1.0;
        s.scale = 1.0 / std::abs(lambda_F);
    } else {
        throw NotNeutral("no multiplier within 1e-12 of +-1 (lE=" +
                         std::to_string(lambda_E) + ", lF=" + std::to_string(lambda_F) +
                         ")");
    }
    return s;
}

std::vector<SlitSet::Ray> SlitSet::rays() const {
    std::vector<Ray> out;
    const double A = scale * base_lo, B = scale * base_hi;
    const int P = period;
    if (B > 0) {
        const double t0 = std::pow(std::max(A, 0.0), 1.0 / P);
        const double t1 = std::pow(B, 1.0 / P);
        for (int k = 0; k < P; ++k) out.push_back({2.0 * M_PI * k / P, t0, t1});
    }
    if (A < 0) {
        const double t0 = std::pow(std::max(-B, 0.0), 1.0 / P);
        const double t1 = std::pow(-A, 1.0 / P);
        for (int k = 0; k < P; ++k) out.push_back({M_PI * (2.0 * k + 1.0) / P, t0, t1});
    }
    return out;
}

bool slit_membership(const SlitSet& slit, Complex z, double tol) {
    Complex zP(1, 0);
    for (int p = 0; p < slit.period; ++p) zP *= z;
    const double A = slit.scale * slit.base_lo, B = slit.scale * slit.base_hi;
    const double x = std::clamp(zP.real(), A, B);
    return std::abs(zP - Complex(x, 0)) <= tol;
}

double slit_distance(const SlitSet& slit, Complex z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ray : slit.rays()) {
        const Complex rot = z * std::polar(1.0, -ray.angle);
        const double t = std::clamp(rot.real(), ray.t0, ray.t1);
        best = std::min(best, std::abs(rot - Complex(t, 0)));
    }
    return best;
}

std::vector<ParabolicPrediction> parabolic_spectrum_prediction(
    const SymbolicModel& model) {
    std::vector<ParabolicPrediction> out;
    for (int k : model.symbols().s0) {
        const BlockMap& block = model.block(k, k);
        ParabolicPrediction p;
        p.symbol = k;
        p.kind = block.kind();
        if (block.kind() == BlockKind::ParabolicPa) {
            // lambda_{k,u} = d1 phi_u(0,0) = d1 f^1(0,0) since phi_s has no
            // first-order w1 dependence at the origin.
            p.lambda = block.f1_series()->partial(1).eval(Complex(0, 0), Complex(0, 0)).real();
        } else if (block.kind() == BlockKind::ParabolicPb) {
            // lambda_{k,s} = d2 phi_s(0,0) = 1 / d2 f^2(0,0).
            const Complex d = block.f2_series()->partial(2).eval(Complex(0, 0), Complex(0, 0));
            p.lambda = 1.0 / d.real();
        } else {
            throw StructuralError("parabolic symbol without parabolic self-block");
        }
        if (std::abs(p.lambda) >= 1.0)
            throw NeutralDirectionWrong("hyperbolic coefficient of parabolic block has modulus >= 1 (" +
                                        std::to_string(p.lambda) + ")");
        if (p.kind == BlockKind::ParabolicPa) {
            p.interval_lo = std::min(0.0, p.lambda);
            p.interval_hi = 1.0;
        } else if (p.lambda > 0) {
            p.interval_lo = 0.0;
            p.interval_hi = p.lambda;
        } else {
            p.interval_lo = -p.lambda * p.lambda;
            p.interval_hi = -p.lambda;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace detzeta
