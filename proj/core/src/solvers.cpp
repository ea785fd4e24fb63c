#include "prnk/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "prnk/vector_kernels.hpp"

namespace prnk {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> initial_vector(const GoogleOperator& op, const SolveConfig& cfg) {
    const std::size_t n = op.dim();
    if (cfg.q0.empty())
        return std::vector<double>(n, 1.0 / static_cast<double>(n));
    if (cfg.q0.size() != n) throw std::invalid_argument("solve: q0 length mismatch");
    std::vector<double> q = cfg.q0;
    double s = norm1(q);
    if (s == 0.0) throw std::invalid_argument("solve: q0 must be nonzero");
    for (double& v : q) v /= s;
    return q;
}

/// Sign-fix (sum > 0), clamp stray negatives to zero, renormalize to unit
/// 1-norm.
std::vector<double> finalize_rank_vector(std::vector<double> x) {
    double s = sum(x);
    if (s < 0.0)
        for (double& v : x) v = -v;
    for (double& v : x)
        if (v < 0.0) v = 0.0;
    double n1 = norm1(x);
    if (n1 == 0.0) throw std::runtime_error("solver produced a zero vector");
    for (double& v : x) v /= n1;
    return x;
}

void stamp(SolveReport& r, const SolveConfig& cfg, const GoogleOperator& op) {
    r.method = cfg.method;
    r.alpha = op.alpha();
    r.m = cfg.m;
    r.tol = cfg.tol;
}

/// Shared power-iteration driver; `extrapolate` (if set) runs every
/// `period` steps with the current iterate x_k (mutable) and x_{k-1}.
SolveReport power_driver(const GoogleOperator& op, const SolveConfig& cfg, std::size_t period,
                         const std::function<void(std::vector<double>&, const std::vector<double>&)>&
                             extrapolate) {
    const auto t0 = Clock::now();
    SolveReport rep;
    stamp(rep, cfg, op);

    std::vector<double> x = initial_vector(op, cfg);
    std::vector<double> y(x.size());

    bool stopped = false;
    std::size_t step = 0;
    while (rep.mvp + 1 <= cfg.max_mvp) {
        op.apply(x, y);
        ++rep.mvp;
        ++rep.cycles;
        ++step;

        double ny = norm1(y);
        for (double& v : y) v /= ny;
        double delta = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) delta += std::abs(y[i] - x[i]);
        rep.residual_history.push_back(delta);

        if (delta < cfg.tol) {
            x = y;
            stopped = true;
            break;
        }
        x.swap(y); // x = x_k, y = x_{k-1}
        if (extrapolate && period > 0 && step % period == 0) extrapolate(x, y);
    }

    rep.x = finalize_rank_vector(std::move(x));
    auto [r, res] = residual_direct(op, rep.x);
    rep.verify_mvp = 1;
    rep.final_residual = res;
    rep.converged = stopped;
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

// Min-norm least squares for the 2-column system [y1 y2] g ~= b via the
// pseudo-inverse of the 2x2 Gram matrix.
bool solve_gram_2x2(double g11, double g12, double g22, double b1, double b2, double& c1,
                    double& c2) {
    const double tr = g11 + g22;
    const double det = g11 * g22 - g12 * g12;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double lmax = (tr + disc) / 2.0;
    const double lmin = (tr - disc) / 2.0;
    if (lmax <= 0.0) return false;

    if (lmin > 1e-14 * lmax) {
        c1 = (g22 * b1 - g12 * b2) / det;
        c2 = (g11 * b2 - g12 * b1) / det;
        return true;
    }
    // Rank one: project b onto the dominant eigenvector of G.
    double u1, u2;
    if (std::abs(g12) > 1e-300) {
        u1 = lmax - g22;
        u2 = g12;
    } else if (g11 >= g22) {
        u1 = 1.0;
        u2 = 0.0;
    } else {
        u1 = 0.0;
        u2 = 1.0;
    }
    double un = std::sqrt(u1 * u1 + u2 * u2);
    u1 /= un;
    u2 /= un;
    double coeff = (u1 * b1 + u2 * b2) / lmax;
    c1 = coeff * u1;
    c2 = coeff * u2;
    return true;
}

} // namespace

std::string to_string(Method m) {
    switch (m) {
    case Method::power: return "power";
    case Method::power_tan: return "power-tan";
    case Method::qe_power: return "qe-power";
    case Method::arnoldi: return "arnoldi";
    case Method::hessenberg: return "hessenberg";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "power") return Method::power;
    if (s == "power-tan") return Method::power_tan;
    if (s == "qe-power") return Method::qe_power;
    if (s == "arnoldi") return Method::arnoldi;
    if (s == "hessenberg") return Method::hessenberg;
    throw std::invalid_argument("unknown method: " + s);
}

void SolveConfig::validate(std::size_t n) const {
    if (!(tol > 0.0)) throw std::invalid_argument("SolveConfig: tol must be > 0");
    if (max_mvp < 1) throw std::invalid_argument("SolveConfig: max_mvp must be >= 1");
    const bool krylov = method == Method::arnoldi || method == Method::hessenberg;
    if (krylov && m < 2) throw std::invalid_argument("SolveConfig: m must be >= 2 for Krylov methods");
    if (method == Method::qe_power && extrapolation_period != 0 && extrapolation_period < 4)
        throw std::invalid_argument("SolveConfig: quadratic extrapolation period must be >= 4");
    if (!q0.empty() && q0.size() != n) throw std::invalid_argument("SolveConfig: q0 length mismatch");
}

SolveReport power(const GoogleOperator& op, const SolveConfig& cfg) {
    cfg.validate(op.dim());
    return power_driver(op, cfg, 0, {});
}

SolveReport power_linear_extrapolation(const GoogleOperator& op, const SolveConfig& cfg) {
    cfg.validate(op.dim());
    const std::size_t period = cfg.extrapolation_period ? cfg.extrapolation_period : 10;
    const double gain = op.alpha() / (1.0 - op.alpha());

    auto extrapolate = [gain](std::vector<double>& x, const std::vector<double>& x_prev) {
        std::vector<double> z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            z[i] = x[i] + gain * (x[i] - x_prev[i]);
            if (z[i] < 0.0) z[i] = 0.0;
        }
        double s = norm1(z);
        if (s > 0.0) {
            for (double& v : z) v /= s;
            x = std::move(z);
        }
    };
    return power_driver(op, cfg, period, extrapolate);
}

SolveReport power_quadratic_extrapolation(const GoogleOperator& op, const SolveConfig& cfg) {
    cfg.validate(op.dim());
    const std::size_t period = cfg.extrapolation_period ? cfg.extrapolation_period : 5;

    std::vector<std::vector<double>> window;
    window.push_back(initial_vector(op, cfg));

    auto extrapolate = [&window, &cfg](std::vector<double>& x) {
        window.push_back(x);
        while (window.size() > 4) window.erase(window.begin());
        if (window.size() < 4) return false;

        const auto& w0 = window[0];
        const auto& w1 = window[1];
        const auto& w2 = window[2];
        const auto& w3 = window[3];
        const std::size_t n = x.size();
        std::vector<double> y1(n), y2(n), y3(n);
        for (std::size_t i = 0; i < n; ++i) {
            y1[i] = w1[i] - w0[i];
            y2[i] = w2[i] - w0[i];
            y3[i] = w3[i] - w0[i];
        }
        if (norm1(y3) < cfg.tol) return false;

        double g11 = dot(y1, y1), g12 = dot(y1, y2), g22 = dot(y2, y2);
        double b1 = -dot(y1, y3), b2 = -dot(y2, y3);
        double c1 = 0.0, c2 = 0.0;
        if (!solve_gram_2x2(g11, g12, g22, b1, b2, c1, c2)) return false;

        const double beta0 = c1 + c2 + 1.0;
        const double beta1 = c2 + 1.0;
        const double beta2 = 1.0;
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = beta0 * w1[i] + beta1 * w2[i] + beta2 * w3[i];
            if (z[i] < 0.0) z[i] = 0.0;
        }
        double s = norm1(z);
        if (s == 0.0) return false;
        for (double& v : z) v /= s;
        x = std::move(z);
        window.clear();
        window.push_back(x);
        return true;
    };

    // The window must see every iterate, not only extrapolation steps, so
    // wrap the driver loop manually here.
    const auto t0 = Clock::now();
    SolveReport rep;
    stamp(rep, cfg, op);

    std::vector<double> x = window.front();
    std::vector<double> y(x.size());
    bool stopped = false;
    std::size_t step = 0;
    while (rep.mvp + 1 <= cfg.max_mvp) {
        op.apply(x, y);
        ++rep.mvp;
        ++rep.cycles;
        ++step;
        double ny = norm1(y);
        for (double& v : y) v /= ny;
        double delta = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) delta += std::abs(y[i] - x[i]);
        rep.residual_history.push_back(delta);
        if (delta < cfg.tol) {
            x = y;
            stopped = true;
            break;
        }
        x.swap(y);
        if (step % period == 0) {
            extrapolate(x);
        } else {
            window.push_back(x);
            while (window.size() > 4) window.erase(window.begin());
        }
    }

    rep.x = finalize_rank_vector(std::move(x));
    auto [r, res] = residual_direct(op, rep.x);
    rep.verify_mvp = 1;
    rep.final_residual = res;
    rep.converged = stopped;
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

SolveReport refined_krylov_pagerank(const GoogleOperator& op, const SolveConfig& cfg,
                                    ProcessKind kind, const CycleObserver& observer) {
    cfg.validate(op.dim());
    const auto t0 = Clock::now();
    const std::size_t n = op.dim();
    const std::size_t m = std::min(cfg.m, n);

    SolveReport rep;
    stamp(rep, cfg, op);

    std::vector<double> q = initial_vector(op, cfg);
    bool stopped = false;

    for (std::size_t cycle = 0; rep.mvp + m <= cfg.max_mvp; ++cycle) {
        if (!(cfg.raw_restart && cycle > 0)) {
            double beta = norm_inf_with_argmax(q).value;
            for (double& v : q) v /= beta;
        }

        KrylovDecomposition dec = kind == ProcessKind::hessenberg
                                      ? hessenberg_process(op, q, m)
                                      : arnoldi_process(op, q, m);
        rep.mvp += dec.steps_completed;

        std::size_t k = dec.steps_completed;
        if (dec.breakdown_at) {
            rep.breakdown_steps.push_back(*dec.breakdown_at);
            auto [rvec, rres] = residual_direct(op, q);
            ++rep.verify_mvp;
            if (rres < cfg.tol) {
                ++rep.cycles;
                rep.residual_history.push_back(rres);
                rep.last_decomp = std::move(dec);
                rep.last_triplet.reset();
                rep.last_q = q;
                stopped = true;
                break;
            }
            if (k == 1)
                throw std::runtime_error(
                    "refined_krylov_pagerank: breakdown at step 1 with nonzero residual "
                    "(degenerate start vector)");
            // Otherwise continue on the k-dimensional invariant subspace.
        }

        Matrix shifted = dec.hbar;
        for (std::size_t i = 0; i < k; ++i) shifted(i, i) -= 1.0;
        SingularTriplet trip = smallest_singular_triplet(shifted);

        std::vector<double> qnew(n, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            double vj = trip.v[j];
            if (vj == 0.0) continue;
            auto cj = dec.basis.col(j);
            for (std::size_t i = 0; i < n; ++i) qnew[i] += vj * cj[i];
        }
        std::vector<double> r(n, 0.0);
        for (std::size_t j = 0; j < dec.basis.cols(); ++j) {
            double uj = trip.sigma * trip.u[j];
            if (uj == 0.0) continue;
            auto cj = dec.basis.col(j);
            for (std::size_t i = 0; i < n; ++i) r[i] += uj * cj[i];
        }

        double resid = norm1(r) / norm1(qnew);
        ++rep.cycles;
        rep.residual_history.push_back(resid);
        if (observer) observer(rep.cycles, dec, trip, qnew, r);

        rep.last_triplet = std::move(trip);
        rep.last_q = qnew;
        rep.last_decomp = std::move(dec);
        q = std::move(qnew);

        if (resid < cfg.tol) {
            stopped = true;
            break;
        }
    }

    rep.x = finalize_rank_vector(q);
    auto [rv, res] = residual_direct(op, rep.x);
    rep.verify_mvp = 1;
    rep.final_residual = res;
    rep.converged = stopped;
    rep.wall_time_s = elapsed_s(t0);
    return rep;
}

SolveReport solve(const GoogleOperator& op, const SolveConfig& cfg, const CycleObserver& observer) {
    switch (cfg.method) {
    case Method::power: return power(op, cfg);
    case Method::power_tan: return power_linear_extrapolation(op, cfg);
    case Method::qe_power: return power_quadratic_extrapolation(op, cfg);
    case Method::arnoldi: return refined_krylov_pagerank(op, cfg, ProcessKind::arnoldi, observer);
    case Method::hessenberg:
        return refined_krylov_pagerank(op, cfg, ProcessKind::hessenberg, observer);
    }
    throw std::invalid_argument("solve: unknown method");
}

double verify_report(const GoogleOperator& op, const SolveReport& report) {
    if (!report.last_decomp || !report.last_triplet || report.last_q.empty())
        throw std::invalid_argument("verify_report: report lacks the final-cycle Krylov payload");
    const auto& dec = *report.last_decomp;
    const auto& trip = *report.last_triplet;
    const auto& q = report.last_q;
    const std::size_t n = q.size();

    std::vector<double> lhs = op.apply(q);
    for (std::size_t i = 0; i < n; ++i) lhs[i] -= q[i];

    for (std::size_t j = 0; j < dec.basis.cols(); ++j) {
        double uj = trip.sigma * trip.u[j];
        if (uj == 0.0) continue;
        auto cj = dec.basis.col(j);
        for (std::size_t i = 0; i < n; ++i) lhs[i] -= uj * cj[i];
    }
    return norm1(lhs) / norm1(q);
}

} // namespace prnk
