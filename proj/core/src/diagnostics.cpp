#include "prnk/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "prnk/dense_kernels.hpp"
#include "prnk/vector_kernels.hpp"

namespace prnk {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

// Y * R = X with R upper triangular: forward substitution over columns.
Matrix solve_right_upper(const Matrix& x, const Matrix& r) {
    const std::size_t m = r.rows();
    Matrix y(x.rows(), m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double acc = x(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= y(i, k) * r(k, j);
            y(i, j) = acc / r(j, j);
        }
    }
    return y;
}

std::vector<std::complex<double>> eigenvalues_of(const std::vector<Eigenpair>& pairs) {
    std::vector<std::complex<double>> v;
    v.reserve(pairs.size());
    for (const auto& p : pairs) v.push_back(p.value);
    return v;
}

} // namespace

DecompositionError decomposition_error(const LinearOperator& op, const KrylovDecomposition& dec) {
    const std::size_t n = dec.dim();
    const std::size_t k = dec.steps_completed;
    const std::size_t cols = dec.basis.cols();

    double err_sq = 0.0;
    std::vector<double> r(n);
    for (std::size_t j = 0; j < k; ++j) {
        op.apply(dec.basis.col(j), r);
        for (std::size_t i = 0; i < cols; ++i) {
            double hij = dec.hbar(i, j);
            if (hij != 0.0) axpy(-hij, dec.basis.col(i), r);
        }
        for (double v : r) err_sq += v * v;
    }

    double basis_sq = 0.0;
    for (std::size_t j = 0; j < k; ++j)
        for (double v : dec.basis.col(j)) basis_sq += v * v;

    DecompositionError e;
    e.absolute = std::sqrt(err_sq);
    const double denom = op.frobenius_norm() * std::sqrt(basis_sq);
    e.normalized = denom > 0.0 ? e.absolute / denom : e.absolute;
    return e;
}

double basis_condition(const KrylovDecomposition& dec) {
    if (dec.steps_completed < 1) throw std::invalid_argument("basis_condition: empty decomposition");
    Qr qr;
    try {
        qr = qr_reduced(dec.basis);
    } catch (const std::runtime_error&) {
        return std::numeric_limits<double>::infinity();
    }
    Svd s = svd(qr.r);
    double smin = s.sigma.back();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s.sigma.front() / smin;
}

QrRelationReport verify_qr_relation(const LinearOperator& op, std::span<const double> q0, std::size_t m) {
    if (m < 1 || m + 1 > op.dim())
        throw std::invalid_argument("verify_qr_relation: need 1 <= m < n");

    KrylovDecomposition hess = hessenberg_process(op, q0, m);
    if (hess.breakdown_at)
        throw std::runtime_error("verify_qr_relation: hessenberg breakdown at step " +
                                 std::to_string(*hess.breakdown_at));
    KrylovDecomposition arn = arnoldi_process(op, q0, m);
    if (arn.breakdown_at)
        throw std::runtime_error("verify_qr_relation: arnoldi breakdown at step " +
                                 std::to_string(*arn.breakdown_at));

    Qr qr = qr_reduced(hess.basis); // L_{m+1} = Q R, diag(R) > 0

    // The uniqueness argument identifies Q with the Arnoldi basis. Signed
    // Hessenberg pivots can flip individual columns, so align the QR
    // factor to the Arnoldi orientation before forming the identities.
    Matrix rt = qr.r;
    for (std::size_t j = 0; j <= m; ++j) {
        double align = dot(qr.q.col(j), arn.basis.col(j));
        if (align < 0.0)
            for (std::size_t c = j; c <= m; ++c) rt(j, c) = -rt(j, c);
    }

    QrRelationReport rep;
    rep.m = m;
    rep.ratio_lhs = hess.hbar(m, m - 1) / rt(m - 1, m - 1);
    rep.ratio_rhs = arn.hbar(m, m - 1) / rt(m, m);

    Matrix rm = rt.block(m, m);
    Matrix corrected = solve_right_upper(rm * hess.hbar.block(m, m), rm);
    for (std::size_t i = 0; i < m; ++i) corrected(i, m - 1) += rep.ratio_lhs * rt(i, m);

    Matrix ha = arn.hbar.block(m, m);
    rep.identity_residual = frobenius_norm(ha - corrected);
    rep.eig_distance = eigenvalue_multiset_distance(eigenvalues_of(hessenberg_eig(ha)),
                                                    eigenvalues_of(dense_eig(corrected)));

    Svd s = svd(qr.r);
    rep.basis_condition =
        s.sigma.back() > 0.0 ? s.sigma.front() / s.sigma.back() : std::numeric_limits<double>::infinity();
    return rep;
}

void spectrum_dump(const KrylovDecomposition& dec, std::ostream& out) {
    out << "re,im,residual_bound\n";
    for (const auto& rp : ritz_pairs(dec))
        out << fmt17(rp.theta.real()) << ',' << fmt17(rp.theta.imag()) << ','
            << fmt17(rp.residual_bound()) << '\n';
}

void spectrum_dump(const KrylovDecomposition& dec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("spectrum_dump: cannot open " + path);
    spectrum_dump(dec, out);
    if (!out) throw std::runtime_error("spectrum_dump: write failed for " + path);
}

double eigenvalue_multiset_distance(std::vector<std::complex<double>> a,
                                    std::vector<std::complex<double>> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("eigenvalue_multiset_distance: size mismatch");
    const int n = static_cast<int>(a.size());
    if (n == 0) return 0.0;

    auto cost = [&](int i, int j) { return std::abs(a[static_cast<std::size_t>(i)] -
                                                    b[static_cast<std::size_t>(j)]); };

    // Hungarian algorithm (shortest augmenting paths with potentials).
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            int i0 = p[static_cast<std::size_t>(j0)], j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                             v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0);
    }

    double worst = 0.0;
    for (int j = 1; j <= n; ++j)
        worst = std::max(worst, cost(p[static_cast<std::size_t>(j)] - 1, j - 1));
    return worst;
}

} // namespace prnk
