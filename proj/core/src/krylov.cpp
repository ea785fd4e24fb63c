#include "prnk/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "prnk/dense_kernels.hpp"
#include "prnk/vector_kernels.hpp"

namespace prnk {

namespace {

constexpr double kBreakdownRelTol = 1e-13;

void check_start(const LinearOperator& op, std::span<const double> q0, std::size_t m) {
    const std::size_t n = op.dim();
    if (q0.size() != n) throw std::invalid_argument("krylov process: start vector length mismatch");
    if (m < 1 || m > n) throw std::invalid_argument("krylov process: m out of range [1, n]");
    bool all_zero = true;
    for (double x : q0)
        if (x != 0.0) {
            all_zero = false;
            break;
        }
    if (all_zero) throw std::invalid_argument("krylov process: zero start vector");
}

void shrink_basis(Matrix& basis, std::size_t cols) {
    Matrix b(basis.rows(), cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < basis.rows(); ++i) b(i, j) = basis(i, j);
    basis = std::move(b);
}

void shrink_hbar(Matrix& hbar, std::size_t k) {
    Matrix h(k + 1, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i <= k; ++i) h(i, j) = hbar(i, j);
    hbar = std::move(h);
}

} // namespace

KrylovDecomposition hessenberg_process(const LinearOperator& op, std::span<const double> q0,
                                       std::size_t m) {
    check_start(op, q0, m);
    const std::size_t n = op.dim();

    KrylovDecomposition dec;
    dec.kind = ProcessKind::hessenberg;
    dec.basis = Matrix(n, m + 1);
    dec.hbar = Matrix(m + 1, m);
    dec.pivots.resize(n);
    std::iota(dec.pivots.begin(), dec.pivots.end(), std::int64_t{0});
    auto& p = dec.pivots;

    auto [i0, beta] = norm_inf_with_argmax(q0);
    for (std::size_t i = 0; i < n; ++i) dec.basis(i, 0) = q0[i] / beta;
    std::swap(p[0], p[i0]);

    std::vector<double> u(n);
    for (std::size_t j = 0; j < m; ++j) {
        op.apply(dec.basis.col(j), u);
        const double u_inf = std::abs(norm_inf_with_argmax(u).value);

        for (std::size_t i = 0; i <= j; ++i) {
            double hij = u[static_cast<std::size_t>(p[i])];
            dec.hbar(i, j) = hij;
            if (hij != 0.0) axpy(-hij, dec.basis.col(i), u);
        }

        // Pivot search over the trailing permuted positions.
        std::size_t best = j + 1;
        double best_abs = -1.0;
        for (std::size_t i = j + 1; i < n; ++i) {
            double a = std::abs(u[static_cast<std::size_t>(p[i])]);
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }

        if (j + 1 < n && best_abs > kBreakdownRelTol * u_inf && best_abs > 0.0) {
            double pivot = u[static_cast<std::size_t>(p[best])];
            dec.hbar(j + 1, j) = pivot;
            for (std::size_t i = 0; i < n; ++i) dec.basis(i, j + 1) = u[i] / pivot;
            std::swap(p[j + 1], p[best]);
            dec.steps_completed = j + 1;
        } else {
            dec.hbar(j + 1, j) = 0.0;
            dec.steps_completed = j + 1;
            dec.breakdown_at = j + 1;
            break;
        }
    }

    const std::size_t k = dec.steps_completed;
    if (dec.breakdown_at) {
        shrink_basis(dec.basis, k);
        if (k < m) shrink_hbar(dec.hbar, k);
    }
    return dec;
}

KrylovDecomposition arnoldi_process(const LinearOperator& op, std::span<const double> q0,
                                    std::size_t m, bool reorthogonalize) {
    check_start(op, q0, m);
    const std::size_t n = op.dim();

    KrylovDecomposition dec;
    dec.kind = ProcessKind::arnoldi;
    dec.basis = Matrix(n, m + 1);
    dec.hbar = Matrix(m + 1, m);

    const double q0n = norm2(q0);
    for (std::size_t i = 0; i < n; ++i) dec.basis(i, 0) = q0[i] / q0n;

    std::vector<double> u(n);
    for (std::size_t j = 0; j < m; ++j) {
        op.apply(dec.basis.col(j), u);
        const double u0 = norm2(u);

        for (std::size_t i = 0; i <= j; ++i) {
            double hij = dot(u, dec.basis.col(i));
            dec.hbar(i, j) = hij;
            axpy(-hij, dec.basis.col(i), u);
        }
        if (reorthogonalize) {
            for (std::size_t i = 0; i <= j; ++i) {
                double corr = dot(u, dec.basis.col(i));
                dec.hbar(i, j) += corr;
                axpy(-corr, dec.basis.col(i), u);
            }
        }

        const double un = norm2(u);
        if (j + 1 < n && un > kBreakdownRelTol * u0 && un > 0.0) {
            dec.hbar(j + 1, j) = un;
            for (std::size_t i = 0; i < n; ++i) dec.basis(i, j + 1) = u[i] / un;
            dec.steps_completed = j + 1;
        } else {
            dec.hbar(j + 1, j) = 0.0;
            dec.steps_completed = j + 1;
            dec.breakdown_at = j + 1;
            break;
        }
    }

    const std::size_t k = dec.steps_completed;
    if (dec.breakdown_at) {
        shrink_basis(dec.basis, k);
        if (k < m) shrink_hbar(dec.hbar, k);
    }
    return dec;
}

std::vector<RitzPair> ritz_pairs(const KrylovDecomposition& dec) {
    const std::size_t k = dec.steps_completed;
    if (k < 1) throw std::invalid_argument("ritz_pairs: empty decomposition");
    const std::size_t n = dec.dim();

    Matrix hk = dec.hbar.block(k, k);
    auto eig = hessenberg_eig(hk);

    const double h_next = dec.hbar(k, k - 1);
    const bool tail = dec.has_last_column();
    const double tail_norm = tail ? norm2(dec.basis.col(k)) : 0.0;

    std::vector<RitzPair> out;
    out.reserve(eig.size());
    for (auto& ep : eig) {
        RitzPair rp;
        rp.theta = ep.value;
        rp.y = std::move(ep.vec);
        rp.last_component = rp.y[k - 1];
        rp.h_next = h_next;
        rp.basis_tail_norm = tail_norm;
        rp.x.assign(n, {0.0, 0.0});
        for (std::size_t j = 0; j < k; ++j) {
            const auto yj = rp.y[j];
            if (yj == std::complex<double>{}) continue;
            auto cj = dec.basis.col(j);
            for (std::size_t i = 0; i < n; ++i) rp.x[i] += yj * cj[i];
        }
        out.push_back(std::move(rp));
    }

    std::sort(out.begin(), out.end(), [](const RitzPair& a, const RitzPair& b) {
        double ma = std::abs(a.theta), mb = std::abs(b.theta);
        if (ma != mb) return ma > mb;
        if (a.theta.real() != b.theta.real()) return a.theta.real() > b.theta.real();
        return a.theta.imag() > b.theta.imag();
    });
    return out;
}

} // namespace prnk
