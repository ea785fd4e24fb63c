#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "prnk/linear_operator.hpp"
#include "prnk/matrix.hpp"

namespace prnk {

enum class ProcessKind { hessenberg, arnoldi };

/// Krylov decomposition A L_k = L_{k+1} Hbar_k. basis holds k+1 columns,
/// or only k when the process stopped with a vanishing last coefficient
/// (happy breakdown, including the full-dimension step k = n); in that
/// case the last row of hbar is zero and the identity closes with L_k.
struct KrylovDecomposition {
    ProcessKind kind = ProcessKind::hessenberg;
    Matrix basis;                     // n x (k+1), or n x k after breakdown
    Matrix hbar;                      // (k+1) x k
    std::vector<std::int64_t> pivots; // permutation p (hessenberg only), length n
    std::optional<std::size_t> breakdown_at; // 1-based step index
    std::size_t steps_completed = 0;         // k

    std::size_t dim() const { return basis.rows(); }
    bool has_last_column() const { return basis.cols() == steps_completed + 1; }
};

/// Approximate eigenpair lifted from the projected matrix H_k, with the
/// data for the residual bound |h_{k+1,k}| * |[y]_k| * ||l_{k+1}||_2.
struct RitzPair {
    std::complex<double> theta;
    std::vector<std::complex<double>> y; // length k, ||y||_2 = 1
    std::vector<std::complex<double>> x; // length n, basis * y
    std::complex<double> last_component; // [y]_k
    double h_next = 0.0;                 // h_{k+1,k}, signed
    double basis_tail_norm = 0.0;        // ||l_{k+1}||_2 (0 after breakdown)

    double residual_bound() const {
        return std::abs(h_next) * std::abs(last_component) * basis_tail_norm;
    }
};

/// Pivoted Hessenberg process. The start vector is normalized by its
/// signed max-magnitude entry (smallest index on ties); each step pivots
/// over the trailing permuted positions, keeping every basis column at
/// unit infinity norm and the permuted basis unit lower trapezoidal.
/// Breakdown is declared when the pivot magnitude drops to
/// 1e-13 * ||A l_j||_inf.
KrylovDecomposition hessenberg_process(const LinearOperator& op, std::span<const double> q0,
                                       std::size_t m);

/// Modified Gram-Schmidt Arnoldi. Breakdown when ||u||_2 <= 1e-13 * ||A v_j||_2.
/// The optional second orthogonalization pass is for diagnostics only.
KrylovDecomposition arnoldi_process(const LinearOperator& op, std::span<const double> q0,
                                    std::size_t m, bool reorthogonalize = false);

/// Eigenpairs of the leading k x k block of hbar, lifted through the basis.
/// Ordered by descending |theta| (ties by descending real part).
std::vector<RitzPair> ritz_pairs(const KrylovDecomposition& decomp);

} // namespace prnk
