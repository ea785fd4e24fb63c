#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prnk/krylov.hpp"
#include "prnk/linear_operator.hpp"

namespace prnk {

/// QR relation between the Arnoldi and the pivoted Hessenberg
/// decompositions built from a common start vector: subdiagonal ratios,
/// the rank-one-corrected similarity identity and the distance between
/// the two projected spectra.
struct QrRelationReport {
    std::size_t m = 0;
    double ratio_lhs = 0.0;          // h^(h)_{m+1,m} / r_{m,m}
    double ratio_rhs = 0.0;          // h_{m+1,m} / r_{m+1,m+1}
    double identity_residual = 0.0;  // ||H_m - (R H^(h) R^-1 + ratio * r~ e_m^T)||_F
    double eig_distance = 0.0;       // max matched |lambda_i - mu_j| under min-cost matching
    double basis_condition = 0.0;    // kappa_2(L_{m+1}), for filtering ill-conditioned cases
};

/// ||A L_k - L_{k+1} Hbar_k||_F, absolute and normalized by
/// ||A||_F * ||L_k||_F.
struct DecompositionError {
    double absolute = 0.0;
    double normalized = 0.0;
};

DecompositionError decomposition_error(const LinearOperator& op, const KrylovDecomposition& dec);

/// 2-norm condition number of the basis via QR then SVD of R. Returns
/// +infinity when the basis is numerically rank deficient.
double basis_condition(const KrylovDecomposition& dec);

QrRelationReport verify_qr_relation(const LinearOperator& op, std::span<const double> q0, std::size_t m);

/// CSV rows (re, im, residual_bound) per Ritz pair, 17 significant digits.
void spectrum_dump(const KrylovDecomposition& dec, std::ostream& out);
void spectrum_dump(const KrylovDecomposition& dec, const std::string& path);

/// Bottleneck distance between two complex multisets under an optimal
/// (min total cost) assignment; used for spectrum comparisons.
double eigenvalue_multiset_distance(std::vector<std::complex<double>> a,
                                    std::vector<std::complex<double>> b);

} // namespace prnk
