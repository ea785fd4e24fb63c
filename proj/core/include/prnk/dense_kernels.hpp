#pragma once

#include <complex>
#include <vector>

#include "prnk/matrix.hpp"

namespace prnk {

struct Svd {
    Matrix u;                  // rows x cols, orthonormal columns
    std::vector<double> sigma; // descending, >= 0
    Matrix v;                  // cols x cols, orthogonal
};

struct SingularTriplet {
    double sigma = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

struct Eigenpair {
    std::complex<double> value;
    std::vector<std::complex<double>> vec; // ||.||_2 = 1
};

struct Qr {
    Matrix q; // rows x cols, orthonormal columns
    Matrix r; // cols x cols, upper triangular, positive diagonal
};

/// Thin SVD by Golub-Reinsch: Householder bidiagonalization followed by
/// implicit-shift QR on the bidiagonal. Requires rows >= cols and finite
/// entries. Each right singular vector is sign-fixed so its largest-
/// magnitude entry is positive.
Svd svd(const Matrix& m);

/// Triplet for the minimal singular value; ties on equal sigma are broken
/// towards the largest index, and (u, v) are flipped together so that
/// sum(v) >= 0.
SingularTriplet smallest_singular_triplet(const Matrix& m);

/// All eigenvalues and right eigenvectors of an upper-Hessenberg matrix by
/// the implicitly double-shifted QR iteration. Complex pairs come out as
/// conjugates. Throws after 100*m sweeps without deflation.
std::vector<Eigenpair> hessenberg_eig(const Matrix& h);

/// General dense eigenproblem: orthogonal reduction to Hessenberg form,
/// then hessenberg_eig.
std::vector<Eigenpair> dense_eig(const Matrix& a);

/// Reduced (thin) Householder QR with the positive-diagonal sign
/// convention. Throws if some |r_jj| falls below 1e-12 * ||L||_F.
Qr qr_reduced(const Matrix& l);

} // namespace prnk
