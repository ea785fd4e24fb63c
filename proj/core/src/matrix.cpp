#include "prnk/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace prnk {

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double bkj = b(k, j);
            if (bkj == 0.0) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
        }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix difference: shape mismatch");
    Matrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

std::vector<double> matvec(const Matrix& m, std::span<const double> x) {
    if (x.size() != m.cols()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double xj = x[j];
        if (xj == 0.0) continue;
        auto cj = m.col(j);
        for (std::size_t i = 0; i < m.rows(); ++i) y[i] += cj[i] * xj;
    }
    return y;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

} // namespace prnk
