#include "prnk/vector_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace prnk {

namespace {
void require_nonempty(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("vector kernel on empty vector");
}
} // namespace

double sum(std::span<const double> x) {
    require_nonempty(x);
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double norm1(std::span<const double> x) {
    require_nonempty(x);
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

double norm2(std::span<const double> x) {
    require_nonempty(x);
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
    require_nonempty(x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

ArgmaxEntry norm_inf_with_argmax(std::span<const double> x) {
    require_nonempty(x);
    std::size_t best = 0;
    double best_abs = std::abs(x[0]);
    for (std::size_t i = 1; i < x.size(); ++i) {
        double a = std::abs(x[i]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return {best, x[best]};
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
    require_nonempty(x);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(double a, std::span<double> x) {
    require_nonempty(x);
    for (double& v : x) v *= a;
}

} // namespace prnk
