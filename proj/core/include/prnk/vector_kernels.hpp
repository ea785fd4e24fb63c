#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prnk {

/// Index/value pair returned by the pivot search: the smallest index
/// attaining the maximal magnitude, together with the signed entry there.
struct ArgmaxEntry {
    std::size_t index;
    double value;
};

double sum(std::span<const double> x);
double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

/// max-magnitude scan; ties broken by the smallest index, signed value kept.
ArgmaxEntry norm_inf_with_argmax(std::span<const double> x);

/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

void scale(double a, std::span<double> x);

} // namespace prnk
