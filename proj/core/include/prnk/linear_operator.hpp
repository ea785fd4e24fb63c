#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prnk {

/// Matrix-free operator interface consumed by the Krylov processes and the
/// diagnostics. Implementations must be safe for concurrent apply calls.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual std::size_t dim() const = 0;

    /// y = A x. x and y must both have length dim() and may not alias.
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

    virtual double frobenius_norm() const = 0;

    std::vector<double> apply(std::span<const double> x) const {
        std::vector<double> y(dim());
        apply(x, y);
        return y;
    }
};

} // namespace prnk
