#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "prnk/graph.hpp"
#include "prnk/linear_operator.hpp"

namespace prnk {

/// Running totals of operator work. mvp counts applications of the full
/// Google operator; the flop model follows the 2*Nz-per-mvp convention.
struct WorkCounter {
    std::uint64_t mvp = 0;
    std::uint64_t model_flops = 0;
};

/// The Google matrix A = alpha*(P + v d^T) + (1-alpha)*v e^T, applied
/// matrix-free: one sparse mvp, a dangling sum, a full sum and one fused
/// scale-add pass. Immutable after construction; apply() is const and
/// thread-safe. Row partitioning is opt-in (set_partitions), with bitwise
/// identical output for any partition count.
class GoogleOperator final : public LinearOperator {
public:
    /// Uniform teleport vector. The transition matrix may be shared
    /// across operators (an alpha sweep over one graph).
    GoogleOperator(std::shared_ptr<const TransitionMatrix> p, double alpha);
    GoogleOperator(TransitionMatrix p, double alpha)
        : GoogleOperator(std::make_shared<const TransitionMatrix>(std::move(p)), alpha) {}
    /// Caller-supplied teleport vector: validated (entries >= 0,
    /// |sum - 1| <= 1e-10) then renormalized to unit 1-norm.
    GoogleOperator(std::shared_ptr<const TransitionMatrix> p, double alpha,
                   std::vector<double> teleport);
    GoogleOperator(TransitionMatrix p, double alpha, std::vector<double> teleport)
        : GoogleOperator(std::make_shared<const TransitionMatrix>(std::move(p)), alpha,
                         std::move(teleport)) {}

    std::size_t dim() const override { return static_cast<std::size_t>(p_->n); }
    void apply(std::span<const double> x, std::span<double> y) const override;
    using LinearOperator::apply;
    double frobenius_norm() const override;

    double alpha() const { return alpha_; }
    const std::vector<double>& teleport() const { return v_; }
    const TransitionMatrix& transition() const { return *p_; }

    void set_partitions(unsigned parts) { partitions_ = parts == 0 ? 1 : parts; }
    unsigned partitions() const { return partitions_; }

    WorkCounter work() const {
        return {mvps_.load(std::memory_order_relaxed),
                mvps_.load(std::memory_order_relaxed) * 2 * static_cast<std::uint64_t>(p_->nnz())};
    }

private:
    void validate();
    void spmv_rows(std::span<const double> x, std::span<double> y, std::size_t row_begin,
                   std::size_t row_end) const;

    std::shared_ptr<const TransitionMatrix> p_;
    double alpha_;
    std::vector<double> v_;
    unsigned partitions_ = 1;
    mutable std::atomic<std::uint64_t> mvps_{0};
};

/// r = A q - q together with ||r||_1 / ||q||_1 (the direct stopping
/// criterion). Costs one counted operator application.
std::pair<std::vector<double>, double> residual_direct(const GoogleOperator& op,
                                                       std::span<const double> q);

/// One float per line, exactly n of them.
std::vector<double> read_teleport_file(std::istream& in, std::size_t n);

} // namespace prnk
