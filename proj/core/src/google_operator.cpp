#include "prnk/google_operator.hpp"

#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>
#include <thread>

#include "prnk/vector_kernels.hpp"

namespace prnk {

namespace {

std::vector<double> uniform_teleport(NodeId n) {
    if (n <= 0) throw std::invalid_argument("GoogleOperator: empty transition matrix");
    std::vector<double> v(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    return v;
}

} // namespace

GoogleOperator::GoogleOperator(std::shared_ptr<const TransitionMatrix> p, double alpha)
    : p_(std::move(p)), alpha_(alpha), v_(uniform_teleport(p_->n)) {
    validate();
}

GoogleOperator::GoogleOperator(std::shared_ptr<const TransitionMatrix> p, double alpha,
                               std::vector<double> teleport)
    : p_(std::move(p)), alpha_(alpha), v_(std::move(teleport)) {
    validate();
}

void GoogleOperator::validate() {
    if (!(alpha_ > 0.0 && alpha_ < 1.0))
        throw std::invalid_argument("GoogleOperator: alpha must lie in (0,1)");
    if (!p_) throw std::invalid_argument("GoogleOperator: null transition matrix");
    if (v_.size() != static_cast<std::size_t>(p_->n))
        throw std::invalid_argument("GoogleOperator: teleport vector length mismatch");
    double s = 0.0;
    for (double x : v_) {
        if (!(x >= 0.0)) throw std::invalid_argument("GoogleOperator: teleport entries must be >= 0");
        s += x;
    }
    if (std::abs(s - 1.0) > 1e-10)
        throw std::invalid_argument("GoogleOperator: teleport vector 1-norm differs from 1");
    for (double& x : v_) x /= s;
}

void GoogleOperator::spmv_rows(std::span<const double> x, std::span<double> y,
                               std::size_t row_begin, std::size_t row_end) const {
    for (std::size_t i = row_begin; i < row_end; ++i) {
        double acc = 0.0;
        for (auto k = p_->row_ptr[i]; k < p_->row_ptr[i + 1]; ++k)
            acc += p_->val[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(p_->col[static_cast<std::size_t>(k)])];
        y[i] = acc;
    }
}

void GoogleOperator::apply(std::span<const double> x, std::span<double> y) const {
    const auto n = dim();
    if (x.size() != n || y.size() != n)
        throw std::invalid_argument("GoogleOperator::apply: dimension mismatch");

    double dangling_sum = 0.0;
    double full_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        full_sum += x[j];
        if (p_->dangling[j]) dangling_sum += x[j];
    }

    if (partitions_ <= 1 || n < 2 * partitions_) {
        spmv_rows(x, y, 0, n);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(partitions_);
        const std::size_t chunk = (n + partitions_ - 1) / partitions_;
        for (unsigned t = 0; t < partitions_; ++t) {
            std::size_t b = t * chunk;
            std::size_t e = std::min(n, b + chunk);
            if (b >= e) break;
            workers.emplace_back([this, x, y, b, e] { spmv_rows(x, y, b, e); });
        }
        for (auto& w : workers) w.join();
    }

    const double teleport_coeff = alpha_ * dangling_sum + (1.0 - alpha_) * full_sum;
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha_ * y[i] + teleport_coeff * v_[i];

    mvps_.fetch_add(1, std::memory_order_relaxed);
}

double GoogleOperator::frobenius_norm() const {
    // A(i,j) = alpha*P(i,j) + c_j*v_i with c_j = alpha*d_j + (1-alpha),
    // and P(i,j) = 0 on dangling columns, so the three sums split cleanly.
    const auto n = dim();
    double p_sq = 0.0;
    double cross = 0.0; // sum_i v_i * (row sum of P)
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (auto k = p_->row_ptr[i]; k < p_->row_ptr[i + 1]; ++k) {
            double pv = p_->val[static_cast<std::size_t>(k)];
            p_sq += pv * pv;
            row_sum += pv;
        }
        cross += v_[i] * row_sum;
    }
    std::size_t n_dangling = 0;
    for (auto d : p_->dangling) n_dangling += d;
    double v_sq = 0.0;
    for (double x : v_) v_sq += x * x;

    const double c_sq_sum = static_cast<double>(n_dangling) +
                            static_cast<double>(n - n_dangling) * (1.0 - alpha_) * (1.0 - alpha_);
    double total = alpha_ * alpha_ * p_sq + 2.0 * alpha_ * (1.0 - alpha_) * cross + c_sq_sum * v_sq;
    return std::sqrt(total);
}

std::pair<std::vector<double>, double> residual_direct(const GoogleOperator& op,
                                                       std::span<const double> q) {
    double qn = norm1(q);
    if (qn == 0.0) throw std::invalid_argument("residual_direct: zero vector");
    std::vector<double> r = op.apply(q);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= q[i];
    double ratio = norm1(r) / qn;
    return {std::move(r), ratio};
}

std::vector<double> read_teleport_file(std::istream& in, std::size_t n) {
    std::vector<double> v;
    v.reserve(n);
    double x;
    while (in >> x) v.push_back(x);
    if (v.size() != n)
        throw std::runtime_error("teleport file: expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(v.size()));
    return v;
}

} // namespace prnk
