#pragma once

// Shared fixtures for the unit and acceptance suites: dense reference
// operators, the dense power-iteration oracle, seeded random graphs and
// closed-form characteristic-polynomial roots. Everything here is kept
// independent of the library's Krylov/solver code paths so it can serve
// as an oracle for them.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <prnk/google_operator.hpp>
#include <prnk/graph.hpp>
#include <prnk/linear_operator.hpp>
#include <prnk/matrix.hpp>

namespace prnk::test {

class DenseOperator final : public LinearOperator {
public:
    explicit DenseOperator(Matrix a) : a_(std::move(a)) {
        if (a_.rows() != a_.cols()) throw std::invalid_argument("DenseOperator: square required");
    }
    using LinearOperator::apply;
    std::size_t dim() const override { return a_.rows(); }
    void apply(std::span<const double> x, std::span<double> y) const override {
        for (std::size_t i = 0; i < a_.rows(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < a_.cols(); ++j) acc += a_(i, j) * x[j];
            y[i] = acc;
        }
    }
    double frobenius_norm() const override { return prnk::frobenius_norm(a_); }
    const Matrix& matrix() const { return a_; }

private:
    Matrix a_;
};

/// Dense assembly A = alpha (P + v d^T) + (1 - alpha) v e^T.
inline Matrix dense_google(const TransitionMatrix& p, double alpha, const std::vector<double>& v) {
    const auto n = static_cast<std::size_t>(p.n);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto k = p.row_ptr[i]; k < p.row_ptr[i + 1]; ++k)
            a(i, static_cast<std::size_t>(p.col[static_cast<std::size_t>(k)])) =
                alpha * p.val[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < n; ++j) {
        double c = (p.dangling[j] ? alpha : 0.0) + (1.0 - alpha);
        for (std::size_t i = 0; i < n; ++i) a(i, j) += c * v[i];
    }
    return a;
}

inline Matrix dense_google(const GoogleOperator& op) {
    return dense_google(op.transition(), op.alpha(), op.teleport());
}

/// Dense power-iteration PageRank oracle, run to a tight tolerance.
inline std::vector<double> dense_pagerank_oracle(const Matrix& a, double tol = 1e-13) {
    const std::size_t n = a.rows();
    std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
    for (long it = 0; it < 1000000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
            y[i] = acc;
        }
        double s = 0.0;
        for (double v : y) s += std::abs(v);
        for (double& v : y) v /= s;
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += std::abs(y[i] - x[i]);
        x = y;
        if (delta < tol) return x;
    }
    throw std::runtime_error("dense_pagerank_oracle: did not converge");
}

/// Seeded random link graph: dangling_fraction of the nodes have no
/// out-links, the rest draw ~Poisson(expected_degree) distinct targets.
inline Graph random_graph(std::mt19937& rng, int nmin, int nmax, double expected_degree = 5.0,
                          double dangling_fraction = 0.1) {
    std::uniform_int_distribution<int> nd(nmin, nmax);
    const int n = nd(rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::poisson_distribution<int> deg(expected_degree);
    std::uniform_int_distribution<int> pick(0, n - 1);

    Graph g;
    g.n = n;
    g.original_ids.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.original_ids[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < n; ++j) {
        if (coin(rng) < dangling_fraction) continue;
        int d = std::max(1, std::min(deg(rng), n));
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < d) targets.insert(pick(rng));
        for (int t : targets) g.edges.emplace_back(j, t);
    }
    g.out_degree.assign(static_cast<std::size_t>(n), 0);
    for (const auto& [s, d] : g.edges) {
        (void)d;
        ++g.out_degree[static_cast<std::size_t>(s)];
    }
    return g;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double lo = -1.0,
                            double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix m(rows, cols);
    for (auto& v : m.data()) v = dist(rng);
    return m;
}

inline std::vector<double> random_vector(std::mt19937& rng, std::size_t n, double lo = -1.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

inline std::vector<std::complex<double>> char_poly_roots_2x2(const Matrix& a) {
    // lambda^2 - tr lambda + det
    const std::complex<double> tr = a(0, 0) + a(1, 1);
    const std::complex<double> det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

inline std::vector<std::complex<double>> char_poly_roots_3x3(const Matrix& m) {
    // lambda^3 + a lambda^2 + b lambda + c, solved by Cardano in complex
    // arithmetic.
    const double tr = m(0, 0) + m(1, 1) + m(2, 2);
    const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                          m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    const double a = -tr, b = minors, c = -det;

    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    std::vector<std::complex<double>> roots;
    if (p == 0.0 && q == 0.0) {
        roots.assign(3, {-a / 3.0, 0.0});
        return roots;
    }
    const std::complex<double> s = std::sqrt(std::complex<double>(q * q / 4.0 + p * p * p / 27.0));
    std::complex<double> u = std::pow(-q / 2.0 + s, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - s, 1.0 / 3.0);
    const std::complex<double> w(-0.5, std::sqrt(3.0) / 2.0);
    std::complex<double> uk = u;
    for (int k = 0; k < 3; ++k) {
        roots.push_back(uk - p / (3.0 * uk) - a / 3.0);
        uk *= w;
    }
    return roots;
}

inline std::string data_dir() {
    if (const char* env = std::getenv("PRNK_DATA_DIR")) return env;
    return "data";
}

/// Path to a dataset file, or empty when absent (tests skip).
inline std::string dataset_path(const std::string& filename) {
    for (const auto& base : {data_dir(), std::string("../data"), std::string("../../data")}) {
        std::string p = base + "/" + filename;
        if (std::ifstream(p).good()) return p;
    }
    return {};
}

} // namespace prnk::test
