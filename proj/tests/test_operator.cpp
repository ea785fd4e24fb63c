#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <prnk/google_operator.hpp>
#include <prnk/vector_kernels.hpp>

#include "support/test_support.hpp"

using namespace prnk;

namespace {

GoogleOperator make_op(const std::string& edges, double alpha) {
    std::istringstream in(edges);
    return {build_transition(parse_edge_list(in)), alpha};
}

TransitionMatrix no_link_transition(NodeId n) {
    // All nodes dangling: P = 0, d = e.
    TransitionMatrix t;
    t.n = n;
    t.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    t.dangling.assign(static_cast<std::size_t>(n), 1);
    return t;
}

} // namespace

TEST_CASE("vector kernels") {
    std::vector<double> v{1.0, -2.0, 2.0};
    auto [idx, val] = norm_inf_with_argmax(v);
    CHECK(idx == 1); // tie with |2| broken by the smallest index
    CHECK(val == -2.0);

    CHECK(norm1(std::vector<double>{0.3, -0.7}) == doctest::Approx(1.0).epsilon(1e-15));

    // Hand trace of the first elimination in the 2x2 pivoted process.
    std::vector<double> u{1.0, 0.5};
    std::vector<double> l1{0.5, 1.0};
    axpy(-0.5, l1, u);
    CHECK(u[0] == 0.75);
    CHECK(u[1] == 0.0);

    CHECK(sum(std::vector<double>{1.0, 2.0, 3.5}) == 6.5);
    std::vector<double> w{2.0, -4.0};
    scale(0.5, w);
    CHECK(w == std::vector<double>{1.0, -2.0});

    std::vector<double> empty;
    CHECK_THROWS_AS(norm1(empty), std::invalid_argument);
    CHECK_THROWS_AS(norm_inf_with_argmax(empty), std::invalid_argument);
    CHECK_THROWS_AS(sum(empty), std::invalid_argument);
}

TEST_CASE("apply_google: no-link graph collapses to the teleport vector") {
    GoogleOperator op(no_link_transition(4), 0.85);
    std::vector<double> x(4, 0.25);
    auto y = op.apply(x);
    for (double v : y) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(op.work().mvp == 1);
}

TEST_CASE("apply_google: 3-cycle fixed point") {
    GoogleOperator op = make_op("0 1\n1 2\n2 0\n", 0.85);
    std::vector<double> x(3, 1.0 / 3.0);
    auto y = op.apply(x);
    for (std::size_t i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-15));
}

TEST_CASE("apply_google: dangling example against dense assembly") {
    GoogleOperator op = make_op("0 1\n", 0.85);
    std::vector<double> x{1.0, 0.0};
    auto y = op.apply(x);
    CHECK(y[0] == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.925).epsilon(1e-15));

    // Dense oracle for the same column.
    Matrix a = test::dense_google(op);
    CHECK(a(0, 0) == doctest::Approx(0.075));
    CHECK(a(1, 0) == doctest::Approx(0.925));

    std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(op.apply(wrong), std::invalid_argument);
}

TEST_CASE("residual_direct") {
    SUBCASE("exact eigenvector") {
        GoogleOperator op = make_op("0 1\n1 2\n2 0\n", 0.85);
        std::vector<double> q(3, 1.0 / 3.0);
        auto [r, ratio] = residual_direct(op, q);
        CHECK(ratio <= 1e-15);
    }
    SUBCASE("teleport vector on the no-link graph") {
        GoogleOperator op(no_link_transition(3), 0.85);
        auto [r, ratio] = residual_direct(op, op.teleport());
        CHECK(ratio <= 1e-15);
    }
    SUBCASE("dangling example, hand values") {
        GoogleOperator op = make_op("0 1\n", 0.85);
        std::vector<double> q{0.5, 0.5};
        auto [r, ratio] = residual_direct(op, q);
        CHECK(r[0] == doctest::Approx(-0.2125).epsilon(1e-14));
        CHECK(r[1] == doctest::Approx(0.2125).epsilon(1e-14));
        CHECK(ratio == doctest::Approx(0.425).epsilon(1e-14));
    }
    SUBCASE("zero vector rejected") {
        GoogleOperator op = make_op("0 1\n", 0.85);
        std::vector<double> zero(2, 0.0);
        CHECK_THROWS_AS(residual_direct(op, zero), std::invalid_argument);
    }
}

TEST_CASE("operator validation") {
    auto t = no_link_transition(2);
    CHECK_THROWS_AS(GoogleOperator(t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(GoogleOperator(t, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GoogleOperator(t, 0.85, std::vector<double>{0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(GoogleOperator(t, 0.85, std::vector<double>{-0.1, 1.1}), std::invalid_argument);

    // Slightly off 1-norm within 1e-10 is renormalized exactly.
    GoogleOperator ok(t, 0.85, std::vector<double>{0.5 + 2e-11, 0.5});
    CHECK(std::abs(sum(ok.teleport()) - 1.0) <= 1e-14);
}

TEST_CASE("teleport file reader") {
    std::istringstream in("0.25\n0.75\n");
    auto v = read_teleport_file(in, 2);
    CHECK(v == std::vector<double>{0.25, 0.75});
    std::istringstream short_file("0.25\n");
    CHECK_THROWS_AS(read_teleport_file(short_file, 2), std::runtime_error);
}

TEST_CASE("property: column stochasticity on random graphs") {
    std::mt19937 rng(404);
    Graph g = test::random_graph(rng, 30, 150);
    GoogleOperator op(build_transition(g), 0.9);
    for (int t = 0; t < 100; ++t) {
        auto x = test::random_vector(rng, op.dim());
        auto y = op.apply(x);
        CHECK(std::abs(sum(y) - sum(x)) <= 1e-13 * norm1(x));
    }
}

TEST_CASE("property: matrix-free apply matches dense assembly") {
    std::mt19937 rng(505);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = test::random_graph(rng, 5, 200);
        GoogleOperator op(build_transition(g), 0.85);
        Matrix a = test::dense_google(op);
        auto x = test::random_vector(rng, op.dim());
        auto y = op.apply(x);
        for (std::size_t i = 0; i < op.dim(); ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < op.dim(); ++j) acc += a(i, j) * x[j];
            CHECK(std::abs(y[i] - acc) <= 1e-13);
        }
    }
}

TEST_CASE("property: positivity and linearity") {
    std::mt19937 rng(606);
    Graph g = test::random_graph(rng, 20, 80);
    GoogleOperator op(build_transition(g), 0.85);
    const std::size_t n = op.dim();

    auto xpos = test::random_vector(rng, n, 0.0, 1.0);
    for (double v : op.apply(xpos)) CHECK(v >= 0.0);

    auto x = test::random_vector(rng, n);
    auto y = test::random_vector(rng, n);
    double a = 0.7, b = -1.3;
    std::vector<double> combo(n);
    for (std::size_t i = 0; i < n; ++i) combo[i] = a * x[i] + b * y[i];
    auto lhs = op.apply(combo);
    auto ax = op.apply(x);
    auto ay = op.apply(y);
    double scale_ref = norm1(lhs);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(lhs[i] - (a * ax[i] + b * ay[i])) <= 1e-12 * std::max(1.0, scale_ref));
}

TEST_CASE("parallel partitions are bitwise identical to serial") {
    std::mt19937 rng(707);
    Graph g = test::random_graph(rng, 100, 200);
    GoogleOperator serial(build_transition(g), 0.85);
    GoogleOperator parallel(build_transition(g), 0.85);
    parallel.set_partitions(4);
    auto x = test::random_vector(rng, serial.dim(), 0.0, 1.0);
    auto y1 = serial.apply(x);
    auto y2 = parallel.apply(x);
    CHECK(y1 == y2);
}

TEST_CASE("frobenius norm matches dense assembly") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = test::random_graph(rng, 5, 60);
        GoogleOperator op(build_transition(g), 0.85);
        double dense = frobenius_norm(test::dense_google(op));
        CHECK(op.frobenius_norm() == doctest::Approx(dense).epsilon(1e-12));
    }
}
