#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <prnk/dense_kernels.hpp>
#include <prnk/diagnostics.hpp>

#include "support/test_support.hpp"

using namespace prnk;

namespace {

Matrix reconstruct(const Svd& s) {
    Matrix rec(s.u.rows(), s.v.rows());
    for (std::size_t i = 0; i < rec.rows(); ++i)
        for (std::size_t j = 0; j < rec.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < s.sigma.size(); ++k) acc += s.u(i, k) * s.sigma[k] * s.v(j, k);
            rec(i, j) = acc;
        }
    return rec;
}

std::vector<std::complex<double>> values_of(const std::vector<Eigenpair>& ps) {
    std::vector<std::complex<double>> v;
    for (const auto& p : ps) v.push_back(p.value);
    return v;
}

} // namespace

TEST_CASE("svd: zero matrix") {
    Matrix z(5, 3);
    Svd s = svd(z);
    for (double sig : s.sigma) CHECK(sig == 0.0);
    CHECK(s.v == Matrix::identity(3));
}

TEST_CASE("svd: [I; 0] has unit singular values") {
    Matrix m(6, 4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
    Svd s = svd(m);
    for (double sig : s.sigma) CHECK(sig == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd: single column closed form") {
    Matrix m(2, 1);
    m(0, 0) = -0.5;
    m(1, 0) = 0.75;
    Svd s = svd(m);
    CHECK(s.sigma[0] == doctest::Approx(std::sqrt(0.8125)).epsilon(1e-15));
    CHECK(s.v(0, 0) == doctest::Approx(1.0));
    CHECK(s.u(0, 0) == doctest::Approx(-0.5547001962252291).epsilon(1e-12));
    CHECK(s.u(1, 0) == doctest::Approx(0.8320502943378437).epsilon(1e-12));
}

TEST_CASE("svd: preconditions") {
    Matrix wide(2, 3);
    CHECK_THROWS_AS(svd(wide), std::invalid_argument);
    Matrix bad(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), std::invalid_argument);
}

TEST_CASE("property: svd reconstruction and orthogonality") {
    std::mt19937 rng(11);
    double worst = 0.0;
    for (int t = 0; t < 300; ++t) {
        std::uniform_int_distribution<std::size_t> cd(1, 32);
        std::size_t c = cd(rng);
        std::uniform_int_distribution<std::size_t> rd(c, 33);
        Matrix m = test::random_matrix(rng, rd(rng), c);
        Svd s = svd(m);
        double fn = frobenius_norm(m);
        worst = std::max(worst, frobenius_norm(reconstruct(s) - m) / fn);
        CHECK(frobenius_norm(s.u.transposed() * s.u - Matrix::identity(c)) <= 1e-13);
        CHECK(frobenius_norm(s.v.transposed() * s.v - Matrix::identity(c)) <= 1e-13);
        for (std::size_t k = 0; k + 1 < c; ++k) CHECK(s.sigma[k] >= s.sigma[k + 1]);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("property: singular values match eigenvalues of M^T M") {
    std::mt19937 rng(12);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> cd(1, 8);
        std::size_t c = cd(rng);
        Matrix m = test::random_matrix(rng, c + 2, c);
        Svd s = svd(m);
        auto gram_eigs = values_of(dense_eig(m.transposed() * m));
        std::vector<std::complex<double>> sq;
        for (double sig : s.sigma) sq.emplace_back(sig * sig, 0.0);
        double dist = eigenvalue_multiset_distance(sq, gram_eigs);
        CHECK(dist <= 1e-9 * std::max(1.0, s.sigma.front() * s.sigma.front()));
    }
}

TEST_CASE("smallest_singular_triplet") {
    SUBCASE("converged shift: zero matrix returns e_m") {
        Matrix z(5, 4);
        SingularTriplet t = smallest_singular_triplet(z);
        CHECK(t.sigma == 0.0);
        CHECK(t.v == std::vector<double>{0, 0, 0, 1});
    }
    SUBCASE("single column example") {
        Matrix m(2, 1);
        m(0, 0) = -0.5;
        m(1, 0) = 0.75;
        SingularTriplet t = smallest_singular_triplet(m);
        CHECK(t.sigma == doctest::Approx(0.9013878188659973).epsilon(1e-14));
    }
    SUBCASE("matches the last svd column and keeps sum(v) >= 0") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix m = test::random_matrix(rng, 6, 5);
            Svd s = svd(m);
            SingularTriplet t = smallest_singular_triplet(m);
            CHECK(t.sigma == s.sigma.back());
            double vsum = 0.0;
            for (double v : t.v) vsum += v;
            CHECK(vsum >= 0.0);
            double flip = 0.0;
            for (std::size_t i = 0; i < 5; ++i) flip += t.v[i] * s.v(i, 4);
            double sgn = flip >= 0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < 5; ++i)
                CHECK(std::abs(t.v[i] - sgn * s.v(i, 4)) <= 1e-12);
            for (std::size_t i = 0; i < 6; ++i)
                CHECK(std::abs(t.u[i] - sgn * s.u(i, 4)) <= 1e-12);
        }
    }
    SUBCASE("triplet satisfies both residual identities") {
        std::mt19937 rng(14);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix m = test::random_matrix(rng, 9, 8);
            SingularTriplet t = smallest_singular_triplet(m);
            double nm = frobenius_norm(m);
            std::vector<double> mv(9, 0.0), mtu(8, 0.0);
            for (std::size_t i = 0; i < 9; ++i)
                for (std::size_t j = 0; j < 8; ++j) {
                    mv[i] += m(i, j) * t.v[j];
                    mtu[j] += m(i, j) * t.u[i];
                }
            double r1 = 0.0, r2 = 0.0;
            for (std::size_t i = 0; i < 9; ++i) r1 += (mv[i] - t.sigma * t.u[i]) * (mv[i] - t.sigma * t.u[i]);
            for (std::size_t j = 0; j < 8; ++j) r2 += (mtu[j] - t.sigma * t.v[j]) * (mtu[j] - t.sigma * t.v[j]);
            CHECK(std::sqrt(r1) <= 1e-12 * nm);
            CHECK(std::sqrt(r2) <= 1e-12 * nm);
        }
    }
}

TEST_CASE("hessenberg_eig: hand cases") {
    SUBCASE("2x2 with spectrum {1,-1}") {
        Matrix h(2, 2);
        h(0, 0) = 0.5;
        h(0, 1) = 1.0;
        h(1, 0) = 0.75;
        h(1, 1) = -0.5;
        auto e = hessenberg_eig(h);
        REQUIRE(e.size() == 2);
        std::vector<std::complex<double>> expect{{1, 0}, {-1, 0}};
        CHECK(eigenvalue_multiset_distance(values_of(e), expect) <= 1e-12);
    }
    SUBCASE("upper triangular: diagonal spectrum") {
        Matrix h(3, 3);
        h(0, 0) = 2.0;
        h(0, 1) = 5.0;
        h(0, 2) = -1.0;
        h(1, 1) = -3.0;
        h(1, 2) = 0.5;
        h(2, 2) = 7.0;
        auto e = hessenberg_eig(h);
        std::vector<std::complex<double>> expect{{2, 0}, {-3, 0}, {7, 0}};
        CHECK(eigenvalue_multiset_distance(values_of(e), expect) <= 1e-12);
    }
    SUBCASE("rotation: conjugate pair {i,-i}") {
        Matrix h(2, 2);
        h(0, 1) = -1.0;
        h(1, 0) = 1.0;
        auto e = hessenberg_eig(h);
        std::vector<std::complex<double>> expect{{0, 1}, {0, -1}};
        CHECK(eigenvalue_multiset_distance(values_of(e), expect) <= 1e-12);
    }
}

TEST_CASE("hessenberg_eig: eigenpair residuals and char-poly cross-check") {
    std::mt19937 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix a2 = test::random_matrix(rng, 2, 2);
        CHECK(eigenvalue_multiset_distance(values_of(hessenberg_eig(a2)),
                                           test::char_poly_roots_2x2(a2)) <= 1e-10);

        // 3x3 random upper Hessenberg
        Matrix a3 = test::random_matrix(rng, 3, 3);
        a3(2, 0) = 0.0;
        CHECK(eigenvalue_multiset_distance(values_of(hessenberg_eig(a3)),
                                           test::char_poly_roots_3x3(a3)) <= 1e-10);
    }
}

TEST_CASE("hessenberg_eig: spectrum invariant under diagonal similarity") {
    std::mt19937 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> nd(2, 10);
        std::size_t n = nd(rng);
        Matrix h = test::random_matrix(rng, n, n);
        for (std::size_t j = 0; j + 2 < n; ++j)
            for (std::size_t i = j + 2; i < n; ++i) h(i, j) = 0.0;
        std::uniform_real_distribution<double> sd(0.5, 2.0);
        std::vector<double> d(n);
        for (auto& v : d) v = sd(rng);
        Matrix scaled(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scaled(i, j) = d[i] * h(i, j) / d[j];
        double dist = eigenvalue_multiset_distance(values_of(hessenberg_eig(h)),
                                                   values_of(hessenberg_eig(scaled)));
        CHECK(dist <= 1e-9);
    }
}

TEST_CASE("qr_reduced") {
    SUBCASE("orthonormal input: Q = input, R = I") {
        Matrix q0(4, 2);
        q0(0, 0) = 1.0;
        q0(2, 1) = 1.0;
        Qr qr = qr_reduced(q0);
        CHECK(frobenius_norm(qr.q - q0) <= 1e-14);
        CHECK(frobenius_norm(qr.r - Matrix::identity(2)) <= 1e-14);
    }
    SUBCASE("permuted diagonal: positive diagonal R") {
        Matrix l(2, 2);
        l(1, 0) = 2.0;
        l(0, 1) = 3.0;
        Qr qr = qr_reduced(l);
        CHECK(qr.r(0, 0) > 0.0);
        CHECK(qr.r(1, 1) > 0.0);
        CHECK(frobenius_norm(qr.q * qr.r - l) <= 1e-14);
    }
    SUBCASE("random 50x6 residual and orthogonality") {
        std::mt19937 rng(17);
        for (int t = 0; t < 20; ++t) {
            Matrix l = test::random_matrix(rng, 50, 6);
            Qr qr = qr_reduced(l);
            CHECK(frobenius_norm(qr.q * qr.r - l) <= 1e-12 * frobenius_norm(l));
            CHECK(frobenius_norm(qr.q.transposed() * qr.q - Matrix::identity(6)) <= 1e-12);
            for (std::size_t j = 0; j < 6; ++j) CHECK(qr.r(j, j) > 0.0);
        }
    }
    SUBCASE("rank deficiency rejected") {
        Matrix l(4, 2);
        l(0, 0) = 1.0;
        l(1, 0) = 2.0;
        l(0, 1) = 2.0;
        l(1, 1) = 4.0; // second column = 2 * first
        CHECK_THROWS_AS(qr_reduced(l), std::runtime_error);
    }
}
