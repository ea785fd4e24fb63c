// Microbenchmarks for the kernels that dominate solver cost: the Google
// operator application and one restart cycle of each process (the per-cycle
// cost gap between the orthogonalizing and the pivoting process is the
// point of comparison).

#include <benchmark/benchmark.h>

#include <random>

#include <prnk/dense_kernels.hpp>
#include <prnk/google_operator.hpp>
#include <prnk/graph.hpp>
#include <prnk/krylov.hpp>
#include <prnk/solvers.hpp>

namespace {

prnk::Graph random_graph(std::mt19937& rng, int n, double degree) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::poisson_distribution<int> deg(degree);
    std::uniform_int_distribution<int> pick(0, n - 1);
    prnk::Graph g;
    g.n = n;
    g.original_ids.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.original_ids[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < n; ++j) {
        if (coin(rng) < 0.05) continue;
        int d = std::max(1, deg(rng));
        for (int k = 0; k < d; ++k) g.edges.emplace_back(j, pick(rng));
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    g.out_degree.assign(static_cast<std::size_t>(n), 0);
    for (const auto& [s, d] : g.edges) {
        (void)d;
        ++g.out_degree[static_cast<std::size_t>(s)];
    }
    return g;
}

prnk::GoogleOperator make_operator(int n) {
    std::mt19937 rng(12345);
    return {prnk::build_transition(random_graph(rng, n, 8.0)), 0.85};
}

void BM_apply_google(benchmark::State& state) {
    auto op = make_operator(static_cast<int>(state.range(0)));
    std::vector<double> x(op.dim(), 1.0 / static_cast<double>(op.dim()));
    std::vector<double> y(op.dim());
    for (auto _ : state) {
        op.apply(x, y);
        benchmark::DoNotOptimize(y.data());
        x.swap(y);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(op.transition().nnz()));
}
BENCHMARK(BM_apply_google)->Arg(1 << 12)->Arg(1 << 15)->Arg(1 << 17);

void BM_process_cycle(benchmark::State& state, prnk::ProcessKind kind) {
    auto op = make_operator(1 << 15);
    const auto m = static_cast<std::size_t>(state.range(0));
    std::vector<double> q0(op.dim(), 1.0 / static_cast<double>(op.dim()));
    for (auto _ : state) {
        auto dec = kind == prnk::ProcessKind::hessenberg ? prnk::hessenberg_process(op, q0, m)
                                                         : prnk::arnoldi_process(op, q0, m);
        benchmark::DoNotOptimize(dec.hbar.data().data());
    }
}
void BM_hessenberg_cycle(benchmark::State& state) {
    BM_process_cycle(state, prnk::ProcessKind::hessenberg);
}
void BM_arnoldi_cycle(benchmark::State& state) {
    BM_process_cycle(state, prnk::ProcessKind::arnoldi);
}
BENCHMARK(BM_hessenberg_cycle)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_arnoldi_cycle)->Arg(8)->Arg(16)->Arg(32);

void BM_refined_extraction(benchmark::State& state) {
    // SVD of the shifted (m+1) x m block, as in one restart.
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    prnk::Matrix hbar(m + 1, m);
    for (auto& v : hbar.data()) v = dist(rng);
    for (std::size_t j = 0; j + 2 < m + 1; ++j)
        for (std::size_t i = j + 2; i < m + 1; ++i) hbar(i, j) = 0.0;
    for (std::size_t i = 0; i < m; ++i) hbar(i, i) -= 1.0;
    for (auto _ : state) {
        auto trip = prnk::smallest_singular_triplet(hbar);
        benchmark::DoNotOptimize(trip.sigma);
    }
}
BENCHMARK(BM_refined_extraction)->Arg(8)->Arg(16)->Arg(32);

void BM_full_solve(benchmark::State& state) {
    auto op = make_operator(1 << 15);
    prnk::SolveConfig cfg;
    cfg.method = static_cast<prnk::Method>(state.range(0));
    cfg.m = 8;
    for (auto _ : state) {
        auto rep = prnk::solve(op, cfg);
        benchmark::DoNotOptimize(rep.mvp);
    }
}
BENCHMARK(BM_full_solve)
    ->Arg(static_cast<int>(prnk::Method::power))
    ->Arg(static_cast<int>(prnk::Method::qe_power))
    ->Arg(static_cast<int>(prnk::Method::hessenberg));

} // namespace

BENCHMARK_MAIN();
