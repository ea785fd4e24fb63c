#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prnk/graph.hpp"
#include "prnk/solvers.hpp"

namespace prnk {

/// SolveReport as a "prnk-report/1" JSON object. Floats are written with
/// 17 significant digits; the rank vector itself goes to the TSV instead.
void write_report_json(const SolveReport& rep, const std::string& dataset, std::ostream& out);

/// Top-k (original id, score) rows, score descending, ties by ascending
/// id. k = 0 dumps all nodes.
void write_ranks_tsv(const SolveReport& rep, const Graph& g, std::size_t top_k, std::ostream& out);

/// GraphStats as a one-line JSON object.
void write_stats_json(const GraphStats& s, std::ostream& out);

struct BenchRow {
    std::string dataset;
    Method method = Method::power;
    double alpha = 0.0;
    std::size_t m = 0;
    double tol = 0.0;
    std::uint64_t cycles = 0;
    std::uint64_t mvp = 0;
    double wall_time_s = 0.0;
    bool converged = false;
};

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

} // namespace prnk
