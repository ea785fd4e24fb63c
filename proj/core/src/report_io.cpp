#include "prnk/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace prnk {

namespace {

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void write_report_json(const SolveReport& rep, const std::string& dataset, std::ostream& out) {
    out << "{\"schema\":\"prnk-report/1\"";
    out << ",\"dataset\":\"" << dataset << '"';
    out << ",\"method\":\"" << to_string(rep.method) << '"';
    out << ",\"alpha\":" << num17(rep.alpha);
    out << ",\"m\":" << rep.m;
    out << ",\"tol\":" << num17(rep.tol);
    out << ",\"n\":" << rep.x.size();
    out << ",\"cycles\":" << rep.cycles;
    out << ",\"mvp\":" << rep.mvp;
    out << ",\"verify_mvp\":" << rep.verify_mvp;
    out << ",\"converged\":" << (rep.converged ? "true" : "false");
    out << ",\"final_residual\":" << num17(rep.final_residual);
    out << ",\"wall_time_s\":" << num17(rep.wall_time_s);
    out << ",\"residual_history\":[";
    for (std::size_t i = 0; i < rep.residual_history.size(); ++i) {
        if (i) out << ',';
        out << num17(rep.residual_history[i]);
    }
    out << "],\"breakdown_steps\":[";
    for (std::size_t i = 0; i < rep.breakdown_steps.size(); ++i) {
        if (i) out << ',';
        out << rep.breakdown_steps[i];
    }
    out << "]}\n";
}

void write_ranks_tsv(const SolveReport& rep, const Graph& g, std::size_t top_k, std::ostream& out) {
    const std::size_t n = rep.x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rep.x[a] != rep.x[b]) return rep.x[a] > rep.x[b];
        return g.original_ids[a] < g.original_ids[b];
    });
    std::size_t k = (top_k == 0 || top_k > n) ? n : top_k;
    for (std::size_t i = 0; i < k; ++i)
        out << g.original_ids[order[i]] << '\t' << num17(rep.x[order[i]]) << '\n';
}

void write_stats_json(const GraphStats& s, std::ostream& out) {
    out << "{\"n\":" << s.n << ",\"nnz\":" << s.nnz << ",\"zcol\":" << s.zcol
        << ",\"a_nz\":" << num17(s.a_nz) << ",\"den\":" << num17(s.den) << "}\n";
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "dataset,method,alpha,m,tol,cycles,mvp,wall_time_s,converged\n";
    for (const auto& r : rows) {
        out << r.dataset << ',' << to_string(r.method) << ',' << num17(r.alpha) << ',' << r.m << ','
            << num17(r.tol) << ',' << r.cycles << ',' << r.mvp << ',' << num17(r.wall_time_s) << ','
            << (r.converged ? "true" : "false") << '\n';
    }
}

} // namespace prnk
