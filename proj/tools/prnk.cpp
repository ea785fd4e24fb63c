// prnk: PageRank solver toolkit front end.
//
// Subcommands:
//   convert   parse a graph file, print stats, write the binary cache
//   solve     run one solver, write a JSON report and a ranks TSV
//   bench     cross-product sweep over datasets/methods/alpha/m/tol -> CSV
//   spectrum  dump Ritz values and decomposition diagnostics

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <prnk/diagnostics.hpp>
#include <prnk/graph.hpp>
#include <prnk/google_operator.hpp>
#include <prnk/report_io.hpp>
#include <prnk/solvers.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;      // parse/runtime errors, non-convergence
constexpr int kExitUnreadable = 2;
constexpr int kExitUsage = 64;

struct UnreadableInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_readable(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw UnreadableInput("cannot open input file: " + path);
}

prnk::Graph load_graph(const std::string& path, const std::string& format) {
    require_readable(path);
    return prnk::load_graph_file(path, format);
}

std::string dataset_name(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

unsigned worker_count() {
    if (const char* env = std::getenv("PRNK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

struct ConvertArgs {
    std::string input;
    std::string format = "auto";
    std::string output;
};

int run_convert(const ConvertArgs& a) {
    prnk::Graph g = load_graph(a.input, a.format);
    {
        std::ofstream out(a.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + a.output);
        prnk::write_graph_cache(g, out);
    }
    prnk::write_stats_json(prnk::graph_stats(g), std::cout);
    return kExitOk;
}

struct SolveArgs {
    std::string input;
    std::string format = "auto";
    std::string method = "hessenberg";
    double alpha = 0.85;
    std::size_t m = 8;
    double tol = 1e-8;
    std::uint64_t max_mvp = 1'000'000;
    std::string teleport_file;
    std::size_t top_k = 0;
    std::string report_path;
    std::string ranks_path;
    std::size_t period = 0;
    bool raw_restart = false;
    unsigned partitions = 1;
};

int run_solve(const SolveArgs& a) {
    prnk::Graph g = load_graph(a.input, a.format);
    auto p = std::make_shared<const prnk::TransitionMatrix>(prnk::build_transition(g));

    std::unique_ptr<prnk::GoogleOperator> op;
    if (a.teleport_file.empty()) {
        op = std::make_unique<prnk::GoogleOperator>(p, a.alpha);
    } else {
        require_readable(a.teleport_file);
        std::ifstream tf(a.teleport_file);
        auto v = prnk::read_teleport_file(tf, static_cast<std::size_t>(g.n));
        op = std::make_unique<prnk::GoogleOperator>(p, a.alpha, std::move(v));
    }
    op->set_partitions(a.partitions);

    prnk::SolveConfig cfg;
    cfg.method = prnk::method_from_string(a.method);
    cfg.alpha = a.alpha;
    cfg.m = a.m;
    cfg.tol = a.tol;
    cfg.max_mvp = a.max_mvp;
    cfg.extrapolation_period = a.period;
    cfg.raw_restart = a.raw_restart;

    prnk::SolveReport rep = prnk::solve(*op, cfg);

    if (!a.report_path.empty()) {
        std::ofstream out(a.report_path);
        if (!out) throw std::runtime_error("cannot open report file: " + a.report_path);
        prnk::write_report_json(rep, dataset_name(a.input), out);
    }
    if (!a.ranks_path.empty()) {
        std::ofstream out(a.ranks_path);
        if (!out) throw std::runtime_error("cannot open ranks file: " + a.ranks_path);
        prnk::write_ranks_tsv(rep, g, a.top_k, out);
    }
    prnk::write_report_json(rep, dataset_name(a.input), std::cout);
    return rep.converged ? kExitOk : kExitFail;
}

struct BenchArgs {
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::vector<std::string> methods{"power", "power-tan", "qe-power", "arnoldi", "hessenberg"};
    std::vector<double> alphas{0.85, 0.90, 0.95, 0.99};
    std::vector<std::size_t> ms{6, 7, 8, 9, 10};
    std::vector<double> tols{1e-7, 1e-8};
    std::uint64_t max_mvp = 2'000'000;
    std::string spec_path;
    std::string out_path;
};

void load_bench_spec(BenchArgs& a) {
    require_readable(a.spec_path);
    std::ifstream in(a.spec_path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.contains("datasets")) a.inputs = j["datasets"].get<std::vector<std::string>>();
    if (j.contains("methods")) a.methods = j["methods"].get<std::vector<std::string>>();
    if (j.contains("alphas")) a.alphas = j["alphas"].get<std::vector<double>>();
    if (j.contains("ms")) a.ms = j["ms"].get<std::vector<std::size_t>>();
    if (j.contains("tols")) a.tols = j["tols"].get<std::vector<double>>();
    if (j.contains("max_mvp")) a.max_mvp = j["max_mvp"].get<std::uint64_t>();
}

int run_bench(BenchArgs& a) {
    if (!a.spec_path.empty()) load_bench_spec(a);
    if (a.inputs.empty()) throw std::invalid_argument("bench: no datasets given");
    if (a.methods.empty() || a.alphas.empty() || a.ms.empty() || a.tols.empty())
        throw std::invalid_argument("bench: empty sweep axis");

    struct Cell {
        std::size_t dataset_idx;
        prnk::Method method;
        double alpha;
        std::size_t m;
        double tol;
    };

    std::vector<std::shared_ptr<const prnk::TransitionMatrix>> graphs;
    std::vector<std::string> names;
    for (const auto& path : a.inputs) {
        prnk::Graph g = load_graph(path, a.format);
        graphs.push_back(std::make_shared<const prnk::TransitionMatrix>(prnk::build_transition(g)));
        names.push_back(dataset_name(path));
    }

    std::vector<Cell> cells;
    for (std::size_t d = 0; d < graphs.size(); ++d)
        for (const auto& ms : a.methods)
            for (double alpha : a.alphas)
                for (std::size_t m : a.ms)
                    for (double tol : a.tols)
                        cells.push_back({d, prnk::method_from_string(ms), alpha, m, tol});

    std::vector<prnk::BenchRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto run_cells = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            const Cell& c = cells[i];
            prnk::BenchRow& row = rows[i];
            row.dataset = names[c.dataset_idx];
            row.method = c.method;
            row.alpha = c.alpha;
            row.m = c.m;
            row.tol = c.tol;
            try {
                prnk::GoogleOperator op(graphs[c.dataset_idx], c.alpha);
                prnk::SolveConfig cfg;
                cfg.method = c.method;
                cfg.alpha = c.alpha;
                cfg.m = c.m;
                cfg.tol = c.tol;
                cfg.max_mvp = a.max_mvp;
                prnk::SolveReport rep = prnk::solve(op, cfg);
                row.cycles = rep.cycles;
                row.mvp = rep.mvp;
                row.wall_time_s = rep.wall_time_s;
                row.converged = rep.converged;
            } catch (const std::exception& e) {
                std::cerr << "bench cell failed (" << row.dataset << ", " << to_string(c.method)
                          << "): " << e.what() << '\n';
                row.converged = false;
            }
        }
    };

    unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(cells.size()));
    if (workers <= 1) {
        run_cells();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run_cells);
        for (auto& th : pool) th.join();
    }

    if (a.out_path.empty()) {
        prnk::write_bench_csv(rows, std::cout);
    } else {
        std::ofstream out(a.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + a.out_path);
        prnk::write_bench_csv(rows, out);
    }
    return kExitOk;
}

struct SpectrumArgs {
    std::string input;
    std::string format = "auto";
    std::string process = "hessenberg";
    std::size_t m = 8;
    std::string q0 = "uniform";
    double alpha = 0.85;
    std::string out_path;
    std::string diag_path;
};

int run_spectrum(const SpectrumArgs& a) {
    prnk::Graph g = load_graph(a.input, a.format);
    prnk::GoogleOperator op(prnk::build_transition(g), a.alpha);
    const std::size_t n = op.dim();

    std::vector<double> q0;
    if (a.q0 == "uniform") {
        q0.assign(n, 1.0 / static_cast<double>(n));
    } else if (a.q0 == "e1") {
        q0.assign(n, 0.0);
        q0[0] = 1.0;
    } else {
        require_readable(a.q0);
        std::ifstream in(a.q0);
        q0 = prnk::read_teleport_file(in, n);
    }

    std::size_t m = std::min(a.m, n);
    prnk::ProcessKind kind =
        a.process == "arnoldi" ? prnk::ProcessKind::arnoldi : prnk::ProcessKind::hessenberg;
    prnk::KrylovDecomposition dec = kind == prnk::ProcessKind::arnoldi
                                        ? prnk::arnoldi_process(op, q0, m)
                                        : prnk::hessenberg_process(op, q0, m);

    if (a.out_path.empty()) {
        prnk::spectrum_dump(dec, std::cout);
    } else {
        prnk::spectrum_dump(dec, a.out_path);
    }

    prnk::DecompositionError err = prnk::decomposition_error(op, dec);
    double kappa = prnk::basis_condition(dec);
    nlohmann::json diag{{"process", a.process},
                        {"m_requested", m},
                        {"steps_completed", dec.steps_completed},
                        {"decomposition_error_abs", err.absolute},
                        {"decomposition_error_normalized", err.normalized}};
    if (std::isinf(kappa)) {
        diag["basis_condition"] = "infinity";
        diag["warning"] = "basis is numerically rank deficient";
    } else {
        diag["basis_condition"] = kappa;
    }
    if (dec.breakdown_at && *dec.breakdown_at < m)
        diag["warning"] = "breakdown at step " + std::to_string(*dec.breakdown_at);
    if (a.diag_path.empty()) {
        std::cout << diag.dump() << '\n';
    } else {
        std::ofstream out(a.diag_path);
        if (!out) throw std::runtime_error("cannot open diagnostics file: " + a.diag_path);
        out << diag.dump() << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prnk: matrix-free PageRank solver toolkit"};
    app.require_subcommand(1);

    ConvertArgs conv;
    auto* c = app.add_subcommand("convert", "Parse a graph file and write the binary cache");
    c->add_option("--input", conv.input, "Graph file (SNAP edge list or MatrixMarket)")->required();
    c->add_option("--format", conv.format, "Input format: snap|mm|cache|auto")
        ->check(CLI::IsMember({"snap", "mm", "cache", "auto"}));
    c->add_option("--output", conv.output, "Binary cache output path")->required();

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "Run one PageRank solve");
    s->add_option("--input", sol.input, "Graph file")->required();
    s->add_option("--format", sol.format, "Input format: snap|mm|cache|auto")
        ->check(CLI::IsMember({"snap", "mm", "cache", "auto"}));
    s->add_option("--method", sol.method, "power|power-tan|qe-power|arnoldi|hessenberg")
        ->check(CLI::IsMember({"power", "power-tan", "qe-power", "arnoldi", "hessenberg"}));
    s->add_option("--alpha", sol.alpha, "Damping factor in (0,1)");
    s->add_option("--m", sol.m, "Krylov subspace dimension");
    s->add_option("--tol", sol.tol, "Residual tolerance");
    s->add_option("--max-mvp", sol.max_mvp, "Matrix-vector product budget");
    s->add_option("--teleport-file", sol.teleport_file, "Teleport vector, one float per line");
    s->add_option("--top-k", sol.top_k, "Rank rows to write (0 = all)");
    s->add_option("--report", sol.report_path, "SolveReport JSON output path");
    s->add_option("--ranks", sol.ranks_path, "Top-k TSV output path");
    s->add_option("--period", sol.period, "Extrapolation period (power variants)");
    s->add_flag("--raw-restart", sol.raw_restart, "Do not renormalize the restart vector");
    s->add_option("--partitions", sol.partitions, "Row partitions for the parallel mvp");

    BenchArgs ben;
    auto* b = app.add_subcommand("bench", "Sweep methods/alphas/ms/tols, emit CSV");
    b->add_option("--input", ben.inputs, "Graph files (repeatable)");
    b->add_option("--format", ben.format, "Input format: snap|mm|cache|auto")
        ->check(CLI::IsMember({"snap", "mm", "cache", "auto"}));
    b->add_option("--methods", ben.methods, "Methods to run");
    b->add_option("--alphas", ben.alphas, "Damping factors");
    b->add_option("--ms", ben.ms, "Subspace dimensions");
    b->add_option("--tols", ben.tols, "Tolerances");
    b->add_option("--max-mvp", ben.max_mvp, "Budget per cell");
    b->add_option("--spec", ben.spec_path, "JSON sweep spec (overrides flags)");
    b->add_option("--out", ben.out_path, "CSV output path (default stdout)");

    SpectrumArgs spc;
    auto* d = app.add_subcommand("spectrum", "Dump Ritz values and basis diagnostics");
    d->add_option("--input", spc.input, "Graph file")->required();
    d->add_option("--format", spc.format, "Input format: snap|mm|cache|auto")
        ->check(CLI::IsMember({"snap", "mm", "cache", "auto"}));
    d->add_option("--process", spc.process, "arnoldi|hessenberg")
        ->check(CLI::IsMember({"arnoldi", "hessenberg"}));
    d->add_option("--m", spc.m, "Steps to run");
    d->add_option("--q0", spc.q0, "uniform|e1|<path>");
    d->add_option("--alpha", spc.alpha, "Damping factor");
    d->add_option("--out", spc.out_path, "Spectrum CSV path (default stdout)");
    d->add_option("--diag", spc.diag_path, "Diagnostics JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c->parsed()) return run_convert(conv);
        if (s->parsed()) return run_solve(sol);
        if (b->parsed()) return run_bench(ben);
        if (d->parsed()) return run_spectrum(spc);
    } catch (const UnreadableInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnreadable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
