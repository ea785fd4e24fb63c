#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include <prnk/report_io.hpp>

using namespace prnk;

namespace {

SolveReport sample_report() {
    SolveReport r;
    r.method = Method::hessenberg;
    r.alpha = 0.85;
    r.m = 8;
    r.tol = 1e-8;
    r.x = {0.25, 0.25, 0.5};
    r.cycles = 3;
    r.mvp = 24;
    r.verify_mvp = 1;
    r.residual_history = {1e-2, 1e-5, 1e-9};
    r.final_residual = 9.87654321e-10;
    r.wall_time_s = 0.123;
    r.converged = true;
    return r;
}

} // namespace

TEST_CASE("report JSON is valid and round-trips its fields") {
    std::ostringstream out;
    write_report_json(sample_report(), "toy", out);
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["schema"] == "prnk-report/1");
    CHECK(j["dataset"] == "toy");
    CHECK(j["method"] == "hessenberg");
    CHECK(j["cycles"] == 3);
    CHECK(j["mvp"] == 24);
    CHECK(j["converged"] == true);
    CHECK(j["n"] == 3);
    CHECK(j["alpha"].get<double>() == 0.85);
    CHECK(j["final_residual"].get<double>() == 9.87654321e-10);
    CHECK(j["residual_history"].size() == 3);
}

TEST_CASE("ranks TSV ordering: score descending, ties by ascending original id") {
    SolveReport r = sample_report();
    Graph g;
    g.n = 3;
    g.original_ids = {30, 10, 20};
    std::ostringstream out;
    write_ranks_tsv(r, g, 0, out);
    std::istringstream lines(out.str());
    std::string l1, l2, l3;
    std::getline(lines, l1);
    std::getline(lines, l2);
    std::getline(lines, l3);
    CHECK(l1.rfind("20\t", 0) == 0);     // top score 0.5 -> original id 20
    CHECK(l2.rfind("10\t", 0) == 0);     // tie at 0.25 -> smaller id first
    CHECK(l3.rfind("30\t", 0) == 0);

    // Full dump scores sum to 1.
    double sum = 0.0;
    for (const std::string& line : {l1, l2, l3}) sum += std::stod(line.substr(line.find('\t') + 1));
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    std::ostringstream topk;
    write_ranks_tsv(r, g, 2, topk);
    const std::string tk = topk.str();
    CHECK(std::count(tk.begin(), tk.end(), '\n') == 2);
}

TEST_CASE("bench CSV header and row shape") {
    std::vector<BenchRow> rows(2);
    rows[0] = {"a", Method::power, 0.85, 0, 1e-8, 82, 82, 0.5, true};
    rows[1] = {"b", Method::hessenberg, 0.99, 10, 1e-7, 9, 90, 0.25, false};
    std::ostringstream out;
    write_bench_csv(rows, out);
    std::istringstream lines(out.str());
    std::string header, r1, r2;
    std::getline(lines, header);
    std::getline(lines, r1);
    std::getline(lines, r2);
    CHECK(header == "dataset,method,alpha,m,tol,cycles,mvp,wall_time_s,converged");
    CHECK(r1 == "a,power,0.84999999999999998,0,1e-08,82,82,0.5,true");
    CHECK(r2.rfind("b,hessenberg,", 0) == 0);
    CHECK(r2.find(",false") != std::string::npos);
}
