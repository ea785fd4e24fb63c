#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prnk/dense_kernels.hpp"
#include "prnk/google_operator.hpp"
#include "prnk/krylov.hpp"

namespace prnk {

enum class Method { power, power_tan, qe_power, arnoldi, hessenberg };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct SolveConfig {
    Method method = Method::hessenberg;
    double alpha = 0.85;
    std::size_t m = 8;          // subspace dimension (Krylov methods)
    double tol = 1e-8;
    std::uint64_t max_mvp = 1'000'000;
    std::size_t extrapolation_period = 0; // 0 -> method default (10 linear, 5 quadratic)
    bool raw_restart = false;             // pass the restart vector unnormalized
    std::vector<double> q0;               // empty -> e / ||e||_1

    void validate(std::size_t n) const;
};

struct SolveReport {
    Method method = Method::power;
    double alpha = 0.0;
    std::size_t m = 0;
    double tol = 0.0;

    std::vector<double> x;  // ||x||_1 = 1, entries >= 0
    std::uint64_t cycles = 0; // restart cycles (Krylov) / iterations (power)
    std::uint64_t mvp = 0;    // operator applications in the iteration itself
    std::uint64_t verify_mvp = 0; // extra applications for exit verification
    std::vector<double> residual_history;
    double final_residual = 0.0; // direct ||Ax-x||_1 / ||x||_1 at exit
    double wall_time_s = 0.0;
    bool converged = false;
    std::vector<std::size_t> breakdown_steps;

    // Final-cycle payload for verify_report (Krylov methods only).
    std::optional<KrylovDecomposition> last_decomp;
    std::optional<SingularTriplet> last_triplet;
    std::vector<double> last_q;
};

/// Called after each restart cycle with the cycle's decomposition, the
/// refined triplet, the new iterate q and the residual r = sigma * L * u.
using CycleObserver =
    std::function<void(std::size_t cycle, const KrylovDecomposition&, const SingularTriplet&,
                       std::span<const double> q, std::span<const double> r)>;

SolveReport power(const GoogleOperator& op, const SolveConfig& cfg);
SolveReport power_linear_extrapolation(const GoogleOperator& op, const SolveConfig& cfg);
SolveReport power_quadratic_extrapolation(const GoogleOperator& op, const SolveConfig& cfg);

/// Refined restarted Krylov PageRank: per cycle, run the chosen process,
/// take the smallest singular triplet of Hbar - [I; 0], set q = L_m v_m
/// and r = sigma_m L_{m+1} u_m, stop on ||r||_1 / ||q||_1 < tol.
SolveReport refined_krylov_pagerank(const GoogleOperator& op, const SolveConfig& cfg,
                                    ProcessKind kind, const CycleObserver& observer = {});

/// Dispatch on cfg.method.
SolveReport solve(const GoogleOperator& op, const SolveConfig& cfg,
                  const CycleObserver& observer = {});

/// ||(Aq - q) - sigma_m * basis * u_m||_1 / ||q||_1 for the report's final
/// cycle. Requires the Krylov payload to be present.
double verify_report(const GoogleOperator& op, const SolveReport& report);

} // namespace prnk
