#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mistp/io.hpp"
#include "mistp/model.hpp"
#include "mistp/scalarize.hpp"

namespace mistp {

enum class Method { Single, FuzzyProgramming, GlobalCriterion, WeightedSum };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Single: return "single";
        case Method::FuzzyProgramming: return "fuzzy-programming";
        case Method::GlobalCriterion: return "global-criterion";
        case Method::WeightedSum: return "weighted-sum";
    }
    return "unknown";
}

struct RunOptions {
    Method method = Method::FuzzyProgramming;
    int single_objective = 0;  // 0 = cost, 1 = time
    double eta = 0.9;
    double gamma = 0.9;
    std::optional<std::array<double, 4>> bounds;  // L1, U1, L2, U2
    std::optional<std::array<double, 2>> ideal;   // L1, L2
    int q = 2;
    Normalization normalization = Normalization::ByIdeal;
    double resolution = 0.0;  // 0 = (U1 - L1) / 200
    std::vector<double> weights;
    int weight_count = 21;
    std::optional<unsigned long long> seed;  // random weights instead of an even grid
    double handling_time_divisor = 60.0;
};

struct RunOutput {
    json report;
    std::string front_csv;  // populated by the front-producing methods
    int exit_code = 0;
};

namespace detail {

inline std::vector<double> make_weights(const RunOptions& opt) {
    if (!opt.weights.empty()) return opt.weights;
    if (opt.weight_count < 1) throw std::domain_error("weight count must be at least 1");
    std::vector<double> w;
    if (opt.seed) {
        std::mt19937_64 rng(*opt.seed);
        for (int t = 0; t < opt.weight_count; ++t) {
            w.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
        }
    } else if (opt.weight_count == 1) {
        w.push_back(0.5);
    } else {
        for (int t = 0; t < opt.weight_count; ++t) {
            w.push_back(static_cast<double>(t) / (opt.weight_count - 1));
        }
    }
    return w;
}

inline json bounds_to_json(const PayoffTable& table, bool injected) {
    return {{"L1", table.lower[0]},
            {"U1", table.upper[0]},
            {"L2", table.lower[1]},
            {"U2", table.upper[1]},
            {"source", injected ? "injected" : "computed"}};
}

}  // namespace detail

/// Runs one solve pipeline and assembles the report. Exit code 0 carries a
/// usable solution, 2 means the model is infeasible.
inline RunOutput run_solve(const Instance& inst, const RunOptions& opt) {
    const auto started = std::chrono::steady_clock::now();
    RunOutput out;
    out.report["method"] = to_string(opt.method);
    out.report["instance_digest"] = instance_digest(inst);
    out.report["eta"] = opt.eta;
    out.report["gamma"] = opt.gamma;

    CompileOptions compile_options;
    compile_options.handling_time_divisor = opt.handling_time_divisor;

    SolveStats stats;
    try {
        const CompiledModel model = compile(inst, opt.eta, opt.gamma, compile_options);

        const bool needs_bounds = opt.method != Method::Single;
        PayoffTable table;
        if (needs_bounds) {
            if (opt.bounds) {
                table.lower = {(*opt.bounds)[0], (*opt.bounds)[2]};
                table.upper = {(*opt.bounds)[1], (*opt.bounds)[3]};
            } else {
                table = payoff_table(model, &stats);
            }
            out.report["bounds"] = detail::bounds_to_json(table, opt.bounds.has_value());
        }

        switch (opt.method) {
            case Method::Single: {
                const auto& primary = opt.single_objective == 0 ? model.objective_cost : model.objective_time;
                const auto& secondary = opt.single_objective == 0 ? model.objective_time : model.objective_cost;
                out.report["objective"] = opt.single_objective == 0 ? "cost" : "time";
                SolveResult r = detail::lexicographic_min(model, primary, secondary, &stats);
                MistpSolution sol = solution_from_result(model, r);
                out.report["objectives"] = {{"f1", sol.f1}, {"f2", sol.f2}};
                out.report["solution"] = solution_to_json(sol);
                break;
            }
            case Method::FuzzyProgramming: {
                FuzzyProgrammingResult r = solve_fuzzy_programming(model, table, &stats);
                out.report["lambda"] = r.lambda;
                out.report["objectives"] = {{"f1", r.solution.f1}, {"f2", r.solution.f2}};
                out.report["solution"] = solution_to_json(r.solution);
                break;
            }
            case Method::GlobalCriterion: {
                std::array<double, 2> ideal = opt.ideal ? *opt.ideal : table.lower;
                GlobalCriterionResult r =
                    solve_global_criterion(model, table, ideal, opt.q, opt.normalization, opt.resolution, &stats);
                out.report["ideal"] = {{"f1", ideal[0]}, {"f2", ideal[1]}};
                out.report["q"] = opt.q;
                out.report["normalization"] =
                    opt.normalization == Normalization::ByIdeal ? "by-ideal" : "by-range";
                out.report["criterion_value"] = r.criterion_value;
                out.report["criterion_lower_bound"] = r.lower_bound;
                out.report["objectives"] = {{"f1", r.solution.f1}, {"f2", r.solution.f2}};
                out.report["solution"] = solution_to_json(r.solution);
                out.front_csv = sweep_to_csv(r.frontier);
                break;
            }
            case Method::WeightedSum: {
                const std::vector<double> weights = detail::make_weights(opt);
                out.report["weights"] = weights;
                std::vector<ParetoPoint> front = weighted_sum_front(model, table, weights, &stats);
                json points = json::array();
                for (const auto& pt : front) {
                    points.push_back({{"w", pt.weight}, {"f1", pt.f1}, {"f2", pt.f2}});
                }
                out.report["front"] = std::move(points);
                if (!front.empty()) {
                    out.report["objectives"] = {{"f1", front.front().f1}, {"f2", front.front().f2}};
                    out.report["solution"] = solution_to_json(front.front().solution);
                }
                out.front_csv = front_to_csv(front);
                break;
            }
        }
        out.report["status"] = "ok";
        out.exit_code = 0;
    } catch (const InfeasibleModelError& e) {
        out.report["status"] = "infeasible";
        out.report["error"] = e.what();
        out.exit_code = 2;
    }

    out.report["solver"] = {{"milp_solves", stats.milp_solves},
                            {"nodes", stats.nodes},
                            {"simplex_iterations", stats.iterations}};
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    out.report["wall_time_seconds"] = elapsed.count();
    return out;
}

/// Replays a candidate solution; exit code 0 iff it is feasible.
inline RunOutput run_evaluate(const Instance& inst, const MistpSolution& sol, double eta, double gamma,
                              double handling_time_divisor = 60.0) {
    const auto started = std::chrono::steady_clock::now();
    CompileOptions options;
    options.handling_time_divisor = handling_time_divisor;
    EvaluationResult eval = evaluate(inst, sol, eta, gamma, options);

    RunOutput out;
    out.report["method"] = "evaluate";
    out.report["instance_digest"] = instance_digest(inst);
    out.report["eta"] = eta;
    out.report["gamma"] = gamma;
    out.report["objectives"] = {{"f1", eval.f1}, {"f2", eval.f2}};
    out.report["feasible"] = eval.feasible;
    out.report["evaluation"] = evaluation_to_json(eval);
    out.report["solution"] = solution_to_json(sol);
    out.exit_code = eval.feasible ? 0 : 2;
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    out.report["wall_time_seconds"] = elapsed.count();
    return out;
}

}  // namespace mistp
