#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mistp/branch_bound.hpp"
#include "mistp/model.hpp"

namespace mistp {

/// Thrown when the underlying model admits no feasible solution at all.
struct InfeasibleModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveStats {
    long milp_solves = 0;
    long nodes = 0;
    long iterations = 0;
    void absorb(const SolveResult& r) {
        ++milp_solves;
        nodes += r.nodes;
        iterations += r.iterations;
    }
};

/// Per-objective lower bounds (each objective minimized alone) and upper
/// bounds (worst value of that objective across the single-objective
/// argmins). Argmins are stabilized lexicographically: among the optima of
/// one objective, the other is re-minimized.
struct PayoffTable {
    std::array<double, 2> lower{};
    std::array<double, 2> upper{};
    std::array<MistpSolution, 2> argmin{};
};

namespace detail {

inline SolveResult solve_or_throw(const LinearProgram& lp, SolveStats* stats,
                                  const std::vector<double>* warm_start = nullptr) {
    BranchBoundOptions options;
    if (warm_start) options.initial_incumbent = *warm_start;
    SolveResult r = solve_milp(lp, {}, options);
    if (stats) stats->absorb(r);
    if (r.status == SolveStatus::Infeasible) throw InfeasibleModelError("model is infeasible");
    if (r.status == SolveStatus::Unbounded) throw std::runtime_error("objective is unbounded below");
    if (r.status == SolveStatus::IterationLimit) throw std::runtime_error("solver hit its node limit");
    return r;
}

// Relative slack applied when fixing a first-stage optimum as a constraint.
inline double lexico_slack(double value) {
    return 1e-6 * std::abs(value) + 1e-9;
}

// Minimize `primary`; among its optima minimize `secondary`. Re-optimization
// keeps the first stage's integer pattern and settles the continuous
// degeneracy by LP: alternate shipment splits are where equal-cost optima
// actually differ, and re-selecting the pattern itself would mean a MILP over
// the razor-thin optimal face, which plain branch-and-bound cannot close.
inline SolveResult lexicographic_min(const CompiledModel& model, const std::vector<double>& primary,
                                     const std::vector<double>& secondary, SolveStats* stats,
                                     double* primary_optimum = nullptr) {
    SolveResult first = solve_or_throw(model.with_objective(primary), stats);
    if (primary_optimum) *primary_optimum = first.objective;

    LinearProgram second = model.with_objective(secondary);
    second.add_row(primary, RowSense::LessEqual, first.objective + lexico_slack(first.objective),
                   "stage1-optimum");
    for (int j = 0; j < second.num_variables(); ++j) {
        if (second.integer[j]) {
            const double v = std::round(first.values[j]);
            second.lower[j] = v;
            second.upper[j] = v;
        }
    }
    SolveResult refined = solve_lp(second);
    if (stats) ++stats->milp_solves, stats->iterations += refined.iterations;
    if (refined.status != SolveStatus::Optimal) return first;  // keep the proven stage-1 point
    refined.nodes = 0;
    return refined;
}

}  // namespace detail

inline PayoffTable payoff_table(const CompiledModel& model, SolveStats* stats = nullptr) {
    PayoffTable table;
    const std::array<const std::vector<double>*, 2> objectives = {&model.objective_cost,
                                                                  &model.objective_time};
    for (int t = 0; t < 2; ++t) {
        double optimum = 0.0;
        SolveResult r = detail::lexicographic_min(model, *objectives[t], *objectives[1 - t], stats, &optimum);
        table.lower[t] = optimum;
        table.argmin[t] = solution_from_result(model, r);
    }
    for (int t = 0; t < 2; ++t) {
        const double at_own = (t == 0) ? table.argmin[0].f1 : table.argmin[1].f2;
        const double at_other = (t == 0) ? table.argmin[1].f1 : table.argmin[0].f2;
        table.upper[t] = std::max(at_own, at_other);
    }
    return table;
}

struct FuzzyProgrammingResult {
    double lambda = 0.0;
    MistpSolution solution;
};

/// Zimmermann max-min compromise: maximize the smallest linear membership
/// (U_t - f_t)/(U_t - L_t) over both objectives, as a single MILP with one
/// auxiliary variable. An objective with U_t <= L_t has constant membership
/// and is dropped from the min.
inline FuzzyProgrammingResult solve_fuzzy_programming(const CompiledModel& model, const PayoffTable& bounds,
                                                      SolveStats* stats = nullptr) {
    LinearProgram lp = model.program;
    lp.objective.assign(lp.num_variables(), 0.0);
    const int lambda_var = lp.add_variable(0.0, 1.0, false, -1.0);  // maximize lambda

    const std::array<const std::vector<double>*, 2> objectives = {&model.objective_cost,
                                                                  &model.objective_time};
    std::array<bool, 2> active{};
    for (int t = 0; t < 2; ++t) {
        const double range = bounds.upper[t] - bounds.lower[t];
        active[t] = range > 0.0;
        if (!active[t]) continue;
        std::vector<double> row = *objectives[t];
        row.resize(lp.num_variables(), 0.0);
        row[lambda_var] = range;
        lp.add_row(std::move(row), RowSense::LessEqual, bounds.upper[t],
                   t == 0 ? "membership-cost" : "membership-time");
    }

    auto membership_floor = [&](const MistpSolution& sol) {
        double mu = 1.0;
        const std::array<double, 2> f = {sol.f1, sol.f2};
        for (int t = 0; t < 2; ++t) {
            if (!active[t]) continue;
            mu = std::min(mu, std::clamp((bounds.upper[t] - f[t]) / (bounds.upper[t] - bounds.lower[t]),
                                         0.0, 1.0));
        }
        return mu;
    };

    // When the payoff argmins are available they are feasible warm starts.
    std::vector<double> seed;
    double seed_mu = -1.0;
    for (const auto& candidate : bounds.argmin) {
        if (candidate.shipments.empty()) continue;
        const double mu = membership_floor(candidate);
        if (mu > seed_mu) {
            seed_mu = mu;
            seed = candidate.shipments;
            seed.insert(seed.end(), candidate.trips.begin(), candidate.trips.end());
            seed.push_back(mu);
        }
    }

    SolveResult r = detail::solve_or_throw(lp, stats, seed.empty() ? nullptr : &seed);
    FuzzyProgrammingResult out;
    out.lambda = r.values[lambda_var];
    r.values.resize(model.program.num_variables());
    out.solution = solution_from_result(model, r);

    // Self-consistency: the solver's lambda must equal the smallest clamped
    // membership of the returned solution.
    double smallest = 1.0;
    const std::array<double, 2> f = {out.solution.f1, out.solution.f2};
    for (int t = 0; t < 2; ++t) {
        if (!active[t]) continue;
        double mu = (bounds.upper[t] - f[t]) / (bounds.upper[t] - bounds.lower[t]);
        smallest = std::min(smallest, std::clamp(mu, 0.0, 1.0));
    }
    if (std::abs(smallest - out.lambda) > 1e-6) {
        throw std::logic_error("fuzzy programming: lambda is inconsistent with the achieved memberships");
    }
    out.lambda = smallest;
    return out;
}

/// Keeps exactly the points not dominated by any other (minimization in both
/// coordinates); result sorted by f1 ascending, duplicates collapsed.
inline std::vector<std::size_t> nondominated_indices(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].first != points[b].first) return points[a].first < points[b].first;
        return points[a].second < points[b].second;
    });
    std::vector<std::size_t> kept;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        if (points[idx].second < best_f2) {
            kept.push_back(idx);
            best_f2 = points[idx].second;
        }
    }
    return kept;
}

inline std::vector<std::pair<double, double>> nondominated_filter(
    const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t idx : nondominated_indices(points)) out.push_back(points[idx]);
    return out;
}

enum class Normalization { ByIdeal, ByRange };

struct SweepPoint {
    double eps = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double criterion = 0.0;
};

struct GlobalCriterionResult {
    double criterion_value = 0.0;
    double lower_bound = 0.0;  // grid-induced lower bound on the true optimum
    MistpSolution solution;
    std::vector<SweepPoint> frontier;  // nondominated, f1 ascending
};

/// Distance-to-ideal compromise: minimize the q-norm of normalized objective
/// deviations from the ideal point. Because the criterion is nondecreasing in
/// each objective its optimum lies on the nondominated frontier, which is
/// traced by an epsilon-constraint sweep on f1; the criterion is evaluated at
/// every frontier point. The best point is then refined lexicographically so
/// a feasible ideal is returned exactly.
inline GlobalCriterionResult solve_global_criterion(const CompiledModel& model, const PayoffTable& bounds,
                                                    std::array<double, 2> ideal, int q,
                                                    Normalization normalization, double resolution = 0.0,
                                                    SolveStats* stats = nullptr) {
    if (q < 1) throw std::domain_error("global criterion: q must be >= 1");

    std::array<double, 2> denom{};
    for (int t = 0; t < 2; ++t) {
        if (normalization == Normalization::ByIdeal) {
            if (!(ideal[t] > 0.0)) {
                throw std::domain_error("global criterion: by-ideal normalization needs a positive ideal");
            }
            denom[t] = ideal[t];
        } else {
            denom[t] = bounds.upper[t] - ideal[t];
            if (!(denom[t] > 0.0)) {
                throw std::domain_error("global criterion: by-range normalization needs U > ideal");
            }
        }
    }
    auto criterion = [&](double f1, double f2) {
        const std::array<double, 2> f = {f1, f2};
        double sum = 0.0;
        for (int t = 0; t < 2; ++t) {
            const double dev = std::max(0.0, f[t] - ideal[t]) / denom[t];
            sum += std::pow(dev, q);
        }
        return std::pow(sum, 1.0 / q);
    };

    if (resolution <= 0.0) {
        resolution = std::max((bounds.upper[0] - bounds.lower[0]) / 200.0, 1e-9);
    }

    struct Candidate {
        SweepPoint point;
        MistpSolution solution;
    };
    std::vector<Candidate> pool;      // every feasible point seen, for output and G
    std::vector<SweepPoint> proven;   // certified sweep minima, for the lower bound
    auto add_candidate = [&](MistpSolution sol, double eps_label) {
        Candidate c;
        c.point = {eps_label, sol.f1, sol.f2, criterion(sol.f1, sol.f2)};
        c.solution = std::move(sol);
        pool.push_back(std::move(c));
    };
    for (const auto& argmin : bounds.argmin) {
        if (!argmin.shipments.empty()) add_candidate(argmin, argmin.f1);
    }

    // The cost argmin satisfies every epsilon bound (its f1 is L1), so it can
    // seed each sweep solve; near L1 the feasible set thins out and an
    // unseeded search may never find an incumbent to prune with. Tight
    // epsilon bounds can also make the optimality proof itself intractable
    // for plain branch-and-bound (the relaxation bound stays flat), so each
    // step gets a node budget; when it runs out the incumbent still joins the
    // candidate pool and the sweep moves on with a growing stride.
    BranchBoundOptions sweep_options;
    sweep_options.node_limit = 40000;
    if (!bounds.argmin[0].shipments.empty()) {
        std::vector<double> seed = bounds.argmin[0].shipments;
        seed.insert(seed.end(), bounds.argmin[0].trips.begin(), bounds.argmin[0].trips.end());
        sweep_options.initial_incumbent = std::move(seed);
    }

    double eps = bounds.upper[0];
    double stride = resolution;
    // Tightening eps can only raise the minimal f2, so each proven level is a
    // certified lower bound for every later step: the solver may stop as soon
    // as it finds a point matching it instead of re-proving optimality.
    double certified_f2 = -LinearProgram::kInf;
    double last_proven_f1 = LinearProgram::kInf;
    // No frontier point exists below L1, so the sweep stops there instead of
    // asking branch-and-bound for an expensive infeasibility proof.
    while (eps >= bounds.lower[0] - tol::feasibility) {
        LinearProgram lp = model.with_objective(model.objective_time);
        lp.add_row(model.objective_cost, RowSense::LessEqual, eps, "epsilon-cost");
        sweep_options.objective_target = certified_f2;
        SolveResult r = solve_milp(lp, {}, sweep_options);
        if (stats) stats->absorb(r);
        if (r.status == SolveStatus::Infeasible) break;
        if (r.status == SolveStatus::Unbounded) throw std::runtime_error("epsilon sweep solve unbounded");
        if (r.values.empty()) break;  // budget exhausted with nothing usable

        MistpSolution sol = solution_from_result(model, r);
        const double f1 = sol.f1;
        add_candidate(std::move(sol), eps);

        if (r.status != SolveStatus::Optimal) {
            // Proof budget exhausted; skip ahead, accelerating through the
            // hard region.
            eps -= stride;
            stride *= 2.0;
            continue;
        }
        stride = resolution;
        proven.push_back(pool.back().point);
        certified_f2 = std::max(certified_f2, pool.back().point.f2);
        // The LP feasibility tolerance can hand back the previous point even
        // though eps moved past it; that exhausts the frontier.
        if (f1 >= last_proven_f1) break;
        last_proven_f1 = f1;
        eps = std::min(eps, f1) - resolution;
    }
    if (pool.empty()) throw InfeasibleModelError("model is infeasible");

    std::size_t best = 0;
    for (std::size_t t = 1; t < pool.size(); ++t) {
        if (pool[t].point.criterion < pool[best].point.criterion) best = t;
    }

    // Lexicographic touch-up: among solutions at least as good in f2, push f1
    // down. Never worsens the criterion.
    {
        LinearProgram lp = model.with_objective(model.objective_cost);
        lp.add_row(model.objective_time, RowSense::LessEqual,
                   pool[best].point.f2 + 1e-9 * std::max(1.0, std::abs(pool[best].point.f2)),
                   "criterion-f2");
        BranchBoundOptions options;
        std::vector<double> seed = pool[best].solution.shipments;
        seed.insert(seed.end(), pool[best].solution.trips.begin(), pool[best].solution.trips.end());
        options.initial_incumbent = std::move(seed);
        SolveResult r = solve_milp(lp, {}, options);
        if (stats) stats->absorb(r);
        if (r.status == SolveStatus::Optimal) {
            MistpSolution refined = solution_from_result(model, r);
            const double g = criterion(refined.f1, refined.f2);
            if (g <= pool[best].point.criterion) {
                pool[best].solution = std::move(refined);
                pool[best].point.f1 = pool[best].solution.f1;
                pool[best].point.f2 = pool[best].solution.f2;
                pool[best].point.criterion = g;
            }
        }
    }

    GlobalCriterionResult out;
    out.criterion_value = pool[best].point.criterion;
    out.solution = pool[best].solution;

    // Grid-induced lower bound from the certified sweep minima: between two
    // proven points every frontier point has f1 >= the next point's f1 and
    // f2 >= the current certified minimum.
    out.lower_bound = pool[best].point.criterion;
    for (std::size_t t = 0; t < proven.size(); ++t) {
        const double next_f1 = (t + 1 < proven.size()) ? proven[t + 1].f1 : bounds.lower[0];
        out.lower_bound = std::min(out.lower_bound, criterion(next_f1, proven[t].f2));
    }
    if (proven.empty()) out.lower_bound = 0.0;

    // Output frontier: nondominated candidates, f1 ascending.
    std::vector<std::pair<double, double>> coords;
    coords.reserve(pool.size());
    for (const auto& c : pool) coords.emplace_back(c.point.f1, c.point.f2);
    out.frontier.clear();
    for (std::size_t idx : nondominated_indices(coords)) out.frontier.push_back(pool[idx].point);
    return out;
}

struct ParetoPoint {
    double f1 = 0.0;
    double f2 = 0.0;
    double weight = 0.0;  // the scalarization weight that produced the point
    MistpSolution solution;
};

/// Weighted-sum scalarization over normalized objectives. Pure weights (0 or
/// 1) are solved lexicographically so the endpoints land on the efficient
/// frontier. The returned set is deduplicated, mutually nondominated and
/// sorted by f1.
inline std::vector<ParetoPoint> weighted_sum_front(const CompiledModel& model, const PayoffTable& bounds,
                                                   const std::vector<double>& weights,
                                                   SolveStats* stats = nullptr) {
    if (weights.empty()) throw std::invalid_argument("weighted_sum_front: nonempty weights required");

    std::array<double, 2> denom{};
    for (int t = 0; t < 2; ++t) {
        const double range = bounds.upper[t] - bounds.lower[t];
        denom[t] = range > 0.0 ? range : 1.0;  // constant objective: scale is irrelevant
    }

    std::vector<ParetoPoint> raw;
    for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) throw std::domain_error("weighted_sum_front: weights must lie in [0,1]");
        SolveResult r;
        if (w == 1.0) {
            r = detail::lexicographic_min(model, model.objective_cost, model.objective_time, stats);
        } else if (w == 0.0) {
            r = detail::lexicographic_min(model, model.objective_time, model.objective_cost, stats);
        } else {
            std::vector<double> combo(model.program.num_variables(), 0.0);
            for (std::size_t j = 0; j < combo.size(); ++j) {
                combo[j] = w / denom[0] * model.objective_cost[j] + (1.0 - w) / denom[1] * model.objective_time[j];
            }
            r = detail::solve_or_throw(model.with_objective(combo), stats);
        }
        ParetoPoint pt;
        pt.solution = solution_from_result(model, r);
        pt.f1 = pt.solution.f1;
        pt.f2 = pt.solution.f2;
        pt.weight = w;
        raw.push_back(std::move(pt));
    }

    std::vector<std::pair<double, double>> coords;
    coords.reserve(raw.size());
    for (const auto& pt : raw) coords.emplace_back(pt.f1, pt.f2);
    std::vector<ParetoPoint> out;
    for (std::size_t idx : nondominated_indices(coords)) out.push_back(std::move(raw[idx]));
    return out;
}

}  // namespace mistp
