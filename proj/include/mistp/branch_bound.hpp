#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <vector>

#include "mistp/linear_program.hpp"
#include "mistp/simplex.hpp"

namespace mistp {

struct BranchBoundOptions {
    long node_limit = 200000;
    long lp_pivot_limit = 50000;
    // A known feasible point (one value per variable) used as the starting
    // incumbent; ignored unless it satisfies rows, bounds and integrality.
    std::optional<std::vector<double>> initial_incumbent;
    // Externally certified lower bound on the optimum: an incumbent within
    // tol::bound_gap of it is optimal and the search stops without a proof.
    double objective_target = -LinearProgram::kInf;
};

namespace detail {

inline bool satisfies(const LinearProgram& lp, const std::vector<double>& v) {
    if (v.size() != lp.objective.size()) return false;
    const int n = lp.num_variables();
    for (int j = 0; j < n; ++j) {
        if (v[j] < lp.lower[j] - tol::feasibility || v[j] > lp.upper[j] + tol::feasibility) return false;
        if (lp.integer[j] && std::abs(v[j] - std::round(v[j])) > tol::integrality) return false;
    }
    for (const auto& row : lp.rows) {
        double activity = 0.0;
        for (int j = 0; j < n; ++j) activity += row.coeffs[j] * v[j];
        if (row.sense == RowSense::LessEqual && activity > row.rhs + tol::feasibility) return false;
        if (row.sense == RowSense::GreaterEqual && activity < row.rhs - tol::feasibility) return false;
        if (row.sense == RowSense::Equal && std::abs(activity - row.rhs) > tol::feasibility) return false;
    }
    return true;
}

}  // namespace detail

/// Branch-and-bound over the LP relaxation: best-bound node selection,
/// branching on the most fractional integer variable (ties by lowest index),
/// floor branch explored first, pruning with absolute gap tol::bound_gap.
/// Deterministic for identical input.
inline SolveResult solve_milp(const LinearProgram& lp,
                              const std::vector<ConstraintRow>& extra_rows = {},
                              const BranchBoundOptions& options = {}) {
    LinearProgram problem = lp;
    for (const auto& row : extra_rows) problem.rows.push_back(row);
    problem.check_well_formed();

    const int n = problem.num_variables();
    std::vector<int> int_vars;
    for (int j = 0; j < n; ++j) {
        if (problem.integer[j]) int_vars.push_back(j);
    }

    struct Node {
        double bound;  // parent LP objective, a lower bound for the subtree
        long seq;
        std::vector<double> lower, upper;
    };
    // Best bound first; equal bounds pop newest-first so plateaus are dived
    // rather than swept breadth-first. Children are pushed ceil-then-floor,
    // which makes the floor branch come out first.
    auto worse = [](const Node& a, const Node& b) {
        return a.bound > b.bound || (a.bound == b.bound && a.seq < b.seq);
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

    long next_seq = 0;
    open.push({-LinearProgram::kInf, next_seq++, problem.lower, problem.upper});

    SolveResult best;
    best.status = SolveStatus::Infeasible;
    bool have_incumbent = false;
    double incumbent_obj = LinearProgram::kInf;
    long nodes = 0;
    long total_iterations = 0;
    bool root = true;
    bool hit_limit = false;

    if (options.initial_incumbent && detail::satisfies(problem, *options.initial_incumbent)) {
        best.values = *options.initial_incumbent;
        for (int j : int_vars) best.values[j] = std::round(best.values[j]);
        best.objective = 0.0;
        for (int j = 0; j < n; ++j) best.objective += problem.objective[j] * best.values[j];
        incumbent_obj = best.objective;
        have_incumbent = true;
    }

    bool target_reached = have_incumbent && incumbent_obj <= options.objective_target + tol::bound_gap;
    while (!target_reached && !open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent && node.bound >= incumbent_obj - tol::bound_gap) continue;

        if (nodes >= options.node_limit) {
            hit_limit = true;
            break;
        }
        ++nodes;

        ReducedCosts ranges;
        SolveResult lp_result =
            SimplexSolver(options.lp_pivot_limit).solve(problem, node.lower, node.upper, &ranges);
        total_iterations += lp_result.iterations;

        if (lp_result.status == SolveStatus::IterationLimit) {
            hit_limit = true;
            break;
        }
        if (lp_result.status == SolveStatus::Unbounded) {
            if (root) {
                best.status = SolveStatus::Unbounded;
                best.nodes = nodes;
                best.iterations = total_iterations;
                return best;
            }
            hit_limit = true;  // cannot bound the subtree; give up honestly
            break;
        }
        root = false;
        if (lp_result.status != SolveStatus::Optimal) continue;  // infeasible subtree
        if (have_incumbent && lp_result.objective >= incumbent_obj - tol::bound_gap) continue;

        // Most fractional integer variable, ties by lowest index.
        int branch_var = -1;
        double most_frac = tol::integrality;
        for (int j : int_vars) {
            const double v = lp_result.values[j];
            const double frac = std::abs(v - std::round(v));
            if (frac > most_frac) {
                most_frac = frac;
                branch_var = j;
            }
        }

        if (branch_var < 0) {
            // Integral. Snap the flagged variables and take as incumbent.
            if (!have_incumbent || lp_result.objective < incumbent_obj) {
                have_incumbent = true;
                incumbent_obj = lp_result.objective;
                const long keep_nodes = best.nodes;
                best = lp_result;
                best.nodes = keep_nodes;
                for (int j : int_vars) best.values[j] = std::round(best.values[j]);
                if (incumbent_obj <= options.objective_target + tol::bound_gap) target_reached = true;
            }
            continue;
        }

        // Reduced-cost bound tightening against the incumbent cutoff: moving a
        // nonbasic variable off its bound costs at least its reduced cost per
        // unit, so integer values beyond the remaining budget cannot improve.
        if (have_incumbent) {
            const double budget = (incumbent_obj - tol::bound_gap) - lp_result.objective;
            for (int j : int_vars) {
                const double up_rc = ranges.raise_from_lower[j];
                if (up_rc > tol::pivot) {
                    const double cap =
                        std::floor(lp_result.values[j] + budget / up_rc + tol::integrality);
                    if (cap < node.upper[j]) node.upper[j] = cap;
                }
                const double down_rc = ranges.drop_from_upper[j];
                if (down_rc > tol::pivot) {
                    const double floor_bound =
                        std::ceil(lp_result.values[j] - budget / down_rc - tol::integrality);
                    if (floor_bound > node.lower[j]) node.lower[j] = floor_bound;
                }
            }
        }

        const double v = lp_result.values[branch_var];
        Node up{lp_result.objective, next_seq++, node.lower, node.upper};
        up.lower[branch_var] = std::ceil(v);
        Node down{lp_result.objective, next_seq++, std::move(node.lower), std::move(node.upper)};
        down.upper[branch_var] = std::floor(v);
        open.push(std::move(up));
        open.push(std::move(down));
    }

    best.nodes = nodes;
    best.iterations = total_iterations;
    if (hit_limit && !target_reached) {
        best.status = SolveStatus::IterationLimit;
    } else if (have_incumbent) {
        best.status = SolveStatus::Optimal;
    }
    return best;
}

/// Exhaustive oracle: enumerates every integer assignment within the given
/// per-variable upper bounds, solves the residual LP for each, and keeps the
/// best. Enumeration budget capped at 1e6 assignments.
inline SolveResult brute_force_oracle(const LinearProgram& lp, const std::vector<int>& z_upper_bounds) {
    lp.check_well_formed();

    std::vector<int> int_vars;
    for (int j = 0; j < lp.num_variables(); ++j) {
        if (lp.integer[j]) int_vars.push_back(j);
    }
    if (z_upper_bounds.size() != int_vars.size()) {
        throw std::invalid_argument("brute_force_oracle: one upper bound per integer variable required");
    }

    std::vector<int> lo(int_vars.size()), hi(int_vars.size());
    double combos = 1.0;
    for (std::size_t t = 0; t < int_vars.size(); ++t) {
        lo[t] = static_cast<int>(std::ceil(lp.lower[int_vars[t]] - tol::integrality));
        hi[t] = z_upper_bounds[t];
        if (std::isfinite(lp.upper[int_vars[t]])) {
            hi[t] = std::min(hi[t], static_cast<int>(std::floor(lp.upper[int_vars[t]] + tol::integrality)));
        }
        combos *= std::max(0, hi[t] - lo[t] + 1);
    }
    if (combos > 1e6) {
        throw std::domain_error("brute_force_oracle: enumeration budget exceeded");
    }

    SolveResult best;
    best.status = SolveStatus::Infeasible;
    bool have_best = false;
    long lp_solves = 0;
    long total_iterations = 0;

    if (int_vars.empty()) {
        SolveResult r = solve_lp(lp);
        r.nodes = 1;
        return r;
    }
    if (combos == 0.0) return best;  // some integer range is empty

    std::vector<double> lower = lp.lower, upper = lp.upper;
    std::vector<int> assign = lo;
    while (true) {
        for (std::size_t t = 0; t < int_vars.size(); ++t) {
            lower[int_vars[t]] = assign[t];
            upper[int_vars[t]] = assign[t];
        }
        SolveResult r = solve_lp(lp, lower, upper);
        ++lp_solves;
        total_iterations += r.iterations;
        if (r.status == SolveStatus::Unbounded) {
            r.nodes = lp_solves;
            r.iterations = total_iterations;
            return r;
        }
        if (r.status == SolveStatus::Optimal && (!have_best || r.objective < best.objective)) {
            have_best = true;
            best = r;
            for (std::size_t t = 0; t < int_vars.size(); ++t) {
                best.values[int_vars[t]] = assign[t];
            }
        }

        // odometer increment
        std::size_t t = 0;
        while (t < int_vars.size()) {
            if (++assign[t] <= hi[t]) break;
            assign[t] = lo[t];
            ++t;
        }
        if (t == int_vars.size()) break;
    }

    if (have_best) best.status = SolveStatus::Optimal;
    best.nodes = lp_solves;
    best.iterations = total_iterations;
    return best;
}

}  // namespace mistp
