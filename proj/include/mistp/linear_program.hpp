#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mistp {

// Centralized tolerances shared by the solver stack.
namespace tol {
inline constexpr double feasibility = 1e-6;   // absolute, on row activity
inline constexpr double integrality = 1e-6;   // distance from nearest integer
inline constexpr double bound_gap = 1e-6;     // branch-and-bound pruning gap
inline constexpr double pivot = 1e-9;         // simplex pivot/reduced-cost epsilon
}  // namespace tol

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct ConstraintRow {
    std::vector<double> coeffs;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
    std::string label;  // optional, carried through to feasibility reports
};

/// Dense minimization MILP in the form
///   min c.v  s.t.  rows (<=, >=, =),  lower <= v <= upper,  v[j] integer where flagged.
struct LinearProgram {
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    std::vector<double> objective;
    std::vector<ConstraintRow> rows;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> integer;

    int num_variables() const { return static_cast<int>(objective.size()); }

    /// Appends a variable, padding every existing row with a zero coefficient.
    int add_variable(double lo = 0.0, double hi = kInf, bool is_integer = false, double cost = 0.0) {
        objective.push_back(cost);
        lower.push_back(lo);
        upper.push_back(hi);
        integer.push_back(is_integer);
        for (auto& row : rows) row.coeffs.push_back(0.0);
        return num_variables() - 1;
    }

    void add_row(std::vector<double> coeffs, RowSense sense, double rhs, std::string label = {}) {
        rows.push_back({std::move(coeffs), sense, rhs, std::move(label)});
    }

    void check_well_formed() const {
        const auto n = objective.size();
        if (lower.size() != n || upper.size() != n || integer.size() != n) {
            throw std::invalid_argument("LinearProgram: bound/flag vectors must match variable count");
        }
        for (const auto& row : rows) {
            if (row.coeffs.size() != n) {
                throw std::invalid_argument("LinearProgram: row dimension mismatch");
            }
            if (!std::isfinite(row.rhs)) {
                throw std::invalid_argument("LinearProgram: right-hand side must be finite");
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(lower[j])) {
                throw std::invalid_argument("LinearProgram: lower bounds must be finite");
            }
        }
    }
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

struct SolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> values;
    double objective = 0.0;
    long iterations = 0;  // simplex pivots, accumulated over all LP solves
    long nodes = 0;       // branch-and-bound nodes expanded (0 for a bare LP solve)
};

}  // namespace mistp
