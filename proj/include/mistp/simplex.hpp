#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mistp/linear_program.hpp"

namespace mistp {

/// Per-variable reduced costs at an optimal basis: the objective increase for
/// raising a variable one unit off its lower bound, or dropping it one unit
/// off its upper bound. Zero where the direction is free or unavailable.
struct ReducedCosts {
    std::vector<double> raise_from_lower;
    std::vector<double> drop_from_upper;
};

/// Two-phase dense-tableau simplex for the continuous relaxation (integer
/// flags are ignored). Pivoting uses the largest reduced cost; after 1,000
/// consecutive stalled (non-improving) pivots it falls back to Bland's rule,
/// which guarantees termination under degeneracy. Deterministic for
/// identical input.
///
/// Variables are shifted by their lower bounds; fixed variables (lower ==
/// upper) are folded into the right-hand sides, finite upper bounds become
/// internal rows.
class SimplexSolver {
public:
    explicit SimplexSolver(long max_pivots = 50000) : max_pivots_(max_pivots) {}

    /// Solves with the bound vectors taken from `lp` itself.
    SolveResult solve(const LinearProgram& lp) { return solve(lp, lp.lower, lp.upper); }

    /// Solves with overriding bounds (used by branch-and-bound nodes).
    SolveResult solve(const LinearProgram& lp, const std::vector<double>& lower,
                      const std::vector<double>& upper, ReducedCosts* reduced = nullptr) {
        const int n = lp.num_variables();
        SolveResult result;

        // Bound crossings (a branch-and-bound artifact) mean an empty box.
        for (int j = 0; j < n; ++j) {
            if (lower[j] > upper[j]) {
                result.status = SolveStatus::Infeasible;
                return result;
            }
        }

        build_tableau(lp, lower, upper);

        // ---- Phase 1: minimize the sum of artificials ----
        if (num_artificial_ > 0) {
            set_phase1_costs();
            Outcome out = pivot_loop(/*eligible=*/total_cols_);
            if (out != Outcome::Optimal) {  // phase 1 is bounded below by zero
                result.status = SolveStatus::IterationLimit;
                result.iterations = iterations_;
                return result;
            }
            if (objective_value() > tol::feasibility) {
                result.status = SolveStatus::Infeasible;
                result.iterations = iterations_;
                return result;
            }
            purge_artificials();
        }

        // ---- Phase 2: the true objective (artificials no longer eligible) ----
        set_phase2_costs();
        Outcome out = pivot_loop(/*eligible=*/num_structural_);
        result.iterations = iterations_;
        if (out == Outcome::IterationLimit) {
            result.status = SolveStatus::IterationLimit;
            return result;
        }
        if (out == Outcome::Unbounded) {
            result.status = SolveStatus::Unbounded;
            return result;
        }

        result.status = SolveStatus::Optimal;
        result.values.assign(n, 0.0);
        for (int i = 0; i < num_rows_; ++i) {
            const int col = basis_[i];
            if (col < num_free_) result.values[var_of_col_[col]] = rhs(i);
        }
        for (int j = 0; j < n; ++j) result.values[j] += lower[j];
        result.objective = 0.0;
        for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.values[j];

        if (reduced) {
            reduced->raise_from_lower.assign(n, 0.0);
            reduced->drop_from_upper.assign(n, 0.0);
            for (int c = 0; c < num_free_; ++c) {
                const int j = var_of_col_[c];
                reduced->raise_from_lower[j] = std::max(0.0, cost_[c]);
                if (upper_slack_col_[c] >= 0) {
                    reduced->drop_from_upper[j] = std::max(0.0, cost_[upper_slack_col_[c]]);
                }
            }
        }
        return result;
    }

private:
    enum class Outcome { Optimal, Unbounded, IterationLimit };

    long max_pivots_;
    long iterations_ = 0;

    // Flat row-major tableau; each row holds total_cols_ columns plus rhs.
    std::vector<double> tableau_;
    int stride_ = 0;
    int num_rows_ = 0;
    std::vector<double> cost_;  // reduced-cost row
    double cost_rhs_ = 0.0;     // negated objective value
    std::vector<int> basis_;    // basic column per row
    std::vector<int> var_of_col_;      // free column -> original variable
    std::vector<int> upper_slack_col_;  // free column -> slack of its upper-bound row, or -1
    std::vector<double> phase2_cost_;  // objective over structural + slack columns
    int num_free_ = 0;        // free (non-fixed) structural columns
    int num_structural_ = 0;  // free + slack/surplus columns
    int num_artificial_ = 0;
    int total_cols_ = 0;
    bool bland_mode_ = false;
    int stalled_ = 0;

    double* row(int i) { return tableau_.data() + static_cast<std::size_t>(i) * stride_; }
    double& rhs(int i) { return row(i)[total_cols_]; }
    double objective_value() const { return -cost_rhs_; }

    void build_tableau(const LinearProgram& lp, const std::vector<double>& lower,
                       const std::vector<double>& upper) {
        const int n = lp.num_variables();
        const int n_rows_in = static_cast<int>(lp.rows.size());

        var_of_col_.clear();
        for (int j = 0; j < n; ++j) {
            if (upper[j] > lower[j]) var_of_col_.push_back(j);
        }
        num_free_ = static_cast<int>(var_of_col_.size());
        upper_slack_col_.assign(num_free_, -1);

        std::vector<int> upper_cols;  // free columns with a finite upper bound
        for (int c = 0; c < num_free_; ++c) {
            if (std::isfinite(upper[var_of_col_[c]])) upper_cols.push_back(c);
        }
        num_rows_ = n_rows_in + static_cast<int>(upper_cols.size());

        // Stage senses/rhs after shifting by lower bounds and normalizing
        // right-hand sides to be nonnegative.
        std::vector<double> stage_rhs(num_rows_);
        std::vector<RowSense> stage_sense(num_rows_);
        std::vector<char> stage_flip(num_rows_, 0);
        int n_slack = 0, n_art = 0;
        for (int r = 0; r < n_rows_in; ++r) {
            const auto& src = lp.rows[r];
            double b = src.rhs;
            for (int j = 0; j < n; ++j) b -= src.coeffs[j] * lower[j];
            RowSense sense = src.sense;
            if (b < 0.0) {
                b = -b;
                stage_flip[r] = 1;
                if (sense == RowSense::LessEqual) sense = RowSense::GreaterEqual;
                else if (sense == RowSense::GreaterEqual) sense = RowSense::LessEqual;
            }
            stage_rhs[r] = b;
            stage_sense[r] = sense;
            if (sense != RowSense::Equal) ++n_slack;
            if (sense != RowSense::LessEqual) ++n_art;
        }
        for (int r = n_rows_in; r < num_rows_; ++r) {
            const int c = upper_cols[r - n_rows_in];
            stage_sense[r] = RowSense::LessEqual;  // y_c <= upper - lower, both >= 0
            stage_rhs[r] = upper[var_of_col_[c]] - lower[var_of_col_[c]];
            ++n_slack;
        }

        num_structural_ = num_free_ + n_slack;
        num_artificial_ = n_art;
        total_cols_ = num_structural_ + num_artificial_;
        stride_ = total_cols_ + 1;
        tableau_.assign(static_cast<std::size_t>(num_rows_) * stride_, 0.0);
        basis_.assign(num_rows_, -1);

        phase2_cost_.assign(num_structural_, 0.0);
        for (int c = 0; c < num_free_; ++c) phase2_cost_[c] = lp.objective[var_of_col_[c]];

        int slack_at = num_free_, art_at = num_structural_;
        for (int i = 0; i < num_rows_; ++i) {
            double* dst = row(i);
            if (i < n_rows_in) {
                const auto& src = lp.rows[i];
                const double sign = stage_flip[i] ? -1.0 : 1.0;
                for (int c = 0; c < num_free_; ++c) dst[c] = sign * src.coeffs[var_of_col_[c]];
            } else {
                dst[upper_cols[i - n_rows_in]] = 1.0;
                upper_slack_col_[upper_cols[i - n_rows_in]] = slack_at;
            }
            dst[total_cols_] = stage_rhs[i];
            switch (stage_sense[i]) {
                case RowSense::LessEqual:
                    dst[slack_at] = 1.0;
                    basis_[i] = slack_at++;
                    break;
                case RowSense::GreaterEqual:
                    dst[slack_at] = -1.0;
                    ++slack_at;
                    dst[art_at] = 1.0;
                    basis_[i] = art_at++;
                    break;
                case RowSense::Equal:
                    dst[art_at] = 1.0;
                    basis_[i] = art_at++;
                    break;
            }
        }

        bland_mode_ = false;
        stalled_ = 0;
        iterations_ = 0;
    }

    // Reduced costs for min sum of artificials: with artificials basic, the
    // cost row is the negated sum of their rows.
    void set_phase1_costs() {
        cost_.assign(total_cols_, 0.0);
        cost_rhs_ = 0.0;
        for (int i = 0; i < num_rows_; ++i) {
            if (basis_[i] >= num_structural_) {
                const double* r = row(i);
                for (int j = 0; j < total_cols_; ++j) cost_[j] -= r[j];
                cost_rhs_ -= r[total_cols_];
            }
        }
        for (int j = num_structural_; j < total_cols_; ++j) cost_[j] += 1.0;
        bland_mode_ = false;
        stalled_ = 0;
    }

    void set_phase2_costs() {
        cost_.assign(total_cols_, 0.0);
        cost_rhs_ = 0.0;
        for (int j = 0; j < num_structural_; ++j) cost_[j] = phase2_cost_[j];
        for (int i = 0; i < num_rows_; ++i) {
            const int b = basis_[i];
            const double cb = (b < num_structural_) ? phase2_cost_[b] : 0.0;
            if (cb == 0.0) continue;
            const double* r = row(i);
            for (int j = 0; j < total_cols_; ++j) cost_[j] -= cb * r[j];
            cost_rhs_ -= cb * r[total_cols_];
        }
        bland_mode_ = false;
        stalled_ = 0;
    }

    // Pivot artificials out of the basis; rows where that is impossible are
    // linearly dependent and get dropped.
    void purge_artificials() {
        for (int i = num_rows_ - 1; i >= 0; --i) {
            if (basis_[i] < num_structural_) continue;
            int col = -1;
            const double* r = row(i);
            for (int j = 0; j < num_structural_; ++j) {
                if (std::abs(r[j]) > tol::pivot) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                pivot(i, col);
            } else {
                if (i != num_rows_ - 1) {
                    std::copy(row(num_rows_ - 1), row(num_rows_ - 1) + stride_, row(i));
                    basis_[i] = basis_[num_rows_ - 1];
                }
                --num_rows_;
                basis_.pop_back();
            }
        }
    }

    Outcome pivot_loop(int eligible) {
        while (true) {
            int entering = -1;
            if (bland_mode_) {
                for (int j = 0; j < eligible; ++j) {
                    if (cost_[j] < -tol::pivot) {
                        entering = j;
                        break;
                    }
                }
            } else {
                double best = -tol::pivot;
                for (int j = 0; j < eligible; ++j) {
                    if (cost_[j] < best) {
                        best = cost_[j];
                        entering = j;
                    }
                }
            }
            if (entering < 0) return Outcome::Optimal;

            int leaving = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < num_rows_; ++i) {
                const double a = row(i)[entering];
                if (a <= tol::pivot) continue;
                const double ratio = rhs(i) / a;
                if (leaving < 0 || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) return Outcome::Unbounded;

            if (++iterations_ > max_pivots_) return Outcome::IterationLimit;

            const double before = objective_value();
            pivot(leaving, entering);
            if (!bland_mode_) {
                if (objective_value() > before - 1e-12) {
                    if (++stalled_ > 1000) bland_mode_ = true;
                } else {
                    stalled_ = 0;
                }
            }
        }
    }

    void pivot(int r, int s) {
        double* prow = row(r);
        const double inv = 1.0 / prow[s];
        for (int j = 0; j < stride_; ++j) prow[j] *= inv;
        prow[s] = 1.0;
        for (int i = 0; i < num_rows_; ++i) {
            if (i == r) continue;
            double* dst = row(i);
            const double f = dst[s];
            if (f == 0.0) continue;
            for (int j = 0; j < stride_; ++j) dst[j] -= f * prow[j];
            dst[s] = 0.0;
        }
        const double f = cost_[s];
        if (f != 0.0) {
            for (int j = 0; j < total_cols_; ++j) cost_[j] -= f * prow[j];
            cost_rhs_ -= f * prow[total_cols_];
            cost_[s] = 0.0;
        }
        basis_[r] = s;
    }
};

/// Optimal basic solution of the continuous relaxation of `lp`.
inline SolveResult solve_lp(const LinearProgram& lp, long max_pivots = 50000) {
    lp.check_well_formed();
    return SimplexSolver(max_pivots).solve(lp);
}

/// Continuous relaxation with overriding variable bounds.
inline SolveResult solve_lp(const LinearProgram& lp, const std::vector<double>& lower,
                            const std::vector<double>& upper, long max_pivots = 50000) {
    return SimplexSolver(max_pivots).solve(lp, lower, upper);
}

}  // namespace mistp
