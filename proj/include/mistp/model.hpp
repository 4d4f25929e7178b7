#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mistp/fuzzy.hpp"
#include "mistp/instance.hpp"
#include "mistp/linear_program.hpp"

namespace mistp {

struct CompileOptions {
    // Handling times enter the instance in minutes while the time objective
    // is in hours. Override for data already expressed in hours.
    double handling_time_divisor = 60.0;
};

/// Deterministic bi-objective MILP obtained from the chance-constrained model
/// at confidence levels (eta, gamma): every fuzzy coefficient is replaced by
/// its pessimistic value at the matching level. Continuous shipment variables
/// x[i][j][k][p] come first, then integer trip counts z[i][j][k].
struct CompiledModel {
    int m = 0, n = 0, K = 0, l = 0;
    double eta = 0.0, gamma = 0.0;
    double handling_time_divisor = 60.0;

    LinearProgram program;  // rows, bounds, integer flags; objective left zero
    std::vector<double> objective_cost;  // f'1 coefficients (currency)
    std::vector<double> objective_time;  // f'2 coefficients (hours)

    int num_shipment_vars() const { return m * n * K * l; }
    int num_trip_vars() const { return m * n * K; }

    int x_index(int i, int j, int k, int p) const { return ((i * n + j) * K + k) * l + p; }
    int z_index(int i, int j, int k) const { return num_shipment_vars() + (i * n + j) * K + k; }

    LinearProgram with_objective(std::vector<double> objective) const {
        LinearProgram lp = program;
        lp.objective = std::move(objective);
        return lp;
    }

    double objective_value(const std::vector<double>& objective, const std::vector<double>& values) const {
        double total = 0.0;
        for (std::size_t j = 0; j < objective.size(); ++j) total += objective[j] * values[j];
        return total;
    }
};

inline CompiledModel compile(const Instance& inst, double eta, double gamma,
                             const CompileOptions& options = {}) {
    if (!(eta > 0.0 && eta <= 1.0) || !(gamma > 0.0 && gamma <= 1.0)) {
        throw std::domain_error("compile: confidence levels must lie in (0, 1]");
    }
    ValidationReport report = validate(inst);
    if (!report.ok()) {
        throw std::invalid_argument("compile: invalid instance: " + report.errors.front());
    }

    CompiledModel model;
    model.m = inst.num_sources;
    model.n = inst.num_destinations;
    model.K = inst.num_vehicle_types;
    model.l = inst.num_products;
    model.eta = eta;
    model.gamma = gamma;
    model.handling_time_divisor = options.handling_time_divisor;

    const int m = model.m, n = model.n, K = model.K, l = model.l;
    const int num_vars = model.num_shipment_vars() + model.num_trip_vars();

    LinearProgram& lp = model.program;
    lp.objective.assign(num_vars, 0.0);
    lp.lower.assign(num_vars, 0.0);
    lp.upper.assign(num_vars, LinearProgram::kInf);
    lp.integer.assign(num_vars, false);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                const int z = model.z_index(i, j, k);
                lp.integer[z] = true;
                lp.upper[z] = inst.fleet[k];  // implied by the fleet row
            }
        }
    }

    model.objective_cost.assign(num_vars, 0.0);
    model.objective_time.assign(num_vars, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                const int z = model.z_index(i, j, k);
                model.objective_cost[z] = pessimistic_value(inst.cost(i, j, k), eta);
                model.objective_time[z] = pessimistic_value(inst.time(i, j, k), gamma);
                for (int p = 0; p < l; ++p) {
                    model.objective_time[model.x_index(i, j, k, p)] =
                        pessimistic_value(inst.handling(p, k), gamma) / options.handling_time_divisor;
                }
            }
        }
    }

    auto label = [](const char* name, std::initializer_list<int> idx) {
        std::string s(name);
        s += '[';
        bool first = true;
        for (int v : idx) {
            if (!first) s += ',';
            s += std::to_string(v + 1);
            first = false;
        }
        s += ']';
        return s;
    };

    // Source availability: sum over j,k of x <= supply.
    for (int i = 0; i < m; ++i) {
        for (int p = 0; p < l; ++p) {
            std::vector<double> row(num_vars, 0.0);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < K; ++k) row[model.x_index(i, j, k, p)] = 1.0;
            lp.add_row(std::move(row), RowSense::LessEqual, inst.supply[inst.supply_index(i, p)],
                       label("supply", {i, p}));
        }
    }
    // Demand satisfaction: sum over i,k of x >= demand.
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < l; ++p) {
            std::vector<double> row(num_vars, 0.0);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < K; ++k) row[model.x_index(i, j, k, p)] = 1.0;
            lp.add_row(std::move(row), RowSense::GreaterEqual, inst.demand[inst.demand_index(j, p)],
                       label("demand", {j, p}));
        }
    }
    // Volume coupling: loaded volume cannot exceed the booked vehicles'.
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                std::vector<double> row(num_vars, 0.0);
                for (int p = 0; p < l; ++p) row[model.x_index(i, j, k, p)] = inst.unit_volume[p];
                row[model.z_index(i, j, k)] = -inst.volume_cap[k];
                lp.add_row(std::move(row), RowSense::LessEqual, 0.0, label("volume", {i, j, k}));
            }
        }
    }
    // Weight coupling.
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                std::vector<double> row(num_vars, 0.0);
                for (int p = 0; p < l; ++p) row[model.x_index(i, j, k, p)] = inst.unit_weight[p];
                row[model.z_index(i, j, k)] = -inst.weight_cap[k];
                lp.add_row(std::move(row), RowSense::LessEqual, 0.0, label("weight", {i, j, k}));
            }
        }
    }
    // Fleet limits per vehicle type.
    for (int k = 0; k < K; ++k) {
        std::vector<double> row(num_vars, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) row[model.z_index(i, j, k)] = 1.0;
        lp.add_row(std::move(row), RowSense::LessEqual, static_cast<double>(inst.fleet[k]),
                   label("fleet", {k}));
    }

    return model;
}

/// Solution of the MISTP: shipment amounts x and vehicle trip counts z with
/// the two objective values at the confidence levels it was solved under.
struct MistpSolution {
    int m = 0, n = 0, K = 0, l = 0;
    std::vector<double> shipments;  // [i][j][k][p]
    std::vector<double> trips;      // [i][j][k], integer-valued
    double f1 = 0.0;                // currency
    double f2 = 0.0;                // hours
    SolveStatus status = SolveStatus::Infeasible;

    std::size_t x_flat(int i, int j, int k, int p) const {
        return ((static_cast<std::size_t>(i) * n + j) * K + k) * l + p;
    }
    std::size_t z_flat(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * K + k;
    }
    double x(int i, int j, int k, int p) const { return shipments[x_flat(i, j, k, p)]; }
    double z(int i, int j, int k) const { return trips[z_flat(i, j, k)]; }
};

inline MistpSolution solution_from_result(const CompiledModel& model, const SolveResult& result) {
    MistpSolution sol;
    sol.m = model.m;
    sol.n = model.n;
    sol.K = model.K;
    sol.l = model.l;
    sol.status = result.status;
    if (result.values.empty()) return sol;
    sol.shipments.assign(result.values.begin(), result.values.begin() + model.num_shipment_vars());
    sol.trips.assign(result.values.begin() + model.num_shipment_vars(), result.values.end());
    sol.f1 = model.objective_value(model.objective_cost, result.values);
    sol.f2 = model.objective_value(model.objective_time, result.values);
    return sol;
}

struct ConstraintCheck {
    std::string label;
    double activity = 0.0;
    double bound = 0.0;
    double slack = 0.0;  // >= 0 means satisfied
    bool satisfied = true;
};

struct EvaluationResult {
    double f1 = 0.0;
    double f2 = 0.0;
    bool feasible = true;
    std::vector<ConstraintCheck> checks;
};

/// Replays a candidate solution against the instance: recomputes both
/// pessimistic objective values by aggregating the fuzzy totals first (a
/// route independent of the compiled coefficient vectors) and checks every
/// model constraint with absolute tolerance tol::feasibility.
inline EvaluationResult evaluate(const Instance& inst, const MistpSolution& sol, double eta, double gamma,
                                 const CompileOptions& options = {}) {
    if (!(eta > 0.0 && eta <= 1.0) || !(gamma > 0.0 && gamma <= 1.0)) {
        throw std::domain_error("evaluate: confidence levels must lie in (0, 1]");
    }
    const int m = inst.num_sources, n = inst.num_destinations;
    const int K = inst.num_vehicle_types, l = inst.num_products;
    if (sol.m != m || sol.n != n || sol.K != K || sol.l != l ||
        sol.shipments.size() != static_cast<std::size_t>(m) * n * K * l ||
        sol.trips.size() != static_cast<std::size_t>(m) * n * K) {
        throw std::invalid_argument("evaluate: solution dimensions do not match instance");
    }

    EvaluationResult out;

    // Objectives: total fuzzy cost/time as one trapezoid, then one
    // pessimistic value. Negative entries (reported below) contribute zero.
    std::vector<std::pair<double, TrapezoidalFuzzy>> cost_terms, time_terms;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                const double zv = std::max(0.0, sol.z(i, j, k));
                cost_terms.emplace_back(zv, inst.cost(i, j, k));
                time_terms.emplace_back(zv, inst.time(i, j, k));
                for (int p = 0; p < l; ++p) {
                    const double xv = std::max(0.0, sol.x(i, j, k, p));
                    time_terms.emplace_back(xv / options.handling_time_divisor, inst.handling(p, k));
                }
            }
        }
    }
    out.f1 = pessimistic_value(linear_combination(cost_terms), eta);
    out.f2 = pessimistic_value(linear_combination(time_terms), gamma);

    auto add_check = [&](std::string label, double activity, double bound, RowSense sense) {
        ConstraintCheck c;
        c.label = std::move(label);
        c.activity = activity;
        c.bound = bound;
        c.slack = (sense == RowSense::GreaterEqual) ? activity - bound : bound - activity;
        c.satisfied = c.slack >= -tol::feasibility;
        out.feasible = out.feasible && c.satisfied;
        out.checks.push_back(std::move(c));
    };
    auto idx3 = [](const char* name, int a, int b, int c) {
        return std::string(name) + "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "," +
               std::to_string(c + 1) + "]";
    };

    for (int i = 0; i < m; ++i) {
        for (int p = 0; p < l; ++p) {
            double shipped = 0.0;
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < K; ++k) shipped += sol.x(i, j, k, p);
            add_check("supply[" + std::to_string(i + 1) + "," + std::to_string(p + 1) + "]", shipped,
                      inst.supply[inst.supply_index(i, p)], RowSense::LessEqual);
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < l; ++p) {
            double received = 0.0;
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < K; ++k) received += sol.x(i, j, k, p);
            add_check("demand[" + std::to_string(j + 1) + "," + std::to_string(p + 1) + "]", received,
                      inst.demand[inst.demand_index(j, p)], RowSense::GreaterEqual);
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                double loaded_volume = 0.0, loaded_weight = 0.0;
                for (int p = 0; p < l; ++p) {
                    loaded_volume += inst.unit_volume[p] * sol.x(i, j, k, p);
                    loaded_weight += inst.unit_weight[p] * sol.x(i, j, k, p);
                }
                const double zv = sol.z(i, j, k);
                add_check(idx3("volume", i, j, k), loaded_volume, zv * inst.volume_cap[k], RowSense::LessEqual);
                add_check(idx3("weight", i, j, k), loaded_weight, zv * inst.weight_cap[k], RowSense::LessEqual);
            }
        }
    }
    for (int k = 0; k < K; ++k) {
        double used = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) used += sol.z(i, j, k);
        add_check("fleet[" + std::to_string(k + 1) + "]", used, static_cast<double>(inst.fleet[k]),
                  RowSense::LessEqual);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                for (int p = 0; p < l; ++p) {
                    add_check(std::string("nonneg x[") + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  "," + std::to_string(k + 1) + "," + std::to_string(p + 1) + "]",
                              sol.x(i, j, k, p), 0.0, RowSense::GreaterEqual);
                }
                const double zv = sol.z(i, j, k);
                add_check("nonneg " + idx3("z", i, j, k), zv, 0.0, RowSense::GreaterEqual);
                ConstraintCheck c;
                c.label = "integral " + idx3("z", i, j, k);
                c.activity = zv;
                c.bound = std::round(zv);
                c.slack = tol::integrality - std::abs(zv - std::round(zv));
                c.satisfied = c.slack >= 0.0;
                out.feasible = out.feasible && c.satisfied;
                out.checks.push_back(std::move(c));
            }
        }
    }

    return out;
}

}  // namespace mistp
