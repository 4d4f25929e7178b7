#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mistp/fuzzy.hpp"

namespace mistp {

/// Data set for the multi-item solid transportation problem: m sources, n
/// destinations, K vehicle types, l products. Per-trip vehicle cost and
/// travel time, and per-unit loading/unloading time, are trapezoidal fuzzy;
/// capacities, supplies, demands and fleet sizes are crisp.
///
/// Tensors are stored flat; the *_index helpers give the layout.
struct Instance {
    int num_sources = 0;        // i = 1..m
    int num_destinations = 0;   // j = 1..n
    int num_vehicle_types = 0;  // k = 1..K
    int num_products = 0;       // p = 1..l

    std::vector<TrapezoidalFuzzy> vehicle_cost;   // [i][j][k], currency per trip
    std::vector<TrapezoidalFuzzy> travel_time;    // [i][j][k], hours per trip
    std::vector<TrapezoidalFuzzy> handling_time;  // [p][k], minutes per unit

    std::vector<double> volume_cap;   // [k], ft^3 per vehicle
    std::vector<double> weight_cap;   // [k], kg per vehicle
    std::vector<double> unit_volume;  // [p], ft^3 per unit
    std::vector<double> unit_weight;  // [p], kg per unit
    std::vector<double> supply;       // [i][p], units available
    std::vector<double> demand;       // [j][p], units required
    std::vector<int> fleet;           // [k], vehicles available

    std::size_t route_index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * num_destinations + j) * num_vehicle_types + k;
    }
    std::size_t handling_index(int p, int k) const {
        return static_cast<std::size_t>(p) * num_vehicle_types + k;
    }
    std::size_t supply_index(int i, int p) const {
        return static_cast<std::size_t>(i) * num_products + p;
    }
    std::size_t demand_index(int j, int p) const {
        return static_cast<std::size_t>(j) * num_products + p;
    }

    const TrapezoidalFuzzy& cost(int i, int j, int k) const { return vehicle_cost[route_index(i, j, k)]; }
    const TrapezoidalFuzzy& time(int i, int j, int k) const { return travel_time[route_index(i, j, k)]; }
    const TrapezoidalFuzzy& handling(int p, int k) const { return handling_time[handling_index(p, k)]; }

    friend bool operator==(const Instance&, const Instance&) = default;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

/// Structural and arithmetic sanity checks. An empty error list is exactly
/// the precondition compile() requires. Indices in messages are 1-based.
inline ValidationReport validate(const Instance& inst) {
    ValidationReport report;
    auto error = [&](std::string msg) { report.errors.push_back(std::move(msg)); };

    const int m = inst.num_sources, n = inst.num_destinations;
    const int K = inst.num_vehicle_types, l = inst.num_products;
    if (m < 1 || n < 1 || K < 1 || l < 1) {
        error("all dimensions must be at least 1");
        return report;
    }

    const std::size_t routes = static_cast<std::size_t>(m) * n * K;
    if (inst.vehicle_cost.size() != routes) error("cost table size does not match m*n*K");
    if (inst.travel_time.size() != routes) error("travel time table size does not match m*n*K");
    if (inst.handling_time.size() != static_cast<std::size_t>(l) * K) {
        error("handling time table size does not match l*K");
    }
    if (inst.volume_cap.size() != static_cast<std::size_t>(K)) error("volume capacity list size does not match K");
    if (inst.weight_cap.size() != static_cast<std::size_t>(K)) error("weight capacity list size does not match K");
    if (inst.unit_volume.size() != static_cast<std::size_t>(l)) error("unit volume list size does not match l");
    if (inst.unit_weight.size() != static_cast<std::size_t>(l)) error("unit weight list size does not match l");
    if (inst.supply.size() != static_cast<std::size_t>(m) * l) error("supply table size does not match m*l");
    if (inst.demand.size() != static_cast<std::size_t>(n) * l) error("demand table size does not match n*l");
    if (inst.fleet.size() != static_cast<std::size_t>(K)) error("fleet list size does not match K");
    if (!report.errors.empty()) return report;

    for (int k = 0; k < K; ++k) {
        if (!(inst.volume_cap[k] > 0)) error("volume_cap[" + std::to_string(k + 1) + "] must be positive");
        if (!(inst.weight_cap[k] > 0)) error("weight_cap[" + std::to_string(k + 1) + "] must be positive");
        if (inst.fleet[k] < 0) error("fleet[" + std::to_string(k + 1) + "] must be nonnegative");
    }
    for (int p = 0; p < l; ++p) {
        if (!(inst.unit_volume[p] > 0)) error("unit_volume[" + std::to_string(p + 1) + "] must be positive");
        if (!(inst.unit_weight[p] > 0)) error("unit_weight[" + std::to_string(p + 1) + "] must be positive");
    }
    for (int i = 0; i < m; ++i) {
        for (int p = 0; p < l; ++p) {
            if (inst.supply[inst.supply_index(i, p)] < 0) {
                error("supply[" + std::to_string(i + 1) + "][" + std::to_string(p + 1) + "] is negative");
            }
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int p = 0; p < l; ++p) {
            if (inst.demand[inst.demand_index(j, p)] < 0) {
                error("demand[" + std::to_string(j + 1) + "][" + std::to_string(p + 1) + "] is negative");
            }
        }
    }

    auto check_fuzzy = [&](const TrapezoidalFuzzy& v, const std::string& where) {
        if (v.r1 < 0) report.errors.push_back(where + " has a negative component");
        if (v.is_crisp()) report.warnings.push_back(where + " is crisp (degenerate trapezoid)");
    };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < K; ++k) {
                const std::string at = "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "][" +
                                       std::to_string(k + 1) + "]";
                check_fuzzy(inst.cost(i, j, k), "cost" + at);
                check_fuzzy(inst.time(i, j, k), "travel_time" + at);
            }
        }
    }
    for (int p = 0; p < l; ++p) {
        for (int k = 0; k < K; ++k) {
            check_fuzzy(inst.handling(p, k), "handling_time[" + std::to_string(p + 1) + "][" +
                                                 std::to_string(k + 1) + "]");
        }
    }

    // Aggregate feasibility necessities: per-product supply cover, and fleet
    // volume/weight capacity against total demand.
    for (int p = 0; p < l; ++p) {
        double total_supply = 0, total_demand = 0;
        for (int i = 0; i < m; ++i) total_supply += inst.supply[inst.supply_index(i, p)];
        for (int j = 0; j < n; ++j) total_demand += inst.demand[inst.demand_index(j, p)];
        if (total_supply < total_demand) {
            error("supply < demand for product " + std::to_string(p + 1));
        }
    }
    double fleet_volume = 0, fleet_weight = 0, demand_volume = 0, demand_weight = 0;
    for (int k = 0; k < K; ++k) {
        fleet_volume += static_cast<double>(inst.fleet[k]) * inst.volume_cap[k];
        fleet_weight += static_cast<double>(inst.fleet[k]) * inst.weight_cap[k];
    }
    for (int p = 0; p < l; ++p) {
        double total_demand = 0;
        for (int j = 0; j < n; ++j) total_demand += inst.demand[inst.demand_index(j, p)];
        demand_volume += inst.unit_volume[p] * total_demand;
        demand_weight += inst.unit_weight[p] * total_demand;
    }
    if (fleet_volume < demand_volume) {
        error("fleet-capacity: total fleet volume " + std::to_string(fleet_volume) +
              " cannot carry total demand volume " + std::to_string(demand_volume));
    }
    if (fleet_weight < demand_weight) {
        error("fleet-capacity: total fleet weight " + std::to_string(fleet_weight) +
              " cannot carry total demand weight " + std::to_string(demand_weight));
    }

    return report;
}

}  // namespace mistp
