#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "mistp/branch_bound.hpp"
#include "mistp/io.hpp"
#include "mistp/model.hpp"
#include "oracles.hpp"

using namespace mistp;
using Catch::Matchers::WithinAbs;

namespace {

// Single-route instance: supply 10, demand 10, unit volume 1, vehicle volume
// 4, unit weight 1, vehicle weight 100, fleet 5, crisp cost 5 per trip.
Instance toy_instance(double demand = 10.0, int fleet = 5) {
    Instance inst;
    inst.num_sources = inst.num_destinations = inst.num_vehicle_types = inst.num_products = 1;
    inst.vehicle_cost = {TrapezoidalFuzzy::crisp(5)};
    inst.travel_time = {TrapezoidalFuzzy::crisp(1)};
    inst.handling_time = {TrapezoidalFuzzy::crisp(60)};
    inst.volume_cap = {4.0};
    inst.weight_cap = {100.0};
    inst.unit_volume = {1.0};
    inst.unit_weight = {1.0};
    inst.supply = {10.0};
    inst.demand = {demand};
    inst.fleet = {fleet};
    return inst;
}

}  // namespace

TEST_CASE("toy route needs three vehicles") {
    auto model = compile(toy_instance(), 0.9, 0.9);
    auto r = solve_milp(model.with_objective(model.objective_cost));
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK_THAT(r.objective, WithinAbs(15.0, 1e-9));  // z = 3 trips at cost 5
    CHECK_THAT(r.values[model.z_index(0, 0, 0)], WithinAbs(3.0, 1e-9));
    CHECK_THAT(r.values[model.x_index(0, 0, 0, 0)], WithinAbs(10.0, 1e-9));

    SECTION("brute force agrees") {
        auto oracle = brute_force_oracle(model.with_objective(model.objective_cost), {5});
        REQUIRE(oracle.status == SolveStatus::Optimal);
        CHECK_THAT(oracle.objective, WithinAbs(r.objective, 1e-9));
    }

    SECTION("identical input solves identically") {
        auto again = solve_milp(model.with_objective(model.objective_cost));
        CHECK(again.values == r.values);
        CHECK(again.objective == r.objective);
        CHECK(again.nodes == r.nodes);
        CHECK(again.iterations == r.iterations);
    }
}

TEST_CASE("toy route with one vehicle cannot meet demand") {
    auto inst = toy_instance(10.0, 1);
    // deliberately skip compile()'s validation by building the program the
    // same way but with an infeasible fleet; validation would reject it
    REQUIRE_FALSE(validate(inst).ok());
    inst.demand = {4.0};  // now validation passes (one trip of volume 4)
    auto model = compile(inst, 0.9, 0.9);
    LinearProgram lp = model.with_objective(model.objective_cost);
    // force demand back up; max shippable volume is 4 < 10
    lp.rows[1].rhs = 10.0;
    auto r = solve_milp(lp);
    REQUIRE(r.status == SolveStatus::Infeasible);
    auto oracle = brute_force_oracle(lp, {1});
    REQUIRE(oracle.status == SolveStatus::Infeasible);
}

TEST_CASE("iteration-limit surfaces when the node budget is tiny") {
    auto model = compile(toy_instance(), 0.9, 0.9);
    BranchBoundOptions options;
    options.node_limit = 0;
    auto r = solve_milp(model.with_objective(model.objective_cost), {}, options);
    REQUIRE(r.status == SolveStatus::IterationLimit);
}

TEST_CASE("extra rows constrain the solve") {
    auto model = compile(toy_instance(), 0.9, 0.9);
    // forbid fewer than 4 trips
    ConstraintRow row;
    row.coeffs.assign(model.program.num_variables(), 0.0);
    row.coeffs[model.z_index(0, 0, 0)] = 1.0;
    row.sense = RowSense::GreaterEqual;
    row.rhs = 4.0;
    auto r = solve_milp(model.with_objective(model.objective_cost), {row});
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK_THAT(r.objective, WithinAbs(20.0, 1e-9));
}

TEST_CASE("brute force refuses an oversized enumeration") {
    LinearProgram lp;
    for (int t = 0; t < 8; ++t) lp.add_variable(0.0, 100.0, true, 1.0);
    std::vector<int> bounds(8, 100);
    REQUIRE_THROWS_AS(brute_force_oracle(lp, bounds), std::domain_error);
}

TEST_CASE("branch and bound matches exhaustive enumeration on random MILPs") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coef(-4.0, 6.0);
    std::uniform_real_distribution<double> cost(-5.0, 5.0);
    std::uniform_real_distribution<double> rhs(2.0, 25.0);
    int optimal_count = 0;
    for (int t = 0; t < 120; ++t) {
        const int n_int = 1 + static_cast<int>(rng() % 4);     // <= 4 integer variables
        const int n_cont = 1 + static_cast<int>(rng() % 4);    // <= 4 continuous variables
        const int n = n_int + n_cont;
        LinearProgram lp;
        std::vector<int> z_bounds;
        for (int j = 0; j < n_int; ++j) {
            lp.add_variable(0.0, 4.0, true, cost(rng));
            z_bounds.push_back(4);
        }
        for (int j = 0; j < n_cont; ++j) lp.add_variable(0.0, 10.0, false, cost(rng));
        const int m = 1 + static_cast<int>(rng() % 4);
        for (int r = 0; r < m; ++r) {
            std::vector<double> row(n);
            for (auto& a : row) a = coef(rng);
            lp.add_row(std::move(row), rng() % 3 == 0 ? RowSense::GreaterEqual : RowSense::LessEqual, rhs(rng));
        }

        auto fast = solve_milp(lp);
        auto slow = brute_force_oracle(lp, z_bounds);
        INFO("seed iteration " << t);
        REQUIRE(fast.status == slow.status);
        if (fast.status == SolveStatus::Optimal) {
            ++optimal_count;
            REQUIRE_THAT(fast.objective, WithinAbs(slow.objective, 1e-6));
            for (int j = 0; j < n_int; ++j) {
                REQUIRE_THAT(fast.values[j], WithinAbs(std::round(fast.values[j]), 1e-6));
            }
        }
    }
    REQUIRE(optimal_count > 40);
}

TEST_CASE("solver output replays cleanly through evaluate") {
    auto inst = toy_instance();
    auto model = compile(inst, 0.9, 0.9);
    auto r = solve_milp(model.with_objective(model.objective_time));
    REQUIRE(r.status == SolveStatus::Optimal);
    auto sol = solution_from_result(model, r);
    auto eval = evaluate(inst, sol, 0.9, 0.9);
    REQUIRE(eval.feasible);
    CHECK_THAT(eval.f1, WithinAbs(sol.f1, 1e-9));
    CHECK_THAT(eval.f2, WithinAbs(sol.f2, 1e-9));
}

TEST_CASE("random single-source instances: solver vs oracle, replay feasible") {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> unit(0.5, 2.0);
    std::uniform_real_distribution<double> amount(2.0, 12.0);
    int solved = 0;
    for (int seed = 0; seed < 20; ++seed) {
        // 1 source, 2 destinations, 1 vehicle type, 1 product
        Instance inst;
        inst.num_sources = 1;
        inst.num_destinations = 2;
        inst.num_vehicle_types = 1;
        inst.num_products = 1;
        auto fuzzy_cost = [&] {
            auto xi = oracle::random_trapezoid(rng, 1.0, 20.0);
            return xi;
        };
        inst.vehicle_cost = {fuzzy_cost(), fuzzy_cost()};
        inst.travel_time = {fuzzy_cost(), fuzzy_cost()};
        inst.handling_time = {fuzzy_cost()};
        inst.volume_cap = {4.0 * unit(rng)};
        inst.weight_cap = {50.0};
        inst.unit_volume = {unit(rng)};
        inst.unit_weight = {unit(rng)};
        const double d1 = std::floor(amount(rng)), d2 = std::floor(amount(rng));
        inst.supply = {d1 + d2 + std::floor(amount(rng))};
        inst.demand = {d1, d2};
        const double volume_needed = inst.unit_volume[0] * (d1 + d2);
        inst.fleet = {static_cast<int>(std::ceil(volume_needed / inst.volume_cap[0])) + 3};
        REQUIRE(validate(inst).ok());

        auto model = compile(inst, 0.9, 0.9);
        auto lp = model.with_objective(model.objective_cost);
        auto fast = solve_milp(lp);
        auto slow = brute_force_oracle(lp, std::vector<int>(2, inst.fleet[0]));
        REQUIRE(fast.status == slow.status);
        if (fast.status != SolveStatus::Optimal) continue;
        ++solved;
        REQUIRE_THAT(fast.objective, WithinAbs(slow.objective, 1e-6));
        auto eval = evaluate(inst, solution_from_result(model, fast), 0.9, 0.9);
        REQUIRE(eval.feasible);
    }
    REQUIRE(solved == 20);  // generator builds feasible instances by construction
}

TEST_CASE("optimal cost is nondecreasing in the confidence level") {
    const char* dir = std::getenv("MISTP_FIXTURES");
    REQUIRE(dir != nullptr);
    auto inst = mistp::parse_instance(std::string(dir) + "/steel.json");
    auto low = compile(inst, 0.6, 0.9);
    auto high = compile(inst, 0.9, 0.9);
    auto r_low = solve_milp(low.with_objective(low.objective_cost));
    auto r_high = solve_milp(high.with_objective(high.objective_cost));
    REQUIRE(r_low.status == SolveStatus::Optimal);
    REQUIRE(r_high.status == SolveStatus::Optimal);
    CHECK(r_low.objective <= r_high.objective + 1e-9);
}
