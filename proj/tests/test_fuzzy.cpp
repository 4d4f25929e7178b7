#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "mistp/fuzzy.hpp"
#include "oracles.hpp"

using mistp::TrapezoidalFuzzy;
using Catch::Matchers::WithinAbs;

TEST_CASE("trapezoid constructor enforces component ordering") {
    REQUIRE_NOTHROW(TrapezoidalFuzzy(1, 2, 3, 4));
    REQUIRE_NOTHROW(TrapezoidalFuzzy(2, 2, 2, 2));
    REQUIRE_THROWS_AS(TrapezoidalFuzzy(4, 3, 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(TrapezoidalFuzzy(1, 3, 2, 4), std::invalid_argument);
}

TEST_CASE("membership shape") {
    TrapezoidalFuzzy xi(1, 2, 3, 4);
    CHECK(mistp::membership(xi, 2.5) == 1.0);
    CHECK(mistp::membership(xi, 1.5) == 0.5);
    CHECK(mistp::membership(xi, 5.0) == 0.0);
    CHECK(mistp::membership(xi, 0.0) == 0.0);
    CHECK(mistp::membership(xi, 1.0) == 0.0);
    CHECK(mistp::membership(xi, 4.0) == 0.0);
    CHECK(mistp::membership(xi, 2.0) == 1.0);
    CHECK(mistp::membership(xi, 3.0) == 1.0);
    CHECK_THAT(mistp::membership(xi, 3.5), WithinAbs(0.5, 1e-15));

    // degenerate left ramp is a step with value 1 at the point itself
    TrapezoidalFuzzy step(2, 2, 3, 4);
    CHECK(mistp::membership(step, 2.0) == 1.0);
    CHECK(mistp::membership(step, 1.9999) == 0.0);

    TrapezoidalFuzzy crisp = TrapezoidalFuzzy::crisp(7);
    CHECK(mistp::membership(crisp, 7.0) == 1.0);
    CHECK(mistp::membership(crisp, 7.1) == 0.0);
}

TEST_CASE("credibility of threshold events") {
    TrapezoidalFuzzy xi(1, 2, 3, 4);
    CHECK_THAT(mistp::credibility_leq(xi, 2.0), WithinAbs(0.5, 1e-15));
    CHECK(mistp::credibility_leq(xi, 0.0) == 0.0);
    CHECK_THAT(mistp::credibility_leq(xi, 3.5), WithinAbs(0.75, 1e-15));
    CHECK(mistp::credibility_leq(xi, 4.0) == 1.0);
    CHECK_THAT(mistp::credibility_leq(xi, 2.7), WithinAbs(0.5, 1e-15));

    SECTION("matches the membership-sup oracle on random trapezoids") {
        std::mt19937 rng(20240501);
        for (int t = 0; t < 50; ++t) {
            auto z = oracle::random_trapezoid(rng);
            std::uniform_real_distribution<double> xs(z.r1 - 2.0, z.r4 + 2.0);
            for (int j = 0; j < 20; ++j) {
                double x = xs(rng);
                INFO("xi=(" << z.r1 << "," << z.r2 << "," << z.r3 << "," << z.r4 << ") x=" << x);
                CHECK_THAT(mistp::credibility_leq(z, x),
                           WithinAbs(oracle::credibility_leq_grid(z, x), 1e-12));
            }
        }
    }

    SECTION("degenerate ramps stay well-defined") {
        TrapezoidalFuzzy step(2, 2, 3, 3);
        CHECK(mistp::credibility_leq(step, 1.9999) == 0.0);
        CHECK_THAT(mistp::credibility_leq(step, 2.0), WithinAbs(0.5, 1e-15));
        CHECK(mistp::credibility_leq(step, 3.0) == 1.0);
        TrapezoidalFuzzy crisp = TrapezoidalFuzzy::crisp(5);
        CHECK(mistp::credibility_leq(crisp, 5.0) == 1.0);
        CHECK(mistp::credibility_leq(crisp, 4.9999) == 0.0);
    }
}

TEST_CASE("alpha-pessimistic and alpha-optimistic values") {
    TrapezoidalFuzzy cost(101, 102, 104, 105);
    CHECK_THAT(mistp::pessimistic_value(cost, 0.9), WithinAbs(104.8, 1e-12));
    CHECK_THAT(mistp::pessimistic_value(cost, 0.5), WithinAbs(102.0, 1e-12));
    CHECK_THAT(mistp::pessimistic_value(cost, 1.0), WithinAbs(105.0, 1e-12));

    TrapezoidalFuzzy xi(1, 2, 3, 4);
    CHECK_THAT(mistp::optimistic_value(xi, 0.5), WithinAbs(3.0, 1e-12));
    CHECK_THAT(mistp::optimistic_value(xi, 1.0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(mistp::optimistic_value(xi, 0.25), WithinAbs(3.5, 1e-12));

    CHECK_THROWS_AS(mistp::pessimistic_value(xi, 0.0), std::domain_error);
    CHECK_THROWS_AS(mistp::pessimistic_value(xi, 1.5), std::domain_error);
    CHECK_THROWS_AS(mistp::optimistic_value(xi, -0.1), std::domain_error);
    CHECK_THROWS_AS(mistp::optimistic_value(xi, 1.0001), std::domain_error);
}

TEST_CASE("closed forms match bisection on the credibility functions") {
    std::mt19937 rng(7);
    for (int t = 0; t < 100; ++t) {
        auto xi = oracle::random_trapezoid(rng);
        for (int i = 1; i <= 99; ++i) {
            double alpha = i / 100.0;
            INFO("xi=(" << xi.r1 << "," << xi.r2 << "," << xi.r3 << "," << xi.r4 << ") alpha=" << alpha);
            REQUIRE_THAT(mistp::pessimistic_value(xi, alpha),
                         WithinAbs(oracle::pessimistic_by_bisection(xi, alpha), 1e-9));
            REQUIRE_THAT(mistp::optimistic_value(xi, alpha),
                         WithinAbs(oracle::optimistic_by_bisection(xi, alpha), 1e-9));
        }
    }
}

TEST_CASE("alpha-value properties") {
    std::mt19937 rng(99);

    SECTION("monotone in alpha") {
        for (int t = 0; t < 200; ++t) {
            auto xi = oracle::random_trapezoid(rng);
            double prev_pess = xi.r1 - 1.0;
            double prev_opt = xi.r4 + 1.0;
            for (int i = 1; i <= 99; ++i) {
                double alpha = i / 100.0;
                double p = mistp::pessimistic_value(xi, alpha);
                double o = mistp::optimistic_value(xi, alpha);
                REQUIRE(p >= prev_pess - 1e-12);
                REQUIRE(o <= prev_opt + 1e-12);
                prev_pess = p;
                prev_opt = o;
            }
        }
    }

    SECTION("duality: optimistic(xi) = -pessimistic(-xi)") {
        for (int t = 0; t < 200; ++t) {
            auto xi = oracle::random_trapezoid(rng);
            for (int i = 1; i <= 99; ++i) {
                double alpha = i / 100.0;
                REQUIRE_THAT(mistp::optimistic_value(xi, alpha),
                             WithinAbs(-mistp::pessimistic_value(-xi, alpha), 1e-9));
            }
        }
    }

    SECTION("crisp trapezoid has both alpha-values equal to the point") {
        for (double alpha : {0.01, 0.25, 0.5, 0.75, 0.99, 1.0}) {
            auto c = TrapezoidalFuzzy::crisp(-3.25);
            REQUIRE(mistp::pessimistic_value(c, alpha) == -3.25);
            REQUIRE(mistp::optimistic_value(c, alpha) == -3.25);
        }
    }
}

TEST_CASE("linear combination of trapezoids") {
    TrapezoidalFuzzy a(1, 2, 3, 4), b(0, 1, 1, 2);

    auto scaled = mistp::linear_combination({{2.0, a}});
    CHECK(scaled == TrapezoidalFuzzy(2, 4, 6, 8));

    auto sum = mistp::linear_combination({{1.0, a}, {1.0, b}});
    CHECK(sum == TrapezoidalFuzzy(1, 3, 4, 6));

    auto empty = mistp::linear_combination({});
    CHECK(empty == TrapezoidalFuzzy(0, 0, 0, 0));

    std::vector<std::pair<double, TrapezoidalFuzzy>> bad = {{-1.0, a}};
    CHECK_THROWS_AS(mistp::linear_combination(bad), std::domain_error);

    SECTION("output ordering holds for random nonnegative combinations") {
        std::mt19937 rng(123);
        std::uniform_real_distribution<double> wd(0.0, 10.0);
        std::uniform_real_distribution<double> shift(0.0, 100.0);
        for (int t = 0; t < 200; ++t) {
            std::vector<std::pair<double, TrapezoidalFuzzy>> terms;
            int n = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < n; ++i) {
                auto xi = oracle::random_trapezoid(rng, shift(rng), shift(rng) + 100.0);
                terms.emplace_back(wd(rng), xi);
            }
            auto combo = mistp::linear_combination(terms);
            REQUIRE(combo.r1 <= combo.r2);
            REQUIRE(combo.r2 <= combo.r3);
            REQUIRE(combo.r3 <= combo.r4);
        }
    }
}

TEST_CASE("pessimistic value is linear over nonnegative combinations") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> wd(0.0, 5.0);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::pair<double, TrapezoidalFuzzy>> terms;
        int n = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            terms.emplace_back(wd(rng), oracle::random_trapezoid(rng));
        }
        auto combo = mistp::linear_combination(terms);
        for (int i = 1; i <= 99; i += 7) {
            double alpha = i / 100.0;
            double direct = mistp::pessimistic_value(combo, alpha);
            double summed = 0.0;
            for (const auto& [w, xi] : terms) summed += w * mistp::pessimistic_value(xi, alpha);
            REQUIRE_THAT(direct, WithinAbs(summed, 1e-9));
        }
    }
}
