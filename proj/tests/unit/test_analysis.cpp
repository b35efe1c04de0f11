#include "doctest.h"
#include "ggchain/analysis.hpp"
#include "ggchain/closed_form.hpp"
#include "ggchain/errors.hpp"
#include "test_util.hpp"

#include <array>
#include <cmath>
#include <numbers>

using namespace ggchain;
using ggchain::testing::rel_diff;

TEST_CASE("sweep_centered example rows") {
    const Tau tau(0.45);
    const double lambda = std::acosh(1.0 / 0.9);
    const auto sweep = sweep_centered(0, 1, tau, 2, 40);
    CHECK(sweep.records.size() == 39);
    CHECK(sweep.records.front().n == 2);
    CHECK(sweep.records.back().n == 40);
    CHECK(rel_diff(sweep.coefficient, -std::sinh(2.0 * lambda)) <= 1e-13);
    CHECK(rel_diff(sweep.coefficient, -1.0762713440841174) <= 1e-13);

    const auto& row = sweep.records[30 - 2];
    CHECK(row.n == 30);
    CHECK(rel_diff(row.scaled_rel, -std::sinh(2.0 * lambda)) <= 0.01);
    CHECK(row.exact == omega_centered(30, 0, 1, tau));
    CHECK(row.limit == omega_limit(0, 1, tau));

    for (const auto& r : sweep.records) {
        CHECK(r.abs_err < 0.0);
        CHECK(r.rel_err < 0.0);
        CHECK(std::abs(r.abs_err - (r.exact - r.limit)) <= 1e-15);
    }
    CHECK_THROWS_AS(sweep_centered(0, 1, tau, 1, 40), DomainError);
    CHECK_THROWS_AS(sweep_centered(0, 1, tau, 10, 9), DomainError);
    CHECK_THROWS_AS(sweep_centered(0, 1, Tau(0.0), 5, 9), DomainError);
}

TEST_CASE("sweeps on the diagonal are exactly zero") {
    for (const auto& sweep : {sweep_centered(2, 2, Tau(0.3), 3, 20), sweep_open(2, 2, Tau(0.3), 2, 20)}) {
        for (const auto& r : sweep.records) {
            CHECK(r.exact == 1.0);
            CHECK(r.abs_err == 0.0);
            CHECK(r.rel_err == 0.0);
            CHECK(r.scaled_rel == 0.0);
        }
        CHECK(sweep.coefficient == 0.0);
    }
}

TEST_CASE("sweep_open") {
    const auto sweep = sweep_open(1, 2, Tau(0.4), 2, 25);
    CHECK(sweep.coefficient == -6.0);
    for (const auto& r : sweep.records) {
        CHECK(r.exact < r.limit);
        CHECK(r.abs_err < 0.0);
    }
    // scaled_rel tends to -6 from the first-order remainder
    CHECK(rel_diff(sweep.records.back().scaled_rel, -6.0) <= 1e-6);
    CHECK_THROWS_AS(sweep_open(0, 2, Tau(0.4), 2, 5), DomainError);
    CHECK_THROWS_AS(sweep_open(1, 4, Tau(0.4), 3, 5), DomainError);
}

TEST_CASE("scaled_rel is NaN once the order underflows") {
    const auto sweep = sweep_centered(0, 1, Tau(0.05), 2, 200);
    CHECK(std::isfinite(sweep.records.front().scaled_rel));
    CHECK(std::isnan(sweep.records.back().scaled_rel));
}

TEST_CASE("scaled_rel sequences are Cauchy-like") {
    const Tau tau(0.45);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 3}, std::pair{-2, 2}}) {
        const int n_min = std::max(std::abs(i), std::abs(j)) + 1;
        const auto sweep = sweep_centered(i, j, tau, n_min, 30);
        const double coeff = sweep.coefficient;
        for (const auto& r : sweep.records) {
            const int n2 = 2 * r.n;
            if (n2 > 30) break;
            const auto& r2 = sweep.records[static_cast<std::size_t>(n2 - n_min)];
            REQUIRE(r2.n == n2);
            REQUIRE(std::abs(r2.scaled_rel - coeff) < std::abs(r.scaled_rel - coeff));
        }
    }
    const auto open = sweep_open(2, 5, tau, 5, 30);
    for (const auto& r : open.records) {
        const int n2 = 2 * r.n;
        if (n2 > 30) break;
        const auto& r2 = open.records[static_cast<std::size_t>(n2 - 5)];
        REQUIRE(std::abs(r2.scaled_rel - open.coefficient) < std::abs(r.scaled_rel - open.coefficient));
    }
}

TEST_CASE("fit_abs_error_rate") {
    const Tau tau(0.45);
    const auto fit = fit_abs_error_rate(sweep_centered(0, 1, tau, 5, 40));
    const double lambda = std::acosh(1.0 / 0.9);
    CHECK(rel_diff(fit.expected_slope, -2.0 * lambda) <= 1e-14);
    CHECK(fit.relative_slope_error() <= 0.02);
    CHECK(fit.r_squared >= 0.999);
    CHECK(fit.r_squared <= 1.0);
    CHECK(fit.points >= kFitMinPoints);

    const auto open_fit = fit_abs_error_rate(sweep_open(1, 2, tau, 2, 40));
    CHECK(open_fit.relative_slope_error() <= 0.02);

    CHECK_THROWS_AS(fit_abs_error_rate(sweep_centered(1, 1, tau, 5, 40)), InsufficientData);
    // e^{-2 n lambda} with lambda ~ 2.99 drops below the noise floor after a few n
    CHECK_THROWS_AS(fit_abs_error_rate(sweep_centered(0, 1, Tau(0.05), 5, 40)), InsufficientData);
    try {
        (void)fit_abs_error_rate(sweep_cycle(1, Tau(0.45), 5, 40));
        FAIL("cycle fit accepted");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()) == "no asymptotic expansion available for cycle");
    }
}

TEST_CASE("sweep_cycle") {
    const auto sweep = sweep_cycle(1, Tau(0.4), 3, 10);
    CHECK(sweep.records.size() == 8);
    CHECK(rel_diff(sweep.records.front().exact, 2.0 / 3.0) <= 1e-14);
    CHECK(sweep.records.front().limit == 0.5);
    CHECK(std::isnan(sweep.coefficient));
    for (const auto& r : sweep.records) CHECK(std::isnan(r.scaled_rel));
    CHECK_THROWS_AS(sweep_cycle(3, Tau(0.4), 3, 10), DomainError);
}

TEST_CASE("riemann_gap") {
    const std::array<int, 4> ns{8, 16, 32, 64};
    const auto rows = riemann_gap(0, Tau(0.4), ns);
    REQUIRE(rows.size() == 4);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        CHECK(std::abs(rows[r].gap) < std::abs(rows[r - 1].gap));
    }
    CHECK(rel_diff(rows[0].integral, 2.0 * std::numbers::pi / 0.6) <= 1e-15);

    for (const auto& row : riemann_gap(0, Tau(0.0), ns)) CHECK(row.gap == 0.0);

    const std::array<int, 2> big{64, 128};
    const auto k1 = riemann_gap(1, Tau(0.4), big);
    CHECK(rel_diff(k1[0].integral, 5.235987755982989) <= 1e-15);
    CHECK(std::abs(k1[0].gap) <= 1e-12);
    CHECK(std::abs(k1[1].gap) <= 1e-12);
}

TEST_CASE("riemann_gap shrinks from 64 to 128 nodes where resolvable") {
    const std::array<int, 2> big{64, 128};
    for (double t : {0.45, 0.49}) {
        for (int k = 0; k <= 5; ++k) {
            const auto rows = riemann_gap(k, Tau(t), big);
            CHECK(std::abs(rows[1].gap) < std::abs(rows[0].gap));
        }
    }
}

// Known failure: at tau = 0.4 both gaps (~1e-19 and ~1e-38 exactly) sit
// below the rounding of a sum of size 10, so their ratio is noise.
TEST_CASE("riemann_gap ratio at k=1, tau=0.4, n=64 vs 128 is below 1" * doctest::should_fail()) {
    const std::array<int, 2> big{64, 128};
    const auto rows = riemann_gap(1, Tau(0.4), big);
    CHECK(std::abs(rows[1].gap) / std::abs(rows[0].gap) < 1.0);
}

TEST_CASE("gff_table") {
    const std::array<double, 6> masses{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    const auto rows = gff_table(masses);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row.discrepancy <= 1e-12);
        CHECK(row.lambda > 0.0);
    }
    CHECK(rel_diff(rows[2].tau, 0.25) <= 1e-15);
    CHECK(rel_diff(rows[2].lambda, std::log(2.0 + std::sqrt(3.0))) <= 1e-14);
    CHECK(rel_diff(rows[3].tau, 0.1) <= 1e-15);
    CHECK(rel_diff(rows[3].xi, 2.2924316695611777) <= 1e-15);
    CHECK(rel_diff(rows[3].lambda, 2.2924316695611777) <= 1e-13);
    // both rates approach ln(2 m^2) for large m
    CHECK(std::abs(rows[5].xi - std::log(200.0)) < 0.01);

    const std::array<double, 2> bad{1.0, 0.0};
    CHECK_THROWS_AS(gff_table(bad), DomainError);
}

TEST_CASE("exact_correlation") {
    const auto m = exact_correlation(GraphSpec(GraphKind::CenteredChain, 1), Tau(0.4));
    CHECK(m.rows() == 3);
    CHECK(m(1, 1) == 1.0);
    CHECK(m(0, 1) == omega_centered(1, -1, 0, Tau(0.4)));
    const auto c = exact_correlation(GraphSpec(GraphKind::Cycle, 3), Tau(0.4));
    CHECK(rel_diff(c(0, 2), 2.0 / 3.0) <= 1e-14);
    CHECK(exact_correlation(GraphSpec(GraphKind::OpenChain, 1), Tau(0.3))(0, 0) == 1.0);
}
