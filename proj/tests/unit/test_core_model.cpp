#include "doctest.h"
#include "ggchain/core_model.hpp"
#include "ggchain/errors.hpp"
#include "ggchain/oracle.hpp"
#include "test_util.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace ggchain;
using ggchain::testing::rel_diff;

TEST_CASE("Tau rejects values outside [0, 1/2)") {
    CHECK_NOTHROW(Tau(0.0));
    CHECK_NOTHROW(Tau(0.4999999));
    CHECK_THROWS_AS(Tau(0.5), DomainError);
    CHECK_THROWS_AS(Tau(-1e-12), DomainError);
    CHECK_THROWS_AS(Tau(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("decay_params hand values") {
    const auto d = decay_params(Tau(0.4));
    CHECK(std::abs(d.lambda - std::log(2.0)) <= 1e-15);
    CHECK(std::abs(d.alpha - 0.5) <= 1e-15);

    const auto q = decay_params(Tau(0.25));
    CHECK(rel_diff(q.lambda, 1.3169578969248166) <= 1e-15);
    CHECK(rel_diff(q.alpha, 2.0 - std::sqrt(3.0)) <= 1e-15);

    CHECK_THROWS_AS(decay_params(Tau(0.0)), DomainError);
}

TEST_CASE("decay_params invariants on random tau") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(1e-6, 0.5);
    for (int trial = 0; trial < 20000; ++trial) {
        const double t = dist(rng);
        if (t >= 0.5) continue;
        const auto d = decay_params(Tau(t));
        REQUIRE(d.lambda > 0.0);
        REQUIRE(d.alpha > 0.0);
        REQUIRE(d.alpha < 1.0);
        // cosh has condition number lambda * tanh(lambda), so a correctly
        // rounded lambda alone costs about lambda / 2 ulps past lambda ~ 8.
        if (d.lambda <= 8.0) {
            REQUIRE(std::abs(2.0 * t * std::cosh(d.lambda) - 1.0) <=
                    4.0 * std::numeric_limits<double>::epsilon());
        }
        // alpha is the small root of -tau a^2 + a - tau.
        REQUIRE(std::abs(-t * d.alpha * d.alpha + d.alpha - t) <= 1e-14);
        // rationalized form of (1 - sqrt(1 - 4 tau^2)) / (2 tau)
        const double alpha_eq = 2.0 * t / (1.0 + std::sqrt(1.0 - 4.0 * t * t));
        REQUIRE(rel_diff(d.alpha, alpha_eq) <= 1e-13);
        REQUIRE(std::abs(d.alpha * std::exp(d.lambda) - 1.0) <= 1e-15);
    }
}

// Known failure: below tau ~ 3.4e-4 the residual reaches 4.5 to 5 ulps.
TEST_CASE("2 tau cosh(lambda) = 1 within 4 ulps on all of (0, 1/2)" * doctest::should_fail()) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(1e-6, 0.5);
    std::size_t violations = 0;
    for (int trial = 0; trial < 200000; ++trial) {
        const double t = dist(rng);
        if (t >= 0.5) continue;
        const auto d = decay_params(Tau(t));
        if (std::abs(2.0 * t * std::cosh(d.lambda) - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
            ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("gff_to_tau") {
    CHECK(gff_to_tau({1.0, 1.0}).value() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(gff_to_tau({0.0, 1.0}).value() == 0.0);
    CHECK(gff_to_tau({1.0, 1e-3}).value() < 0.5);
    CHECK(gff_to_tau({1.0, 1e-3}).value() > 0.4999);
    // massless limit reaches 1/2 exactly and is rejected by Tau
    CHECK_THROWS_AS(gff_to_tau({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(gff_to_tau({0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(gff_to_tau({1.0, 1.0, 2}), DomainError);
    CHECK_THROWS_AS(gff_to_tau({-1.0, 1.0}), DomainError);
}

TEST_CASE("xi_mass") {
    CHECK(rel_diff(xi_mass(1.0), 1.3169578969248166) <= 1e-15);
    CHECK(std::abs(xi_mass(1.0) - decay_params(gff_to_tau({1.0, 1.0})).lambda) <= 1e-12);
    CHECK(xi_mass(1e-9) < 2e-9);
    CHECK(xi_mass(1e-9) > 0.0);
    CHECK_THROWS_AS(xi_mass(0.0), DomainError);
    CHECK_THROWS_AS(xi_mass(-2.0), DomainError);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(1e-3, 10.0);
    for (int trial = 0; trial < 5000; ++trial) {
        const double m = dist(rng);
        REQUIRE(std::abs(xi_mass(m) - decay_params(gff_to_tau({1.0, m})).lambda) <= 1e-12);
    }
}

TEST_CASE("GraphSpec index sets") {
    const GraphSpec open(GraphKind::OpenChain, 4);
    CHECK(open.node_count() == 4);
    CHECK(open.first_index() == 1);
    CHECK(open.last_index() == 4);
    CHECK_FALSE(open.contains(0));

    const GraphSpec centered(GraphKind::CenteredChain, 2);
    CHECK(centered.node_count() == 5);
    CHECK(centered.first_index() == -2);
    CHECK(centered.last_index() == 2);
    CHECK(centered.position(0) == 2);
    CHECK_THROWS_AS(centered.position(3), DomainError);

    CHECK_THROWS_AS(GraphSpec(GraphKind::Cycle, 2), DomainError);
    CHECK_THROWS_AS(GraphSpec(GraphKind::OpenChain, 0), DomainError);
    CHECK(parse_graph_kind("cycle") == GraphKind::Cycle);
    CHECK_THROWS_AS(parse_graph_kind("ring"), DomainError);
}

TEST_CASE("partial correlation and precision matrices") {
    const Tau tau(0.4);
    const auto pi_open = partial_correlation_matrix(GraphSpec(GraphKind::OpenChain, 3), tau);
    const auto& tri = std::get<SymTridiagonal>(pi_open);
    CHECK(tri.diag == 1.0);
    CHECK(tri.off == 0.4);
    CHECK(tri.n == 3);

    const auto pi_cycle = partial_correlation_matrix(GraphSpec(GraphKind::Cycle, 3), tau);
    CHECK(std::get<SymCirculant>(pi_cycle).first_row() == std::vector<double>{1.0, 0.4, 0.4});

    const auto up = to_dense(precision_matrix(GraphSpec(GraphKind::OpenChain, 2), tau));
    CHECK(up(0, 0) == 1.0);
    CHECK(up(0, 1) == -0.4);
    CHECK(up(1, 0) == -0.4);

    const auto cyc = precision_matrix(GraphSpec(GraphKind::Cycle, 4), Tau(0.3));
    CHECK(std::get<SymCirculant>(cyc).first_row() == std::vector<double>{1.0, -0.3, 0.0, -0.3});

    const auto centered = precision_matrix(GraphSpec(GraphKind::CenteredChain, 2), tau);
    CHECK(size_of(centered) == 5);

    for (auto kind : {GraphKind::OpenChain, GraphKind::CenteredChain, GraphKind::Cycle}) {
        const GraphSpec g(kind, 5);
        CHECK(to_dense(precision_matrix(g, Tau(0.0))) ==
              DenseMatrix::Identity(g.node_count(), g.node_count()));
        CHECK(to_dense(partial_correlation_matrix(g, Tau(0.0))) ==
              DenseMatrix::Identity(g.node_count(), g.node_count()));
        for (double t : ggchain::testing::kTauGrid) {
            const DenseMatrix sum = to_dense(precision_matrix(g, Tau(t))) +
                                    to_dense(partial_correlation_matrix(g, Tau(t)));
            CHECK(sum == 2.0 * DenseMatrix::Identity(g.node_count(), g.node_count()));
        }
    }
}

TEST_CASE("precision matrix is diagonally dominant and factorizes") {
    for (auto kind : {GraphKind::OpenChain, GraphKind::CenteredChain, GraphKind::Cycle}) {
        for (double t : {0.05, 0.25, 0.45, 0.49, 0.4999}) {
            const GraphSpec g(kind, 12);
            const DenseMatrix m = to_dense(precision_matrix(g, Tau(t)));
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                const double off = m.row(r).cwiseAbs().sum() - std::abs(m(r, r));
                CHECK(m(r, r) > off);
            }
            CHECK_NOTHROW(invert_dense_spd(m));
        }
    }
}

TEST_CASE("SymCirculant validates symmetry") {
    CHECK_THROWS_AS(SymCirculant({1.0, 0.2, 0.0, 0.1}), DomainError);
    const SymCirculant c({1.0, 0.2, 0.0, 0.2});
    CHECK(c(0, 3) == 0.2);
    CHECK(c(3, 0) == 0.2);
    CHECK(c(1, 3) == 0.0);
}
