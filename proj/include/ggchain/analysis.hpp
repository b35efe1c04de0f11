#pragma once

// Numerical experiments on the closed forms: finite-n vs limit sweeps,
// log-linear fits of the absolute error, Riemann-sum gaps for the cycle,
// and the free-field rate consistency table.

#include "ggchain/core_model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ggchain {

/// One row of an n-sweep. rel_err is exact/limit - 1 and abs_err is
/// exact - limit, both evaluated without cancellation; scaled_rel is
/// rel_err / exp(-2(n+1) lambda) (NaN where that quantity is not defined).
struct ConvergenceRecord {
    int n;
    double exact;
    double limit;
    double abs_err;
    double rel_err;
    double scaled_rel;
};

struct ConvergenceSweep {
    GraphKind graph;
    int i;
    int j;
    DecayParams decay;
    double coefficient;  // leading relative-error coefficient; NaN for the cycle
    std::vector<ConvergenceRecord> records;
};

/// Requires n_min >= max(|i|, |j|) + 1 and n_max >= n_min.
ConvergenceSweep sweep_centered(int i, int j, Tau tau, int n_min, int n_max);
/// Requires i, j >= 1, n_min >= max(i, j) and n_max >= n_min.
ConvergenceSweep sweep_open(int i, int j, Tau tau, int n_min, int n_max);
/// omega_k on cycles of n_min..n_max nodes against alpha^k. Exists for
/// comparison tables only: there is no asymptotic expansion to fit.
ConvergenceSweep sweep_cycle(int k, Tau tau, int n_min, int n_max);

inline constexpr double kFitNoiseFloor = 1e-14;
inline constexpr double kFitCeiling = 1e-2;
inline constexpr std::size_t kFitMinPoints = 5;

struct RateFit {
    double slope;
    double intercept;
    double r_squared;
    double expected_slope;  // -2 lambda
    std::size_t points;

    double relative_slope_error() const;
};

/// Ordinary least squares of ln|abs_err| against n over records whose
/// |abs_err| lies in [kFitNoiseFloor, kFitCeiling]. Throws InsufficientData
/// with fewer than kFitMinPoints usable records and DomainError for cycle
/// sweeps.
RateFit fit_abs_error_rate(const ConvergenceSweep& sweep);

struct RiemannGapRow {
    int n;
    double riemann_sum;
    double integral;
    double gap;  // riemann_sum - integral
};

std::vector<RiemannGapRow> riemann_gap(int k, Tau tau, std::span<const int> n_list);

struct GffRow {
    double mass;
    double tau;
    double lambda;
    double xi;
    double discrepancy;  // |lambda - xi|
};

/// Compares the chain decay rate at tau(beta = 1, m) with xi_m.
std::vector<GffRow> gff_table(std::span<const double> masses);

/// Full correlation matrix of a graph from the closed forms (open and
/// centered chains) or the spectral sums (cycle). Identity at tau = 0.
DenseMatrix exact_correlation(const GraphSpec& g, Tau tau);

}  // namespace ggchain
