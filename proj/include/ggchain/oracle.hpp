#pragma once

// Ground truth that shares no code with the closed forms: explicit matrix
// inversion followed by the correlation transform, and a seeded Monte Carlo
// sampler of the Gaussian model.

#include "ggchain/core_model.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ggchain {

struct CorrelationResult {
    DenseMatrix sigma;      // covariance
    Eigen::VectorXd delta;  // sqrt(diag(sigma))
    DenseMatrix psi;        // delta^-1 sigma delta^-1, unit diagonal
};

/// Full inverse of the symmetric tridiagonal matrix with constant diagonal
/// and off-diagonal, from forward and backward LDL^T pivot recurrences.
/// Every entry is a product of positive factors when off < 0, so small
/// far-off-diagonal entries keep full relative accuracy.
DenseMatrix invert_tridiagonal(double diag, double off, int n);
DenseMatrix invert_tridiagonal(const SymTridiagonal& m);

/// Inverse of a symmetric positive definite matrix via Cholesky.
DenseMatrix invert_dense_spd(const DenseMatrix& m);

CorrelationResult correlation_transform(const DenseMatrix& sigma);

/// precision_matrix -> inversion -> correlation_transform.
CorrelationResult model_correlation(const GraphSpec& g, Tau tau);

struct SampleBatch {
    static constexpr std::string_view kGenerator = "philox4x32-10";
    static constexpr std::string_view kNormalMethod = "box-muller";

    GraphSpec graph;
    Tau tau;
    std::uint64_t seed;
    std::size_t count;
    Eigen::VectorXd sums;
    DenseMatrix cross_products;
    DenseMatrix correlation;
    DenseMatrix standard_error;  // Fisher-z: 1/sqrt(count - 3)
};

/// Draws count vectors from N(0, precision^-1) by back-substitution
/// against the Cholesky factor of the precision matrix. Bit-identical for a
/// given seed regardless of GGCHAIN_THREADS.
SampleBatch sample(const GraphSpec& g, Tau tau, std::size_t count, std::uint64_t seed);

/// |atanh(empirical) - atanh(exact)| * sqrt(count - 3), entrywise; zero on
/// the diagonal.
DenseMatrix fisher_discrepancy(const DenseMatrix& empirical, const DenseMatrix& exact,
                               std::size_t count);

}  // namespace ggchain
