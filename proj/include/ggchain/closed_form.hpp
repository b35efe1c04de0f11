#pragma once

// Exact finite-n covariance and correlation kernels for the open chain
// (nodes 1..n) and the centered chain (nodes -n..n), their n -> infinity
// limits, and the leading coefficients of the relative error.
//
// Every kernel is evaluated in exponential-product form, where each factor
// 1 - exp(-2 k lambda) lies in (0, 1], so nothing overflows for large n.
// Index pairs are symmetrized internally (min/max over the signed indices);
// callers never need to sort i and j.

#include "ggchain/core_model.hpp"

namespace ggchain {

/// Entry (i, j) of the open-chain covariance (2I - Pi)^-1.
double sigma_open(int n, int i, int j, Tau tau);

/// Open-chain correlation Psi_ij for 1 <= i, j <= n.
double psi_open(int n, int i, int j, Tau tau);

/// n -> infinity limit of psi_open; depends on i and j, not only on |j - i|.
double psi_limit(int i, int j, Tau tau);

/// Centered-chain correlation for -n <= i, j <= n, evaluated as
/// psi_open(2n + 1, n + 1 + i, n + 1 + j).
double omega_centered(int n, int i, int j, Tau tau);

/// exp(-|j - i| lambda), the centered-chain limit.
double omega_limit(int i, int j, Tau tau);

// Relative errors evaluated without cancellation (expm1 of a sum of log1p
// terms). They stay strictly negative for i != j wherever the naive
// `exact / limit - 1` has already rounded to zero.

/// psi_open / psi_limit - 1.
double psi_open_rel_error(int n, int i, int j, Tau tau);
/// psi_limit * exp(|j - i| lambda) - 1.
double psi_limit_rel_error(int i, int j, Tau tau);
/// omega_centered * exp(|j - i| lambda) - 1.
double omega_centered_rel_error(int n, int i, int j, Tau tau);

/// -[sinh(2 max lambda) - sinh(2 min lambda)], the coefficient of
/// exp(-2(n+1) lambda) in omega_centered_rel_error. min/max are taken over
/// the signed indices. Throws OverflowError when 2 max(|i|,|j|) lambda > 700.
double rel_error_coeff_centered(int i, int j, Tau tau);

/// -(1/2)[exp(2 max lambda) - exp(2 min lambda)], the coefficient of
/// exp(-2(n+1) lambda) in psi_open_rel_error.
double rel_error_coeff_open(int i, int j, Tau tau);

struct AsymptoticCoefficients {
    double abs_order;  // 2(n+1) lambda: the error is O(exp(-abs_order))
    double rel_coeff;
};

AsymptoticCoefficients centered_asymptotics(int n, int i, int j, Tau tau);
AsymptoticCoefficients open_asymptotics(int n, int i, int j, Tau tau);

}  // namespace ggchain
