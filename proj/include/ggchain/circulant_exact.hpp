#pragma once

// Cycle graph: the precision matrix circ(1, -tau, 0, ..., 0, -tau) is
// inverted through its spectrum, giving the covariance row sigma_k = q_k / n
// and the correlation row omega_k = q_k / q_0. The Riemann sum
// S_k = (2 pi / n) q_k tends to I_k = 2 pi alpha^k / sqrt(1 - 4 tau^2), so
// omega_k tends to alpha^k.

#include "ggchain/core_model.hpp"

#include <vector>

namespace ggchain {

/// Eigenvalues mu_k = 1 - 2 tau cos(2 pi k / n) of the cycle precision matrix.
struct CirculantSpectrum {
    int n;
    std::vector<double> mu;
};

CirculantSpectrum spectrum(int n, Tau tau);

/// q_k = sum_j cos(2 pi j k / n) / mu_j, the real part of the spectral sum.
/// Evaluated over j <= n/2 with the mirrored terms doubled, so
/// q_k == q_{n-k} bit for bit.
double q_k(int n, int k, Tau tau);

/// sum_j sin(2 pi j k / n) / mu_j, summed literally over j = 0..n-1. Zero in
/// exact arithmetic; exposed to check that dropping it from q_k is sound.
double q_k_imag(int n, int k, Tau tau);

struct CirculantCorrelation {
    int n;
    Tau tau;
    std::vector<double> q;
    std::vector<double> sigma;
    std::vector<double> omega;

    /// Correlation between cycle nodes i and j (any integers, taken mod n).
    double omega_at(int i, int j) const;
};

CirculantCorrelation correlation_sequence(int n, Tau tau);

/// Left Riemann sum of exp(-i k x) / (1 - 2 tau cos x) over [0, 2 pi] on n nodes.
double riemann_sum(int n, int k, Tau tau);

/// Closed form of the Riemann-sum limit. At tau = 0 returns 2 pi [k == 0].
double integral_Ik(int k, Tau tau);

/// alpha^k = I_k / I_0, the n -> infinity limit of omega_k.
double omega_cycle_limit(int k, Tau tau);

}  // namespace ggchain
