#include "ggchain/closed_form.hpp"

#include "ggchain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace ggchain {

namespace {

constexpr double kMaxHyperbolicArg = 700.0;

// 1 - exp(-2 u lambda), in (0, 1] for u >= 1.
double gap_factor(int u, double lambda) {
    return -std::expm1(-2.0 * u * lambda);
}

// log(1 - exp(-2 u lambda)) <= 0.
double log_gap_factor(int u, double lambda) {
    return std::log1p(-std::exp(-2.0 * u * lambda));
}

void check_open_indices(int n, int i, int j) {
    if (n < 1) {
        throw DomainError("chain length must be positive");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
        throw DomainError("open-chain index (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside 1.." + std::to_string(n));
    }
}

void check_centered_indices(int n, int i, int j) {
    if (n < 1) {
        throw DomainError("half-width must be positive");
    }
    if (std::abs(i) > n || std::abs(j) > n) {
        throw DomainError("centered-chain index (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside -n..n with n = " + std::to_string(n));
    }
}

void check_positive(int i, int j) {
    if (i < 1 || j < 1) {
        throw DomainError("limit indices must be >= 1");
    }
}

void check_hyperbolic_range(int i, int j, double lambda) {
    const int reach = std::max(std::abs(i), std::abs(j));
    if (2.0 * reach * lambda > kMaxHyperbolicArg) {
        throw OverflowError("2 max(|i|,|j|) lambda exceeds " + std::to_string(kMaxHyperbolicArg));
    }
}

// log(Psi^(n)_ab exp((b - a) lambda)) for 1 <= a < b <= n. The two
// parenthesised differences are each strictly negative.
double log_psi_ratio(int n, int a, int b, double lambda) {
    const double boundary = log_gap_factor(n + 1 - b, lambda) - log_gap_factor(n + 1 - a, lambda);
    const double origin = log_gap_factor(a, lambda) - log_gap_factor(b, lambda);
    return 0.5 * (boundary + origin);
}

}  // namespace

double sigma_open(int n, int i, int j, Tau tau) {
    check_open_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    // (1/tau) sinh((n+1-b) l) sinh(a l) / (sinh(l) sinh((n+1) l)), with every
    // sinh(x) written as exp(x) (1 - exp(-2x)) / 2.
    const double scale = std::exp(-(b - a + 1) * lambda) / tau.value();
    const double num = gap_factor(n + 1 - b, lambda) * gap_factor(a, lambda);
    const double den = gap_factor(1, lambda) * gap_factor(n + 1, lambda);
    return scale * num / den;
}

double psi_open(int n, int i, int j, Tau tau) {
    check_open_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    if (i == j) {
        return 1.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    const double num = gap_factor(n + 1 - b, lambda) * gap_factor(a, lambda);
    const double den = gap_factor(n + 1 - a, lambda) * gap_factor(b, lambda);
    return std::exp(-(b - a) * lambda) * std::sqrt(num / den);
}

double psi_limit(int i, int j, Tau tau) {
    check_positive(i, j);
    const double lambda = decay_params(tau).lambda;
    if (i == j) {
        return 1.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    return std::exp(-(b - a) * lambda) * std::sqrt(gap_factor(a, lambda) / gap_factor(b, lambda));
}

double omega_centered(int n, int i, int j, Tau tau) {
    check_centered_indices(n, i, j);
    return psi_open(2 * n + 1, n + 1 + i, n + 1 + j, tau);
}

double omega_limit(int i, int j, Tau tau) {
    const double lambda = decay_params(tau).lambda;
    return std::exp(-std::abs(j - i) * lambda);
}

double psi_open_rel_error(int n, int i, int j, Tau tau) {
    check_open_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    if (i == j) {
        return 0.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    return std::expm1(0.5 * (log_gap_factor(n + 1 - b, lambda) - log_gap_factor(n + 1 - a, lambda)));
}

double psi_limit_rel_error(int i, int j, Tau tau) {
    check_positive(i, j);
    const double lambda = decay_params(tau).lambda;
    if (i == j) {
        return 0.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    return std::expm1(0.5 * (log_gap_factor(a, lambda) - log_gap_factor(b, lambda)));
}

double omega_centered_rel_error(int n, int i, int j, Tau tau) {
    check_centered_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    if (i == j) {
        return 0.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    return std::expm1(log_psi_ratio(2 * n + 1, n + 1 + a, n + 1 + b, lambda));
}

double rel_error_coeff_centered(int i, int j, Tau tau) {
    const auto decay = decay_params(tau);
    check_hyperbolic_range(i, j, decay.lambda);
    if (i == j) {
        return 0.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    // sinh(2 k lambda) = (alpha^(-2k) - alpha^(2k)) / 2
    const auto sinh2 = [&](int k) {
        return 0.5 * (std::pow(decay.alpha, -2 * k) - std::pow(decay.alpha, 2 * k));
    };
    return -(sinh2(b) - sinh2(a));
}

double rel_error_coeff_open(int i, int j, Tau tau) {
    check_positive(i, j);
    const auto decay = decay_params(tau);
    check_hyperbolic_range(i, j, decay.lambda);
    if (i == j) {
        return 0.0;
    }
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    return -0.5 * (std::pow(decay.alpha, -2 * b) - std::pow(decay.alpha, -2 * a));
}

AsymptoticCoefficients centered_asymptotics(int n, int i, int j, Tau tau) {
    check_centered_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    return {2.0 * (n + 1) * lambda, rel_error_coeff_centered(i, j, tau)};
}

AsymptoticCoefficients open_asymptotics(int n, int i, int j, Tau tau) {
    check_open_indices(n, i, j);
    const double lambda = decay_params(tau).lambda;
    return {2.0 * (n + 1) * lambda, rel_error_coeff_open(i, j, tau)};
}

}  // namespace ggchain
