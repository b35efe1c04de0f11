#include "ggchain/circulant_exact.hpp"

#include "ggchain/errors.hpp"
#include "ggchain/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ggchain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kPairwiseThreshold = std::size_t{1} << 14;
constexpr std::size_t kPairwiseBlock = 64;

void check_cycle_size(int n) {
    if (n < 3) {
        throw DomainError("cycle size must be >= 3, got " + std::to_string(n));
    }
}

void check_frequency(int n, int k) {
    if (k < 0 || k >= n) {
        throw DomainError("frequency k must lie in [0, n)");
    }
}

// cos(pi p / q) for 0 <= p/q <= 1/2, switching to a sine past pi/4 so that
// the argument stays small.
double cos_pi_frac_small(long long p, long long q) {
    if (4 * p <= q) {
        return std::cos(kPi * static_cast<double>(p) / static_cast<double>(q));
    }
    return std::sin(kPi * static_cast<double>(q - 2 * p) / static_cast<double>(2 * q));
}

// cos(2 pi m / n), symmetric in m <-> n - m by construction; exact zeros at
// quarter turns.
double cos_turn(long long m, long long n) {
    m %= n;
    if (2 * m > n) m = n - m;
    const long long p = 2 * m;  // angle = pi p / n, p/n in [0, 1]
    if (2 * p <= n) return cos_pi_frac_small(p, n);
    return -cos_pi_frac_small(n - p, n);
}

double eigenvalue(int j, int n, double tau) {
    return 1.0 - 2.0 * tau * cos_turn(j, n);
}

template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
    if (end - begin <= kPairwiseBlock) {
        double s = 0.0;
        for (std::size_t j = begin; j < end; ++j) s += term(j);
        return s;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

template <class Term>
double sum_terms(std::size_t begin, std::size_t end, const Term& term) {
    if (end - begin > kPairwiseThreshold) {
        return pairwise_sum(begin, end, term);
    }
    double s = 0.0;
    for (std::size_t j = begin; j < end; ++j) s += term(j);
    return s;
}

double q_k_unchecked(int n, int k, double tau) {
    const long long nn = n;
    const long long kk = k;
    const auto mirrored = [&](std::size_t j) {
        const long long jj = static_cast<long long>(j);
        return 2.0 * cos_turn(jj * kk, nn) / eigenvalue(static_cast<int>(j), n, tau);
    };
    const std::size_t half = static_cast<std::size_t>((n - 1) / 2);
    double q = 1.0 / eigenvalue(0, n, tau) + sum_terms(1, half + 1, mirrored);
    if (n % 2 == 0) {
        q += cos_turn(static_cast<long long>(n / 2) * kk, nn) / eigenvalue(n / 2, n, tau);
    }
    return q;
}

}  // namespace

CirculantSpectrum spectrum(int n, Tau tau) {
    check_cycle_size(n);
    CirculantSpectrum s{n, std::vector<double>(static_cast<std::size_t>(n))};
    for (int k = 0; k < n; ++k) {
        s.mu[static_cast<std::size_t>(k)] = eigenvalue(k, n, tau.value());
    }
    return s;
}

double q_k(int n, int k, Tau tau) {
    check_cycle_size(n);
    check_frequency(n, k);
    return q_k_unchecked(n, k, tau.value());
}

double q_k_imag(int n, int k, Tau tau) {
    check_cycle_size(n);
    check_frequency(n, k);
    const double theta = kTwoPi / n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        const long long m = (static_cast<long long>(j) * k) % n;
        const double mu = 1.0 - 2.0 * tau.value() * std::cos(j * theta);
        s += std::sin(static_cast<double>(m) * theta) / mu;
    }
    return s;
}

double CirculantCorrelation::omega_at(int i, int j) const {
    const int k = ((j - i) % n + n) % n;
    return omega[static_cast<std::size_t>(k)];
}

CirculantCorrelation correlation_sequence(int n, Tau tau) {
    check_cycle_size(n);
    const auto size = static_cast<std::size_t>(n);
    CirculantCorrelation out{n, tau, std::vector<double>(size), std::vector<double>(size),
                             std::vector<double>(size)};

    const std::size_t half = size / 2;
    parallel_for(half + 1, [&](std::size_t k) {
        out.q[k] = q_k_unchecked(n, static_cast<int>(k), tau.value());
    });
    for (std::size_t k = half + 1; k < size; ++k) out.q[k] = out.q[size - k];

    const double q0 = out.q[0];
    for (std::size_t k = 0; k < size; ++k) {
        out.sigma[k] = out.q[k] / n;
        out.omega[k] = out.q[k] / q0;
    }
    return out;
}

double riemann_sum(int n, int k, Tau tau) {
    check_cycle_size(n);
    check_frequency(n, k);
    // 2 pi (q_k / n) rather than (2 pi / n) q_k: exact 2 pi at tau = 0, k = 0.
    return kTwoPi * (q_k_unchecked(n, k, tau.value()) / n);
}

double integral_Ik(int k, Tau tau) {
    if (k < 0) {
        throw DomainError("k must be non-negative");
    }
    const double t = tau.value();
    if (t == 0.0) {
        return k == 0 ? kTwoPi : 0.0;
    }
    const double alpha = decay_params(tau).alpha;
    return kTwoPi * std::pow(alpha, k) / std::sqrt((1.0 - 2.0 * t) * (1.0 + 2.0 * t));
}

double omega_cycle_limit(int k, Tau tau) {
    if (k < 0) {
        throw DomainError("k must be non-negative");
    }
    return std::pow(decay_params(tau).alpha, k);
}

}  // namespace ggchain
