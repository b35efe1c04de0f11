#include "ggchain/analysis.hpp"

#include "ggchain/circulant_exact.hpp"
#include "ggchain/closed_form.hpp"
#include "ggchain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace ggchain {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxExpArg = 700.0;

void check_range(int n_min, int n_max, int lowest) {
    if (n_min < lowest) {
        throw DomainError("n_min must be >= " + std::to_string(lowest));
    }
    if (n_max < n_min) {
        throw DomainError("n_max must be >= n_min");
    }
}

double scale_by_order(double rel_err, int n, double lambda, bool diagonal) {
    if (diagonal) return 0.0;
    const double order = 2.0 * (n + 1) * lambda;
    if (order > kMaxExpArg || rel_err == 0.0) return kNaN;
    return rel_err * std::exp(order);
}

}  // namespace

ConvergenceSweep sweep_centered(int i, int j, Tau tau, int n_min, int n_max) {
    const auto decay = decay_params(tau);
    check_range(n_min, n_max, std::max(std::abs(i), std::abs(j)) + 1);
    ConvergenceSweep out{GraphKind::CenteredChain, i, j, decay, rel_error_coeff_centered(i, j, tau),
                         {}};
    out.records.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    const double limit = omega_limit(i, j, tau);
    for (int n = n_min; n <= n_max; ++n) {
        const double rel = omega_centered_rel_error(n, i, j, tau);
        out.records.push_back({n, omega_centered(n, i, j, tau), limit, limit * rel, rel,
                               scale_by_order(rel, n, decay.lambda, i == j)});
    }
    return out;
}

ConvergenceSweep sweep_open(int i, int j, Tau tau, int n_min, int n_max) {
    const auto decay = decay_params(tau);
    if (i < 1 || j < 1) {
        throw DomainError("open-chain indices must be >= 1");
    }
    check_range(n_min, n_max, std::max(i, j));
    ConvergenceSweep out{GraphKind::OpenChain, i, j, decay, rel_error_coeff_open(i, j, tau), {}};
    out.records.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    const double limit = psi_limit(i, j, tau);
    for (int n = n_min; n <= n_max; ++n) {
        const double rel = psi_open_rel_error(n, i, j, tau);
        out.records.push_back({n, psi_open(n, i, j, tau), limit, limit * rel, rel,
                               scale_by_order(rel, n, decay.lambda, i == j)});
    }
    return out;
}

ConvergenceSweep sweep_cycle(int k, Tau tau, int n_min, int n_max) {
    const auto decay = decay_params(tau);
    if (k < 0) {
        throw DomainError("k must be non-negative");
    }
    check_range(n_min, n_max, std::max(3, k + 1));
    ConvergenceSweep out{GraphKind::Cycle, 0, k, decay, kNaN, {}};
    const double limit = omega_cycle_limit(k, tau);
    for (int n = n_min; n <= n_max; ++n) {
        const double exact = q_k(n, k, tau) / q_k(n, 0, tau);
        const double abs_err = exact - limit;
        out.records.push_back({n, exact, limit, abs_err, abs_err / limit, kNaN});
    }
    return out;
}

double RateFit::relative_slope_error() const {
    return std::abs(slope - expected_slope) / std::abs(expected_slope);
}

RateFit fit_abs_error_rate(const ConvergenceSweep& sweep) {
    if (sweep.graph == GraphKind::Cycle) {
        throw DomainError("no asymptotic expansion available for cycle");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : sweep.records) {
        const double mag = std::abs(r.abs_err);
        if (mag >= kFitNoiseFloor && mag <= kFitCeiling) {
            xs.push_back(r.n);
            ys.push_back(std::log(mag));
        }
    }
    if (xs.size() < kFitMinPoints) {
        throw InsufficientData("only " + std::to_string(xs.size()) + " usable points (need " +
                               std::to_string(kFitMinPoints) + ")");
    }

    const double count = static_cast<double>(xs.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        mean_x += xs[p];
        mean_y += ys[p];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        const double dx = xs[p] - mean_x;
        const double dy = ys[p] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;
    double ss_res = 0.0;
    for (std::size_t p = 0; p < xs.size(); ++p) {
        const double resid = ys[p] - (intercept + slope * xs[p]);
        ss_res += resid * resid;
    }
    const double r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return RateFit{slope, intercept, r2, -2.0 * sweep.decay.lambda, xs.size()};
}

std::vector<RiemannGapRow> riemann_gap(int k, Tau tau, std::span<const int> n_list) {
    const double integral = integral_Ik(k, tau);
    std::vector<RiemannGapRow> rows;
    rows.reserve(n_list.size());
    for (const int n : n_list) {
        const double s = riemann_sum(n, k, tau);
        rows.push_back({n, s, integral, s - integral});
    }
    return rows;
}

std::vector<GffRow> gff_table(std::span<const double> masses) {
    std::vector<GffRow> rows;
    rows.reserve(masses.size());
    for (const double m : masses) {
        const double xi = xi_mass(m);
        const Tau tau = gff_to_tau({1.0, m});
        const double lambda = decay_params(tau).lambda;
        rows.push_back({m, tau.value(), lambda, xi, std::abs(lambda - xi)});
    }
    return rows;
}

DenseMatrix exact_correlation(const GraphSpec& g, Tau tau) {
    const int size = g.node_count();
    if (tau.value() == 0.0) {
        return DenseMatrix::Identity(size, size);
    }
    DenseMatrix out(size, size);
    if (g.kind() == GraphKind::Cycle) {
        const auto seq = correlation_sequence(g.n(), tau);
        for (int r = 0; r < size; ++r) {
            for (int c = 0; c < size; ++c) out(r, c) = seq.omega_at(r, c);
        }
        return out;
    }
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const int i = g.first_index() + r;
            const int j = g.first_index() + c;
            out(r, c) = g.kind() == GraphKind::OpenChain ? psi_open(g.n(), i, j, tau)
                                                         : omega_centered(g.n(), i, j, tau);
        }
    }
    return out;
}

}  // namespace ggchain
