#include "ggchain/oracle.hpp"

#include "ggchain/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ggchain {

DenseMatrix invert_tridiagonal(double diag, double off, int n) {
    if (n < 1) {
        throw DomainError("matrix size must be positive");
    }
    const auto size = static_cast<std::size_t>(n);
    const double off2 = off * off;

    // forward[i] = theta_i / theta_{i-1}, backward[i] = phi_i / phi_{i+1}
    // (ratios of leading and trailing principal minors).
    std::vector<double> forward(size);
    std::vector<double> backward(size);
    forward[0] = diag;
    backward[size - 1] = diag;
    for (std::size_t i = 1; i < size; ++i) {
        forward[i] = diag - off2 / forward[i - 1];
        backward[size - 1 - i] = diag - off2 / backward[size - i];
    }
    for (std::size_t i = 0; i < size; ++i) {
        if (!(forward[i] > 0.0) || !(backward[i] > 0.0)) {
            throw NotPositiveDefinite("non-positive pivot at row " + std::to_string(i));
        }
    }

    DenseMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double pivot = forward[ui] + backward[ui] - diag;
        if (!(pivot > 0.0)) {
            throw NotPositiveDefinite("non-positive diagonal pivot at row " + std::to_string(i));
        }
        double entry = 1.0 / pivot;
        out(i, i) = entry;
        for (int j = i + 1; j < n; ++j) {
            entry *= -off / backward[static_cast<std::size_t>(j)];
            out(i, j) = entry;
            out(j, i) = entry;
        }
    }
    return out;
}

DenseMatrix invert_tridiagonal(const SymTridiagonal& m) {
    return invert_tridiagonal(m.diag, m.off, m.n);
}

DenseMatrix invert_dense_spd(const DenseMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DomainError("expected a non-empty square matrix");
    }
    const Eigen::LLT<DenseMatrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("Cholesky factorization failed");
    }
    const DenseMatrix inv = llt.solve(DenseMatrix::Identity(m.rows(), m.cols()));
    return 0.5 * (inv + inv.transpose());
}

CorrelationResult correlation_transform(const DenseMatrix& sigma) {
    const Eigen::Index n = sigma.rows();
    if (sigma.cols() != n) {
        throw DomainError("covariance must be square");
    }
    CorrelationResult out{sigma, Eigen::VectorXd(n), DenseMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(sigma(i, i) > 0.0)) {
            throw DomainError("covariance diagonal must be strictly positive");
        }
        out.delta(i) = std::sqrt(sigma(i, i));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        out.psi(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = sigma(i, j) / (out.delta(i) * out.delta(j));
            out.psi(i, j) = r;
            out.psi(j, i) = r;
        }
    }
    return out;
}

CorrelationResult model_correlation(const GraphSpec& g, Tau tau) {
    const StructuredMatrix precision = precision_matrix(g, tau);
    if (const auto* tri = std::get_if<SymTridiagonal>(&precision)) {
        return correlation_transform(invert_tridiagonal(*tri));
    }
    return correlation_transform(invert_dense_spd(to_dense(precision)));
}

DenseMatrix fisher_discrepancy(const DenseMatrix& empirical, const DenseMatrix& exact,
                               std::size_t count) {
    if (empirical.rows() != exact.rows() || empirical.cols() != exact.cols()) {
        throw DomainError("shape mismatch");
    }
    if (count < 4) {
        throw DomainError("Fisher-z needs count >= 4");
    }
    const double scale = std::sqrt(static_cast<double>(count) - 3.0);
    DenseMatrix out = DenseMatrix::Zero(exact.rows(), exact.cols());
    for (Eigen::Index i = 0; i < exact.rows(); ++i) {
        for (Eigen::Index j = 0; j < exact.cols(); ++j) {
            if (i == j) continue;
            out(i, j) = std::abs(std::atanh(empirical(i, j)) - std::atanh(exact(i, j))) * scale;
        }
    }
    return out;
}

}  // namespace ggchain
