#include "ggchain/errors.hpp"
#include "ggchain/oracle.hpp"
#include "ggchain/parallel.hpp"
#include "ggchain/philox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ggchain {

namespace {

// Draws are grouped into blocks and blocks are dealt round-robin to a fixed
// number of lanes. Each lane accumulates in block order and lanes are
// reduced in lane order, so the floating-point result depends only on the
// seed and count.
constexpr std::size_t kBlockSize = 1024;
constexpr std::size_t kLanes = 16;

// Solves U x = z for the upper Cholesky factor U of the precision matrix.
class PrecisionFactor {
public:
    explicit PrecisionFactor(const StructuredMatrix& precision) {
        if (const auto* tri = std::get_if<SymTridiagonal>(&precision)) {
            banded_ = true;
            const auto n = static_cast<std::size_t>(tri->n);
            diag_.resize(n);
            upper_.resize(n > 0 ? n - 1 : 0);
            diag_[0] = std::sqrt(tri->diag);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                upper_[i] = tri->off / diag_[i];
                const double pivot = tri->diag - upper_[i] * upper_[i];
                if (!(pivot > 0.0)) {
                    throw NotPositiveDefinite("precision factorization failed");
                }
                diag_[i + 1] = std::sqrt(pivot);
            }
        } else {
            llt_.compute(to_dense(precision));
            if (llt_.info() != Eigen::Success) {
                throw NotPositiveDefinite("precision factorization failed");
            }
            dense_upper_ = llt_.matrixU();
        }
    }

    void solve_in_place(Eigen::VectorXd& z) const {
        if (!banded_) {
            dense_upper_.triangularView<Eigen::Upper>().solveInPlace(z);
            return;
        }
        const auto n = static_cast<Eigen::Index>(diag_.size());
        z(n - 1) /= diag_.back();
        for (Eigen::Index i = n - 2; i >= 0; --i) {
            const auto ui = static_cast<std::size_t>(i);
            z(i) = (z(i) - upper_[ui] * z(i + 1)) / diag_[ui];
        }
    }

private:
    bool banded_ = false;
    std::vector<double> diag_;
    std::vector<double> upper_;
    Eigen::LLT<DenseMatrix> llt_;
    DenseMatrix dense_upper_;
};

struct Moments {
    Eigen::VectorXd sums;
    DenseMatrix cross;
};

}  // namespace

SampleBatch sample(const GraphSpec& g, Tau tau, std::size_t count, std::uint64_t seed) {
    if (count < 2) {
        throw DomainError("sample count must be >= 2");
    }
    const PrecisionFactor factor(precision_matrix(g, tau));
    const int size = g.node_count();
    const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;
    const std::size_t lanes = std::min(kLanes, blocks);

    std::vector<Moments> partial(lanes);
    parallel_for(lanes, [&](std::size_t lane) {
        Moments m{Eigen::VectorXd::Zero(size), DenseMatrix::Zero(size, size)};
        Eigen::VectorXd x(size);
        for (std::size_t block = lane; block < blocks; block += lanes) {
            const std::size_t end = std::min(count, (block + 1) * kBlockSize);
            for (std::size_t draw = block * kBlockSize; draw < end; ++draw) {
                for (int p = 0; 2 * p < size; ++p) {
                    const auto [z0, z1] = normal_pair(seed, draw, static_cast<std::uint32_t>(p));
                    x(2 * p) = z0;
                    if (2 * p + 1 < size) x(2 * p + 1) = z1;
                }
                factor.solve_in_place(x);
                m.sums += x;
                m.cross.selfadjointView<Eigen::Upper>().rankUpdate(x);
            }
        }
        partial[lane] = std::move(m);
    });

    Eigen::VectorXd sums = Eigen::VectorXd::Zero(size);
    DenseMatrix cross = DenseMatrix::Zero(size, size);
    for (const auto& m : partial) {
        sums += m.sums;
        cross += m.cross;
    }
    const DenseMatrix full_cross = cross.selfadjointView<Eigen::Upper>();

    const double total = static_cast<double>(count);
    DenseMatrix cov(size, size);
    for (int i = 0; i < size; ++i) {
        for (int j = i; j < size; ++j) {
            cov(i, j) = (cross(i, j) - sums(i) * sums(j) / total) / (total - 1.0);
        }
    }
    DenseMatrix corr(size, size);
    for (int i = 0; i < size; ++i) {
        corr(i, i) = 1.0;
        for (int j = i + 1; j < size; ++j) {
            const double r = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }
    const double se = count > 3 ? 1.0 / std::sqrt(total - 3.0)
                                : std::numeric_limits<double>::infinity();
    DenseMatrix standard_error = DenseMatrix::Constant(size, size, se);
    standard_error.diagonal().setZero();
    return SampleBatch{g,    tau,        seed,           count, std::move(sums),
                       full_cross, std::move(corr), std::move(standard_error)};
}

}  // namespace ggchain
