#pragma once

// Model family for one-dimensional equicorrelational Gaussian graphical
// models: the neighbour partial correlation tau, the decay parameters it
// induces, the three conditional-independence graphs, and the structured
// partial-correlation / precision matrices built from them.

#include <Eigen/Dense>

#include <string_view>
#include <variant>
#include <vector>

namespace ggchain {

using DenseMatrix = Eigen::MatrixXd;

/// Partial correlation between chain neighbours, 0 <= tau < 1/2.
class Tau {
public:
    explicit Tau(double value);

    double value() const noexcept { return value_; }

    friend bool operator==(Tau, Tau) = default;

private:
    double value_;
};

/// Decay rate lambda = arccosh(1/(2 tau)) and decay base alpha = exp(-lambda).
struct DecayParams {
    Tau tau;
    double lambda;
    double alpha;
};

/// Throws DomainError when tau == 0 (lambda would be infinite).
DecayParams decay_params(Tau tau);

enum class GraphKind { OpenChain, CenteredChain, Cycle };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view name);

/// A conditional-independence graph plus its size parameter.
///
/// OpenChain and Cycle have nodes 1..n. CenteredChain has half-width n and
/// nodes -n..n (2n+1 of them). A cycle needs at least three nodes.
class GraphSpec {
public:
    GraphSpec(GraphKind kind, int n);

    GraphKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }

    int node_count() const noexcept;
    int first_index() const noexcept;
    int last_index() const noexcept { return first_index() + node_count() - 1; }
    bool contains(int index) const noexcept;
    // 0-based row of a native node index.
    int position(int index) const;

private:
    GraphKind kind_;
    int n_;
};

struct SymTridiagonal {
    double diag;
    double off;
    int n;
};

class SymCirculant {
public:
    /// first_row[k] must equal first_row[n-k] for k >= 1.
    explicit SymCirculant(std::vector<double> first_row);

    const std::vector<double>& first_row() const noexcept { return row_; }
    int size() const noexcept { return static_cast<int>(row_.size()); }
    double operator()(int i, int j) const;

private:
    std::vector<double> row_;
};

using StructuredMatrix = std::variant<SymTridiagonal, SymCirculant, DenseMatrix>;

int size_of(const StructuredMatrix& m);
DenseMatrix to_dense(const StructuredMatrix& m);

/// Inverse temperature beta, mass m and lattice dimension d (only d = 1).
struct GffParams {
    double beta;
    double mass;
    int dim = 1;
};

Tau gff_to_tau(const GffParams& p);

/// Correlation decay rate of the massive 1-D free field at beta = 1.
double xi_mass(double mass);

StructuredMatrix partial_correlation_matrix(const GraphSpec& g, Tau tau);
/// 2I - Pi: unit diagonal, -tau on the graph's edges.
StructuredMatrix precision_matrix(const GraphSpec& g, Tau tau);

}  // namespace ggchain
