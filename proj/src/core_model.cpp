#include "ggchain/core_model.hpp"

#include "ggchain/errors.hpp"

#include <cmath>
#include <string>

namespace ggchain {

Tau::Tau(double value) : value_(value) {
    if (!(value >= 0.0 && value < 0.5)) {
        throw DomainError("tau must lie in [0, 1/2), got " + std::to_string(value));
    }
}

DecayParams decay_params(Tau tau) {
    const double t = tau.value();
    if (t == 0.0) {
        throw DomainError("decay rate is infinite at tau = 0");
    }
    // sqrt(1 - 4 tau^2) factored to avoid cancellation as tau -> 1/2, and
    // arccosh(1/(2 tau)) = log1p((1 - 2 tau + sqrt(1 - 4 tau^2)) / (2 tau)).
    const double one_minus = 1.0 - 2.0 * t;
    const double root = std::sqrt(one_minus * (1.0 + 2.0 * t));
    const double lambda = std::log1p((one_minus + root) / (2.0 * t));
    return DecayParams{tau, lambda, std::exp(-lambda)};
}

std::string_view to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::OpenChain: return "open";
        case GraphKind::CenteredChain: return "centered";
        case GraphKind::Cycle: return "cycle";
    }
    return "unknown";
}

GraphKind parse_graph_kind(std::string_view name) {
    if (name == "open") return GraphKind::OpenChain;
    if (name == "centered") return GraphKind::CenteredChain;
    if (name == "cycle") return GraphKind::Cycle;
    throw DomainError("unknown graph kind '" + std::string(name) + "'");
}

GraphSpec::GraphSpec(GraphKind kind, int n) : kind_(kind), n_(n) {
    if (n < 1) {
        throw DomainError("graph size must be positive");
    }
    if (kind == GraphKind::Cycle && n < 3) {
        throw DomainError("a cycle needs at least 3 nodes");
    }
}

int GraphSpec::node_count() const noexcept {
    return kind_ == GraphKind::CenteredChain ? 2 * n_ + 1 : n_;
}

int GraphSpec::first_index() const noexcept {
    return kind_ == GraphKind::CenteredChain ? -n_ : 1;
}

bool GraphSpec::contains(int index) const noexcept {
    return index >= first_index() && index <= last_index();
}

int GraphSpec::position(int index) const {
    if (!contains(index)) {
        throw DomainError("node index " + std::to_string(index) + " outside graph");
    }
    return index - first_index();
}

SymCirculant::SymCirculant(std::vector<double> first_row) : row_(std::move(first_row)) {
    const auto n = row_.size();
    if (n == 0) {
        throw DomainError("empty circulant");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (row_[k] != row_[n - k]) {
            throw DomainError("circulant first row is not symmetric");
        }
    }
}

double SymCirculant::operator()(int i, int j) const {
    const int n = size();
    const int k = ((j - i) % n + n) % n;
    return row_[static_cast<std::size_t>(k)];
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

int size_of(const StructuredMatrix& m) {
    return std::visit(overloaded{
                          [](const SymTridiagonal& t) { return t.n; },
                          [](const SymCirculant& c) { return c.size(); },
                          [](const DenseMatrix& d) { return static_cast<int>(d.rows()); },
                      },
                      m);
}

DenseMatrix to_dense(const StructuredMatrix& m) {
    return std::visit(overloaded{
                          [](const SymTridiagonal& t) {
                              DenseMatrix out = DenseMatrix::Zero(t.n, t.n);
                              for (int i = 0; i < t.n; ++i) {
                                  out(i, i) = t.diag;
                                  if (i + 1 < t.n) {
                                      out(i, i + 1) = t.off;
                                      out(i + 1, i) = t.off;
                                  }
                              }
                              return out;
                          },
                          [](const SymCirculant& c) {
                              const int n = c.size();
                              DenseMatrix out(n, n);
                              for (int i = 0; i < n; ++i) {
                                  for (int j = 0; j < n; ++j) out(i, j) = c(i, j);
                              }
                              return out;
                          },
                          [](const DenseMatrix& d) { return d; },
                      },
                      m);
}

Tau gff_to_tau(const GffParams& p) {
    if (p.dim != 1) {
        throw DomainError("only d = 1 is supported");
    }
    if (!(p.beta >= 0.0) || !(p.mass >= 0.0)) {
        throw DomainError("beta and mass must be non-negative");
    }
    const double coupling = p.beta / 4.0;
    const double denom = 2.0 * coupling + p.mass * p.mass / 2.0;
    if (denom == 0.0) {
        throw DomainError("tau undefined for beta = 0 and m = 0");
    }
    return Tau(coupling / denom);
}

double xi_mass(double mass) {
    if (!(mass > 0.0)) {
        throw DomainError("mass must be positive");
    }
    // ln(1 + m^2 + sqrt(2 m^2 + m^4)), with sqrt(2 m^2 + m^4) = m sqrt(2 + m^2).
    const double m2 = mass * mass;
    return std::log1p(m2 + mass * std::sqrt(2.0 + m2));
}

namespace {

StructuredMatrix chain_or_cycle(const GraphSpec& g, double neighbour) {
    const int size = g.node_count();
    if (g.kind() == GraphKind::Cycle) {
        std::vector<double> row(static_cast<std::size_t>(size), 0.0);
        row[0] = 1.0;
        row[1] = neighbour;
        row[static_cast<std::size_t>(size - 1)] = neighbour;
        return SymCirculant(std::move(row));
    }
    return SymTridiagonal{1.0, neighbour, size};
}

}  // namespace

StructuredMatrix partial_correlation_matrix(const GraphSpec& g, Tau tau) {
    return chain_or_cycle(g, tau.value());
}

StructuredMatrix precision_matrix(const GraphSpec& g, Tau tau) {
    return chain_or_cycle(g, -tau.value());
}

}  // namespace ggchain
