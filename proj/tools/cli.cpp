#include "cli.hpp"

#include "ggchain/analysis.hpp"
#include "ggchain/circulant_exact.hpp"
#include "ggchain/core_model.hpp"
#include "ggchain/errors.hpp"
#include "ggchain/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#ifndef GGCHAIN_VERSION
#define GGCHAIN_VERSION "0.0.0"
#endif

namespace ggchain::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<long long, double, std::string>;

constexpr double kSelfCheckTolerance = 1e-8;
constexpr double kFisherBound = 4.0;
constexpr std::size_t kMinSampleCount = 100;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Report {
    Json metadata;
    std::vector<Table> tables;
};

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::string cell_text(const Cell& c) {
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    return csv_field(std::get<std::string>(c));
}

Json cell_json(const Cell& c) {
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    return std::get<std::string>(c);
}

void write_metadata_csv(std::ostream& out, const Json& meta, const std::string& prefix) {
    for (const auto& [key, value] : meta.items()) {
        if (value.is_object()) {
            write_metadata_csv(out, value, prefix + key + ".");
        } else if (value.is_string()) {
            out << "# " << prefix << key << ": " << value.get<std::string>() << '\n';
        } else if (value.is_number_float()) {
            out << "# " << prefix << key << ": " << format_double(value.get<double>()) << '\n';
        } else {
            out << "# " << prefix << key << ": " << value.dump() << '\n';
        }
    }
}

void write_csv(std::ostream& out, const Report& report) {
    write_metadata_csv(out, report.metadata, "");
    for (const auto& t : report.tables) {
        out << "# table: " << t.name << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            out << (c ? "," : "") << csv_field(t.columns[c]);
        }
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
            out << '\n';
        }
    }
}

void write_json(std::ostream& out, const Report& report) {
    Json payload = Json::object();
    for (const auto& t : report.tables) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
            Json r = Json::array();
            for (const auto& c : row) r.push_back(cell_json(c));
            rows.push_back(std::move(r));
        }
        payload[t.name] = Json{{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    Json envelope{{"metadata", report.metadata}, {"payload", std::move(payload)}};
    out << envelope.dump(2) << '\n';
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json base_metadata(const std::string& command, Json parameters, bool deterministic) {
    Json meta{{"command", command}, {"version", GGCHAIN_VERSION}, {"parameters", std::move(parameters)}};
    if (!deterministic) meta["timestamp"] = utc_timestamp();
    return meta;
}

Table matrix_table(const std::string& name, const GraphSpec& g, const DenseMatrix& m) {
    Table t{name, {"index"}, {}};
    for (int i = g.first_index(); i <= g.last_index(); ++i) t.columns.push_back(std::to_string(i));
    for (int r = 0; r < m.rows(); ++r) {
        std::vector<Cell> row{static_cast<long long>(g.first_index() + r)};
        for (int c = 0; c < m.cols(); ++c) row.emplace_back(m(r, c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Options shared by the subcommands, filled in by CLI11.
struct Options {
    std::string format = "csv";
    bool deterministic = false;

    std::optional<double> tau;
    std::optional<double> mass;
    std::optional<double> beta;

    std::string graph;
    int n = 0;
    std::string method = "closed";

    int i = 0;
    int j = 0;
    int n_min = 0;
    int n_max = 0;
    bool fit = false;

    std::optional<int> k;
    bool riemann = false;

    long long count = 0;
    std::uint64_t seed = 0;
};

struct Outcome {
    Report report;
    int code = kOk;
};

Outcome cmd_decay(const Options& o) {
    Json params = Json::object();
    double tau_value = 0.0;
    double mass = 0.0;
    if (o.tau) {
        params["tau"] = *o.tau;
        tau_value = Tau(*o.tau).value();
        if (tau_value == 0.0) throw DomainError("tau must lie in (0, 1/2)");
        // free-field mass giving this tau at beta = 1
        mass = std::sqrt(1.0 / (2.0 * tau_value) - 1.0);
    } else {
        params["mass"] = *o.mass;
        params["beta"] = *o.beta;
        if (!(*o.mass > 0.0)) throw DomainError("mass must be positive");
        tau_value = gff_to_tau({*o.beta, *o.mass}).value();
        mass = *o.mass;
    }
    const auto d = decay_params(Tau(tau_value));
    Report r{base_metadata("decay", std::move(params), o.deterministic), {}};
    r.tables.push_back({"decay",
                        {"tau", "lambda", "alpha", "mass", "xi_m"},
                        {{tau_value, d.lambda, d.alpha, mass, xi_mass(mass)}}});
    return {std::move(r), kOk};
}

Outcome cmd_corr(const Options& o) {
    const GraphSpec g(parse_graph_kind(o.graph), o.n);
    const Tau tau(*o.tau);
    Json params{{"graph", o.graph}, {"n", o.n}, {"tau", *o.tau}, {"method", o.method}};
    Report r{base_metadata("corr", std::move(params), o.deterministic), {}};

    if (o.method == "oracle") {
        r.tables.push_back(matrix_table("correlation", g, model_correlation(g, tau).psi));
        return {std::move(r), kOk};
    }
    const DenseMatrix closed = exact_correlation(g, tau);
    r.tables.push_back(matrix_table("correlation", g, closed));
    if (o.method == "closed") return {std::move(r), kOk};

    const DenseMatrix oracle = model_correlation(g, tau).psi;
    const double deviation = (closed - oracle).cwiseAbs().maxCoeff();
    const bool ok = deviation <= kSelfCheckTolerance;
    r.tables.push_back({"self_check",
                        {"max_abs_deviation", "tolerance", "status"},
                        {{deviation, kSelfCheckTolerance, std::string(ok ? "ok" : "fail")}}});
    return {std::move(r), ok ? kOk : kSelfCheck};
}

Outcome cmd_converge(const Options& o) {
    const GraphKind kind = parse_graph_kind(o.graph);
    if (kind == GraphKind::Cycle) {
        throw DomainError("no asymptotic expansion available for cycle");
    }
    const Tau tau(*o.tau);
    const ConvergenceSweep sweep = kind == GraphKind::CenteredChain
                                       ? sweep_centered(o.i, o.j, tau, o.n_min, o.n_max)
                                       : sweep_open(o.i, o.j, tau, o.n_min, o.n_max);
    std::optional<RateFit> fit;
    if (o.fit) fit = fit_abs_error_rate(sweep);

    Json params{{"graph", o.graph}, {"i", o.i}, {"j", o.j}, {"tau", *o.tau},
                {"n_min", o.n_min}, {"n_max", o.n_max}, {"fit", o.fit}};
    Report r{base_metadata("converge", std::move(params), o.deterministic), {}};
    r.metadata["lambda"] = sweep.decay.lambda;
    r.metadata["coefficient"] = sweep.coefficient;

    Table records{"records", {"n", "exact", "limit", "abs_err", "rel_err", "scaled_rel"}, {}};
    for (const auto& rec : sweep.records) {
        records.rows.push_back({static_cast<long long>(rec.n), rec.exact, rec.limit, rec.abs_err,
                                rec.rel_err, rec.scaled_rel});
    }
    r.tables.push_back(std::move(records));
    if (fit) {
        r.tables.push_back({"fit",
                            {"slope", "intercept", "r_squared", "expected_slope",
                             "relative_slope_error", "points"},
                            {{fit->slope, fit->intercept, fit->r_squared, fit->expected_slope,
                              fit->relative_slope_error(), static_cast<long long>(fit->points)}}});
    }
    return {std::move(r), kOk};
}

Outcome cmd_circulant(const Options& o) {
    const Tau tau(*o.tau);
    const auto seq = correlation_sequence(o.n, tau);
    std::vector<int> ks;
    if (o.k) {
        if (*o.k < 0 || *o.k >= o.n) throw DomainError("k must satisfy 0 <= k < n");
        ks.push_back(*o.k);
    } else {
        for (int k = 0; k < o.n; ++k) ks.push_back(k);
    }

    Json params{{"n", o.n}, {"tau", *o.tau}};
    if (o.k) params["k"] = *o.k;
    params["riemann"] = o.riemann;
    Report r{base_metadata("circulant", std::move(params), o.deterministic), {}};

    Table t{"omega", {"k", "omega_k", "alpha^k", "omega_k - alpha^k"}, {}};
    if (o.riemann) t.columns.insert(t.columns.end(), {"S_k", "I_k", "gap"});
    for (const int k : ks) {
        const double omega = seq.omega[static_cast<std::size_t>(k)];
        // at tau = 0 the limit is the Kronecker delta
        const double limit = tau.value() == 0.0 ? (k == 0 ? 1.0 : 0.0) : omega_cycle_limit(k, tau);
        std::vector<Cell> row{static_cast<long long>(k), omega, limit, omega - limit};
        if (o.riemann) {
            const double s = riemann_sum(o.n, k, tau);
            const double integral = integral_Ik(k, tau);
            row.insert(row.end(), {s, integral, s - integral});
        }
        t.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(t));
    return {std::move(r), kOk};
}

Outcome cmd_sample(const Options& o) {
    if (o.count < static_cast<long long>(kMinSampleCount)) {
        throw DomainError("count must be >= " + std::to_string(kMinSampleCount));
    }
    const GraphSpec g(parse_graph_kind(o.graph), o.n);
    const Tau tau(*o.tau);
    const auto batch = sample(g, tau, static_cast<std::size_t>(o.count), o.seed);
    const DenseMatrix exact = exact_correlation(g, tau);
    const DenseMatrix z = fisher_discrepancy(batch.correlation, exact, batch.count);

    Json params{{"graph", o.graph}, {"n", o.n}, {"tau", *o.tau}, {"count", o.count}};
    Report r{base_metadata("sample", std::move(params), o.deterministic), {}};
    r.metadata["seed"] = o.seed;
    r.metadata["generator"] = std::string(SampleBatch::kGenerator);
    r.metadata["normal_method"] = std::string(SampleBatch::kNormalMethod);

    Table t{"fisher", {"i", "j", "empirical", "exact", "standard_error", "z"}, {}};
    double worst = 0.0;
    const int size = g.node_count();
    for (int a = 0; a < size; ++a) {
        for (int b = a + 1; b < size; ++b) {
            worst = std::max(worst, z(a, b));
            t.rows.push_back({static_cast<long long>(g.first_index() + a),
                              static_cast<long long>(g.first_index() + b), batch.correlation(a, b),
                              exact(a, b), batch.standard_error(a, b), z(a, b)});
        }
    }
    r.tables.push_back(std::move(t));
    const bool ok = worst <= kFisherBound;
    r.tables.push_back(
        {"summary", {"max_z", "bound", "status"}, {{worst, kFisherBound, std::string(ok ? "ok" : "fail")}}});
    return {std::move(r), ok ? kOk : kStatistical};
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and sampled correlations of Gaussian chain and cycle models", "ggchain"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", GGCHAIN_VERSION);

    Options o;
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--deterministic", o.deterministic, "omit the timestamp from metadata");

    auto* decay = app.add_subcommand("decay", "decay rate, base and free-field rate");
    auto* dtau = decay->add_option("--tau", o.tau, "partial correlation tau");
    auto* dmass = decay->add_option("--mass", o.mass, "free-field mass m");
    auto* dbeta = decay->add_option("--beta", o.beta, "free-field inverse temperature beta");
    dtau->excludes(dmass)->excludes(dbeta);
    dmass->needs(dbeta);
    dbeta->needs(dmass);

    auto* corr = app.add_subcommand("corr", "full correlation matrix");
    corr->add_option("--graph", o.graph, "open, centered or cycle")->required();
    corr->add_option("--n", o.n, "chain parameter n (cycle: node count)")->required();
    corr->add_option("--tau", o.tau, "partial correlation tau")->required();
    corr->add_option("--method", o.method, "closed, oracle or both")
        ->check(CLI::IsMember({"closed", "oracle", "both"}))
        ->capture_default_str();

    auto* converge = app.add_subcommand("converge", "finite-n values against their limit");
    converge->add_option("--graph", o.graph, "open or centered")->required();
    converge->add_option("--i", o.i, "first index")->required();
    converge->add_option("--j", o.j, "second index")->required();
    converge->add_option("--tau", o.tau, "partial correlation tau")->required();
    converge->add_option("--n-min", o.n_min, "smallest n")->required();
    converge->add_option("--n-max", o.n_max, "largest n")->required();
    converge->add_flag("--fit", o.fit, "fit ln|abs_err| against n");

    auto* circ = app.add_subcommand("circulant", "cycle correlation sequence");
    o.n = 64;
    circ->add_option("--n", o.n, "cycle length")->capture_default_str();
    circ->add_option("--tau", o.tau, "partial correlation tau")->required();
    circ->add_option("--k", o.k, "single lag (default: all)");
    circ->add_flag("--riemann", o.riemann, "add Riemann sum, integral and gap");

    auto* samp = app.add_subcommand("sample", "Monte Carlo check against the exact correlations");
    samp->add_option("--graph", o.graph, "open, centered or cycle")->required();
    samp->add_option("--n", o.n, "chain parameter n (cycle: node count)")->required();
    samp->add_option("--tau", o.tau, "partial correlation tau")->required();
    samp->add_option("--count", o.count, "number of draws (>= 100)")->required();
    samp->add_option("--seed", o.seed, "generator seed")->capture_default_str();

    std::vector<std::string> reversed(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
    try {
        app.parse(reversed);
        if (decay->parsed() && !o.tau && !o.mass) {
            throw CLI::ValidationError("decay needs --tau or --mass with --beta");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << GGCHAIN_VERSION << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }

    try {
        Outcome result;
        if (decay->parsed()) {
            result = cmd_decay(o);
        } else if (corr->parsed()) {
            result = cmd_corr(o);
        } else if (converge->parsed()) {
            result = cmd_converge(o);
        } else if (circ->parsed()) {
            result = cmd_circulant(o);
        } else {
            result = cmd_sample(o);
        }
        if (o.format == "json") {
            write_json(out, result.report);
        } else {
            write_csv(out, result.report);
        }
        if (result.code == kSelfCheck) err << "error: closed form and oracle disagree\n";
        if (result.code == kStatistical) err << "error: Fisher-z discrepancy above bound\n";
        return result.code;
    } catch (const InsufficientData& e) {
        err << "error: insufficient data: " << e.what() << '\n';
        return kInsufficientData;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
}

}  // namespace ggchain::cli
