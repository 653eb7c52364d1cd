// drsim: command-line front end for the power-law failure theory, the
// configuration-model percolation experiments, and the recommendation-protocol
// simulators. Every command is fully determined by its flags and seeds, and
// re-running with the same flags yields byte-identical output.
//
// Exit statuses: 0 success, 2 usage error, 3 infeasible configuration,
// 4 scenario parse/validation error, 1 other failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drsim/csv.hpp"
#include "drsim/graph.hpp"
#include "drsim/powerlaw.hpp"
#include "drsim/predictors.hpp"
#include "drsim/protocols.hpp"
#include "drsim/rng.hpp"
#include "drsim/scenario.hpp"
#include "drsim/zeta.hpp"

namespace {

using namespace drsim;

// Flag-level mistakes discovered after CLI11 parsing (bad grids, ranges).
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw usage_error(what + ": trailing junk in '" + text + "'");
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error(what + ": cannot parse number '" + text + "'");
    }
}

// "start:stop:step" inclusive of both endpoints within 1e-12; a bare number
// is a one-point grid.
std::vector<double> parse_grid(const std::string& spec, const std::string& what) {
    const std::size_t c1 = spec.find(':');
    if (c1 == std::string::npos) return {parse_double(spec, what)};
    const std::size_t c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos || spec.find(':', c2 + 1) != std::string::npos) {
        throw usage_error(what + ": grids use start:stop:step");
    }
    const double start = parse_double(spec.substr(0, c1), what);
    const double stop = parse_double(spec.substr(c1 + 1, c2 - c1 - 1), what);
    const double step = parse_double(spec.substr(c2 + 1), what);
    if (!(step > 0.0)) throw usage_error(what + ": step must be > 0");
    if (stop < start - 1e-12) throw usage_error(what + ": stop is below start");
    std::vector<double> values;
    for (std::size_t i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + 1e-12) break;
        values.push_back(v);
    }
    return values;
}

std::vector<double> parse_comma_list(const std::string& spec, const std::string& what) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::size_t end = comma == std::string::npos ? spec.size() : comma;
        values.push_back(parse_double(spec.substr(pos, end - pos), what));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) throw usage_error(what + ": empty list");
    return values;
}

std::vector<std::string> split_commas(const std::string& spec) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const std::size_t comma = spec.find(',', pos);
        const std::size_t end = comma == std::string::npos ? spec.size() : comma;
        out.push_back(spec.substr(pos, end - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    row += '\n';
    return row;
}

// Sample mean and standard error (sample sd / sqrt(n)); nan when undefined.
std::pair<double, double> mean_stderr(const std::vector<double>& values) {
    std::vector<double> finite;
    for (const double v : values) {
        if (std::isfinite(v)) finite.push_back(v);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (finite.empty()) return {nan, nan};
    double mean = 0.0;
    for (const double v : finite) mean += v;
    mean /= static_cast<double>(finite.size());
    if (finite.size() < 2) return {mean, nan};
    double ss = 0.0;
    for (const double v : finite) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(finite.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(finite.size()))};
}

std::vector<std::uint64_t> seed_list(bool have_seed, std::uint64_t seed,
                                     std::uint64_t seeds) {
    if (have_seed) return {seed};
    if (seeds == 0) throw usage_error("--seeds must be >= 1");
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < seeds; ++s) out.push_back(s);
    return out;
}

// ---------------------------------------------------------------- theory ---
int cmd_theory_curve(const std::string& beta_list, const std::string& p_grid,
                     double alpha, const std::string& out_path) {
    const std::vector<double> betas = parse_comma_list(beta_list, "--beta");
    const std::vector<double> ps = parse_grid(p_grid, "--p/--p-grid");
    for (const double b : betas) {
        if (!(b > 0.0)) throw usage_error("--beta values must be > 0");
    }
    for (const double p : ps) {
        if (p < 0.0 || p > 1.0) throw usage_error("failure rates must lie in [0, 1]");
    }
    std::string csv =
        "beta,p,chi,xi,orphan_fraction,degree1_fraction,beta_prime,"
        "nonorphan_fraction,critical,truncated\n";
    for (const double b : betas) {
        const PowerLawParams params{alpha, b};
        const double nodes = params.expected_nodes();
        for (const double p : ps) {
            const SubgraphTheoryReport r = subgraph_report(params, p);
            csv += join_row({csv_num(b), csv_num(p), csv_num(r.chi), csv_num(r.xi),
                             csv_num(r.orphan_count / nodes),
                             csv_num(r.degree1_count / nodes), csv_num(r.beta_prime),
                             csv_num(r.nonorphan_fraction), r.critical ? "1" : "0",
                             r.truncated ? "1" : "0"});
        }
    }
    emit(csv, out_path);
    return 0;
}

int cmd_theory_critical(const std::string& beta_list, double alpha,
                        const std::string& out_path) {
    const std::vector<double> betas = parse_comma_list(beta_list, "--beta");
    std::string csv = "beta,p_critical\n";
    for (const double b : betas) {
        if (!(b > 0.0)) throw usage_error("--beta values must be > 0");
        csv += join_row({csv_num(b), csv_num(critical_failure_rate({alpha, b}))});
    }
    emit(csv, out_path);
    return 0;
}

// ----------------------------------------------------------------- graph ---
Graph build_graph(double alpha, double beta, std::optional<std::uint64_t> n,
                  std::mt19937_64& rng) {
    const PowerLawParams params{alpha, beta};
    const std::vector<std::uint32_t> degrees = realize_degree_sequence(params, n, rng);
    return configuration_model(degrees, rng);
}

int cmd_graph_generate(double alpha, double beta, std::optional<std::uint64_t> n,
                       std::uint64_t seed, const std::string& out_path) {
    std::mt19937_64 rng(seed);
    const Graph g = build_graph(alpha, beta, n, rng);
    emit(edge_list_text(g, seed, alpha, beta), out_path);
    return 0;
}

const char kPercolateHeader[] =
    "p,survivors,orphans,degree1,largest_component,"
    "largest_fraction_of_survivors,fitted_beta,seed\n";

std::string percolate_row(const PercolationReport& r) {
    return join_row({csv_num(r.p), csv_num(r.survivors), csv_num(r.orphans),
                     csv_num(r.degree1), csv_num(r.largest_component),
                     csv_num(r.largest_fraction_of_survivors), csv_num(r.fitted_beta),
                     csv_num(r.seed)});
}

int cmd_graph_percolate(double alpha, double beta, std::optional<std::uint64_t> n,
                        double p, const std::vector<std::uint64_t>& seeds,
                        const std::string& out_path) {
    if (p < 0.0 || p > 1.0) throw usage_error("--p must lie in [0, 1]");
    std::string csv = kPercolateHeader;
    for (const std::uint64_t seed : seeds) {
        std::mt19937_64 rng(seed);
        Graph g = build_graph(alpha, beta, n, rng);
        csv += percolate_row(percolate_report(g, p, rng, seed));
    }
    emit(csv, out_path);
    return 0;
}

int cmd_graph_sweep(double alpha, double beta, std::optional<std::uint64_t> n,
                    const std::string& p_grid,
                    const std::vector<std::uint64_t>& seeds,
                    const std::string& out_path) {
    const std::vector<double> ps = parse_grid(p_grid, "--p");
    for (const double p : ps) {
        if (p < 0.0 || p > 1.0) throw usage_error("failure rates must lie in [0, 1]");
    }
    // reports[pi][si]; one graph per seed, failure rates swept in order.
    std::vector<std::vector<PercolationReport>> reports(
        ps.size(), std::vector<PercolationReport>(seeds.size()));
    for (std::size_t si = 0; si < seeds.size(); ++si) {
        std::mt19937_64 rng(seeds[si]);
        Graph g = build_graph(alpha, beta, n, rng);
        const SimpleAdjacency adj = simple_neighbors(g);
        for (std::size_t pi = 0; pi < ps.size(); ++pi) {
            reports[pi][si] = percolate_report(g, adj, ps[pi], rng, seeds[si]);
        }
    }
    std::string csv = kPercolateHeader;
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        for (const PercolationReport& r : reports[pi]) csv += percolate_row(r);
        const auto column = [&](auto getter) {
            std::vector<double> v;
            for (const PercolationReport& r : reports[pi]) v.push_back(getter(r));
            return mean_stderr(v);
        };
        const auto surv = column([](const PercolationReport& r) { return double(r.survivors); });
        const auto orph = column([](const PercolationReport& r) { return double(r.orphans); });
        const auto deg1 = column([](const PercolationReport& r) { return double(r.degree1); });
        const auto larg = column([](const PercolationReport& r) { return double(r.largest_component); });
        const auto frac = column([](const PercolationReport& r) { return r.largest_fraction_of_survivors; });
        const auto fit = column([](const PercolationReport& r) { return r.fitted_beta; });
        csv += join_row({csv_num(ps[pi]), csv_num(surv.first), csv_num(orph.first),
                         csv_num(deg1.first), csv_num(larg.first), csv_num(frac.first),
                         csv_num(fit.first), "mean"});
        csv += join_row({csv_num(ps[pi]), csv_num(surv.second), csv_num(orph.second),
                         csv_num(deg1.second), csv_num(larg.second), csv_num(frac.second),
                         csv_num(fit.second), "stderr"});
    }
    emit(csv, out_path);
    return 0;
}

// ------------------------------------------------------------------- drs ---
struct GraphFlags {
    double beta = 2.5;
    std::optional<double> alpha;
    std::optional<std::uint64_t> nodes_target;  // deterministic size target
    std::optional<std::uint64_t> sample_n;      // sampled-degree node count
    std::string edges_path;

    bool any() const {
        return alpha.has_value() || nodes_target.has_value() ||
               sample_n.has_value() || !edges_path.empty();
    }
};

Graph make_drs_graph(const GraphFlags& gf, std::mt19937_64& rng) {
    if (!gf.edges_path.empty()) {
        std::ifstream in(gf.edges_path);
        if (!in) throw infeasible_error("cannot open edge list " + gf.edges_path);
        return parse_edge_list(in);
    }
    double alpha = gf.alpha.value_or(20.0);
    if (gf.nodes_target) {
        alpha = alpha_for_nodes(gf.beta, static_cast<double>(*gf.nodes_target));
    }
    return build_graph(alpha, gf.beta, gf.sample_n, rng);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw scenario_error("cannot open scenario file " + path);
    Scenario s = parse_scenario(in);
    for (const std::string& w : scenario_premise_warnings(s)) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    return s;
}

int cmd_drs_make_scenario(std::uint32_t ell, std::uint32_t sig_size,
                          std::uint32_t common_size, std::uint32_t extras,
                          std::uint32_t eta, std::uint32_t mu, double lambda,
                          std::uint32_t overlap, std::uint64_t seed,
                          const std::string& out_path) {
    std::mt19937_64 rng(seed);
    const Scenario s = build_scenario(
        ell, std::vector<std::uint32_t>(ell, sig_size),
        std::vector<std::uint32_t>(ell, common_size), extras, eta, mu, lambda,
        overlap, rng);
    emit(scenario_text(s), out_path);
    return 0;
}

struct WomBuilderFlags {
    double sig_fraction = 0.3;
    std::uint32_t common_size = 10;
    std::uint32_t extras = 20;
    std::uint32_t eta = 1000;
    std::optional<double> lambda;
};

const char kRunHeader[] =
    "seed,samples_random,samples_recommended,messages,spam,satisfied_users,"
    "satisfied_sig_fraction,rounds,trace_length,capped\n";

std::string run_row(std::uint64_t seed, const SimMetrics& m) {
    return join_row({csv_num(seed), csv_num(m.samples_random),
                     csv_num(m.samples_recommended), csv_num(m.messages),
                     csv_num(m.spam), csv_num(m.satisfied_users),
                     csv_num(m.satisfied_sig_fraction), csv_num(m.rounds),
                     csv_num(m.trace_length), m.capped ? "1" : "0"});
}

// One word-of-mouth run: graph, then placement shuffle, then (optionally) a
// generated scenario, then the protocol — all off one per-seed RNG stream.
SimMetrics run_wom_seed(const GraphFlags& gf, const WomBuilderFlags& wb,
                        const Scenario* file_scenario, const ProtocolConfig& config,
                        std::uint64_t seed, std::vector<MessageRecord>* log,
                        Scenario* scenario_out, SigConnectivity* conn_out) {
    std::mt19937_64 rng(seed);
    const Graph graph = make_drs_graph(gf, rng);
    std::vector<std::uint32_t> placement(graph.node_count);
    for (std::uint32_t i = 0; i < graph.node_count; ++i) placement[i] = i;
    shuffle_vector(placement, rng);

    Scenario built;
    const Scenario* scenario = file_scenario;
    if (scenario == nullptr) {
        const std::uint32_t members = static_cast<std::uint32_t>(
            std::llround(wb.sig_fraction * graph.node_count));
        const double lambda = wb.lambda.value_or(
            static_cast<double>(members) / graph.node_count);
        built = build_single_sig_scenario(graph.node_count, wb.eta, members,
                                          wb.common_size, wb.extras, lambda, rng);
        scenario = &built;
    } else if (scenario->mu != graph.node_count) {
        throw infeasible_error(
            "scenario user count must match the graph node count for word_of_mouth");
    }
    if (conn_out != nullptr && !scenario->sigs.empty()) {
        *conn_out = measure_sig_connectivity(graph, scenario->sigs[0], placement);
    }
    SimMetrics m = run_word_of_mouth(*scenario, graph, placement, config, rng, log);
    if (scenario_out != nullptr) *scenario_out = *scenario;
    return m;
}

int cmd_drs_run(const std::string& protocol, const std::string& scenario_path,
                const std::vector<std::uint64_t>& seeds, std::uint32_t rounds,
                double forward_prob, const GraphFlags& gf, const WomBuilderFlags& wb,
                const std::string& log_path, const std::string& out_path) {
    const std::optional<ProtocolKind> kind = protocol_from_name(protocol);
    if (!kind) throw usage_error("unknown protocol '" + protocol + "'");
    if (!log_path.empty() && seeds.size() != 1) {
        throw usage_error("--log needs exactly one seed");
    }
    ProtocolConfig config;
    config.kind = *kind;
    config.forward_prob_uninterested = forward_prob;
    config.max_rounds = rounds;

    std::optional<Scenario> file_scenario;
    if (!scenario_path.empty()) file_scenario = load_scenario(scenario_path);

    const bool is_wom = *kind == ProtocolKind::word_of_mouth;
    if (!is_wom && !file_scenario) {
        throw usage_error("--scenario is required for this protocol");
    }
    if (is_wom && !file_scenario && !gf.any() ) {
        throw usage_error(
            "word_of_mouth needs graph flags (--graph-alpha/--graph-nodes/"
            "--graph-n/--graph-edges)");
    }

    std::vector<MessageRecord> log;
    std::vector<MessageRecord>* log_ptr = log_path.empty() ? nullptr : &log;
    std::string csv = kRunHeader;
    for (const std::uint64_t seed : seeds) {
        config.seed = seed;
        SimMetrics m;
        if (is_wom) {
            m = run_wom_seed(gf, wb, file_scenario ? &*file_scenario : nullptr,
                             config, seed, log_ptr, nullptr, nullptr);
        } else {
            std::mt19937_64 rng(seed);
            m = *kind == ProtocolKind::baseline
                    ? run_baseline(*file_scenario, config, rng, log_ptr)
                    : run_mailing_list(*file_scenario, config, rng, log_ptr);
        }
        csv += run_row(seed, m);
    }
    emit(csv, out_path);
    if (!log_path.empty()) {
        std::string log_csv = "round,sender,receiver,item,liked\n";
        for (const MessageRecord& r : log) {
            log_csv += join_row({csv_num(r.round), csv_num(r.sender),
                                 csv_num(r.receiver), csv_num(r.item),
                                 r.liked ? "1" : "0"});
        }
        emit(log_csv, log_path);
    }
    return 0;
}

int cmd_drs_compare(const std::string& scenario_path, const std::string& protocols,
                    const std::vector<std::uint64_t>& seeds, std::uint32_t rounds,
                    double forward_prob, const GraphFlags& gf,
                    const std::string& out_path) {
    const Scenario scenario = load_scenario(scenario_path);
    std::string csv = "protocol,metric,measured_mean,measured_stderr,predicted,ratio\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (const std::string& name : split_commas(protocols)) {
        const std::optional<ProtocolKind> kind = protocol_from_name(name);
        if (!kind) throw usage_error("unknown protocol '" + name + "'");
        ProtocolConfig config;
        config.kind = *kind;
        config.forward_prob_uninterested = forward_prob;
        config.max_rounds = rounds;

        std::vector<double> samples, messages, spam, gammas;
        for (const std::uint64_t seed : seeds) {
            config.seed = seed;
            SimMetrics m;
            if (*kind == ProtocolKind::word_of_mouth) {
                SigConnectivity conn;
                m = run_wom_seed(gf, WomBuilderFlags{}, &scenario, config, seed,
                                 nullptr, nullptr, &conn);
                gammas.push_back(conn.gamma);
            } else {
                std::mt19937_64 rng(seed);
                m = *kind == ProtocolKind::baseline
                        ? run_baseline(scenario, config, rng, nullptr)
                        : run_mailing_list(scenario, config, rng, nullptr);
            }
            samples.push_back(static_cast<double>(m.samples_random) +
                              static_cast<double>(m.samples_recommended));
            messages.push_back(static_cast<double>(m.messages));
            spam.push_back(static_cast<double>(m.spam));
        }

        ComplexityPrediction pred;
        switch (*kind) {
            case ProtocolKind::baseline: pred = predict_baseline(scenario); break;
            case ProtocolKind::mailing_list: pred = predict_mailing_list(scenario); break;
            case ProtocolKind::word_of_mouth: {
                const double gamma = mean_stderr(gammas).first;
                pred = predict_word_of_mouth(scenario,
                                             std::isfinite(gamma) ? gamma : 0.0);
                break;
            }
        }
        const auto emit_metric = [&](const char* metric, const std::vector<double>& v,
                                     std::optional<double> predicted) {
            const auto [mean, se] = mean_stderr(v);
            const double pv = predicted.value_or(nan);
            const double ratio = (std::isfinite(pv) && pv != 0.0) ? mean / pv : nan;
            csv += join_row({name, metric, csv_num(mean), csv_num(se), csv_num(pv),
                             csv_num(ratio)});
        };
        emit_metric("samples", samples, pred.samples);
        emit_metric("messages", messages, pred.messages);
        emit_metric("spam", spam, pred.spam);
    }
    emit(csv, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Power-law failure theory, percolation experiments, and "
                 "recommendation-protocol simulation"};
    app.require_subcommand(1);

    // --- theory ---
    CLI::App* theory = app.add_subcommand("theory", "Analytical failure curves");
    theory->require_subcommand(1);
    std::string th_beta, th_p, th_out;
    double th_alpha = 20.0;

    CLI::App* curve = theory->add_subcommand(
        "curve", "chi/xi/orphan/slope rows over failure rates");
    curve->add_option("--beta", th_beta, "slope value or comma list")->required();
    CLI::Option* opt_p = curve->add_option("--p", th_p, "single failure rate");
    CLI::Option* opt_pg =
        curve->add_option("--p-grid", th_p, "failure-rate grid start:stop:step");
    opt_p->excludes(opt_pg);
    curve->add_option("--alpha", th_alpha, "size parameter (default 20)");
    curve->add_option("--out", th_out, "write CSV here instead of stdout");

    CLI::App* critical = theory->add_subcommand(
        "critical", "critical failure rate per slope");
    critical->add_option("--beta", th_beta, "slope value or comma list")->required();
    critical->add_option("--alpha", th_alpha, "size parameter (default 20)");
    critical->add_option("--out", th_out, "write CSV here instead of stdout");

    // --- graph ---
    CLI::App* graph = app.add_subcommand("graph", "Configuration-model experiments");
    graph->require_subcommand(1);
    double g_alpha = 20.0, g_beta = 2.5, g_p = 0.0;
    std::string g_pgrid, g_out;
    std::uint64_t g_n = 0, g_seed = 0, g_seeds = 1;
    bool g_have_n = false, g_have_seed = false;

    const auto add_graph_common = [&](CLI::App* cmd, bool with_seeds) {
        cmd->add_option("--alpha", g_alpha, "size parameter (default 20)");
        cmd->add_option("--beta", g_beta, "power-law slope")->required();
        cmd->add_option_function<std::uint64_t>(
               "--n",
               [&](const std::uint64_t v) {
                   g_n = v;
                   g_have_n = true;
               },
               "sample this many degrees instead of the deterministic counts");
        CLI::Option* seed_opt = cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t v) {
                g_seed = v;
                g_have_seed = true;
            },
            "single seed");
        if (with_seeds) {
            cmd->add_option("--seeds", g_seeds, "use seeds 0..N-1")->excludes(seed_opt);
        }
        cmd->add_option("--out", g_out, "write output here instead of stdout");
    };

    CLI::App* generate = graph->add_subcommand("generate", "emit an edge list");
    add_graph_common(generate, false);

    CLI::App* percolate =
        graph->add_subcommand("percolate", "fail nodes once per seed and measure");
    add_graph_common(percolate, true);
    percolate->add_option("--p", g_p, "failure rate")->required();

    CLI::App* sweep = graph->add_subcommand("sweep", "percolation over a rate grid");
    add_graph_common(sweep, true);
    sweep->add_option("--p", g_pgrid, "failure-rate grid start:stop:step")->required();

    // --- drs ---
    CLI::App* drs = app.add_subcommand("drs", "Recommendation-protocol simulation");
    drs->require_subcommand(1);

    std::uint32_t ms_ell = 1, ms_sig_size = 20, ms_common = 10, ms_extras = 20,
                  ms_eta = 1000, ms_mu = 20, ms_overlap = 0;
    double ms_lambda = 1.0;
    std::uint64_t ms_seed = 0;
    std::string ms_out;
    CLI::App* make_scn = drs->add_subcommand("make-scenario",
                                             "generate a scenario file");
    make_scn->add_option("--ell", ms_ell, "number of groups (default 1)");
    make_scn->add_option("--sig-size", ms_sig_size, "members per group (default 20)");
    make_scn->add_option("--common-size", ms_common, "common items per group (default 10)");
    make_scn->add_option("--extras", ms_extras, "extra items per user (default 20)");
    make_scn->add_option("--eta", ms_eta, "catalog size (default 1000)");
    make_scn->add_option("--mu", ms_mu, "user count (default 20)");
    make_scn->add_option("--lambda", ms_lambda, "coverage target (default 1)");
    make_scn->add_option("--overlap", ms_overlap, "members shared between neighbors");
    make_scn->add_option("--seed", ms_seed, "seed for the extra-item draws");
    make_scn->add_option("--out", ms_out, "write the scenario here instead of stdout");

    std::string r_protocol, r_scenario, r_log, r_out, r_protocols;
    std::uint64_t r_seed = 0, r_seeds = 1;
    bool r_have_seed = false;
    std::uint32_t r_rounds = 10000;
    double r_forward = 0.0;
    GraphFlags gf;
    WomBuilderFlags wb;

    const auto add_drs_common = [&](CLI::App* cmd) {
        CLI::Option* seed_opt = cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t v) {
                r_seed = v;
                r_have_seed = true;
            },
            "single seed");
        cmd->add_option("--seeds", r_seeds, "use seeds 0..N-1")->excludes(seed_opt);
        cmd->add_option("--rounds", r_rounds, "round cap (default 10000)");
        cmd->add_option("--forward-prob", r_forward,
                        "forwarding chance for uninterested recipients (default 0)");
        cmd->add_option("--graph-beta", gf.beta, "host-graph slope (default 2.5)");
        cmd->add_option_function<double>(
            "--graph-alpha", [&](const double v) { gf.alpha = v; },
            "host-graph size parameter");
        cmd->add_option_function<std::uint64_t>(
            "--graph-nodes", [&](const std::uint64_t v) { gf.nodes_target = v; },
            "pick alpha so the deterministic graph has about this many nodes");
        cmd->add_option_function<std::uint64_t>(
            "--graph-n", [&](const std::uint64_t v) { gf.sample_n = v; },
            "sampled-degree node count for the host graph");
        cmd->add_option("--graph-edges", gf.edges_path, "edge-list file to load");
        cmd->add_option("--out", r_out, "write CSV here instead of stdout");
    };

    CLI::App* run = drs->add_subcommand("run", "one metrics row per seed");
    run->add_option("--protocol", r_protocol,
                    "baseline | mailing_list | word_of_mouth")->required();
    run->add_option("--scenario", r_scenario, "scenario file");
    add_drs_common(run);
    run->add_option("--sig-fraction", wb.sig_fraction,
                    "members as a share of graph nodes (builder, default 0.3)");
    run->add_option("--common-size", wb.common_size,
                    "common items for the built group (default 10)");
    run->add_option("--extras", wb.extras, "extra items per member (default 20)");
    run->add_option("--eta", wb.eta, "catalog size for the built group (default 1000)");
    run->add_option_function<double>(
        "--lambda", [&](const double v) { wb.lambda = v; },
        "coverage target for the built scenario (default: member share)");
    run->add_option("--log", r_log, "write the message log here (single seed)");

    CLI::App* compare = drs->add_subcommand(
        "compare", "measured means vs closed-form predictions");
    compare->add_option("--scenario", r_scenario, "scenario file")->required();
    compare->add_option("--protocols", r_protocols, "comma list of protocols")
        ->required();
    add_drs_common(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curve->parsed()) {
            if (th_p.empty()) throw usage_error("give --p or --p-grid");
            return cmd_theory_curve(th_beta, th_p, th_alpha, th_out);
        }
        if (critical->parsed()) return cmd_theory_critical(th_beta, th_alpha, th_out);

        const auto graph_n = [&] {
            return g_have_n ? std::optional<std::uint64_t>(g_n) : std::nullopt;
        };
        if (generate->parsed()) {
            return cmd_graph_generate(g_alpha, g_beta, graph_n(), g_seed, g_out);
        }
        if (percolate->parsed()) {
            return cmd_graph_percolate(g_alpha, g_beta, graph_n(), g_p,
                                       seed_list(g_have_seed, g_seed, g_seeds), g_out);
        }
        if (sweep->parsed()) {
            return cmd_graph_sweep(g_alpha, g_beta, graph_n(), g_pgrid,
                                   seed_list(g_have_seed, g_seed, g_seeds), g_out);
        }
        if (make_scn->parsed()) {
            return cmd_drs_make_scenario(ms_ell, ms_sig_size, ms_common, ms_extras,
                                         ms_eta, ms_mu, ms_lambda, ms_overlap,
                                         ms_seed, ms_out);
        }
        if (run->parsed()) {
            return cmd_drs_run(r_protocol, r_scenario,
                               seed_list(r_have_seed, r_seed, r_seeds), r_rounds,
                               r_forward, gf, wb, r_log, r_out);
        }
        if (compare->parsed()) {
            return cmd_drs_compare(r_scenario, r_protocols,
                                   seed_list(r_have_seed, r_seed, r_seeds), r_rounds,
                                   r_forward, gf, r_out);
        }
        std::fprintf(stderr, "error: no command selected\n");
        return 2;
    } catch (const usage_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const scenario_error& e) {
        std::fprintf(stderr, "scenario error: %s\n", e.what());
        return 4;
    } catch (const infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
