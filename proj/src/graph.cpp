#include "drsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "drsim/rng.hpp"

namespace drsim {
namespace {

// Size guards: keep accidental planet-scale parameters from exhausting memory.
constexpr std::uint64_t kNodeGuard = 50'000'000;
constexpr std::uint64_t kStubGuard = 200'000'000;
constexpr std::uint64_t kWeightGuard = 5'000'000;

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::uint32_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];  // path halving
            x = parent[x];
        }
        return x;
    }
    void merge(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

// Alive-degree per node over collapsed alive-alive edges; dead nodes get 0.
std::vector<std::uint32_t> alive_simple_degrees(const Graph& graph,
                                                const SimpleAdjacency& adj) {
    std::vector<std::uint32_t> deg(graph.node_count, 0);
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        if (!graph.alive[u]) continue;
        std::uint32_t d = 0;
        for (const std::uint32_t* it = adj.begin(u); it != adj.end(u); ++it) {
            d += graph.alive[*it] ? 1u : 0u;
        }
        deg[u] = d;
    }
    return deg;
}

std::vector<std::uint64_t> alive_component_sizes(const Graph& graph,
                                                 const SimpleAdjacency& adj) {
    UnionFind uf(graph.node_count);
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        if (!graph.alive[u]) continue;
        for (const std::uint32_t* it = adj.begin(u); it != adj.end(u); ++it) {
            if (*it > u && graph.alive[*it]) uf.merge(u, *it);
        }
    }
    std::vector<std::uint64_t> count(graph.node_count, 0);
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        if (graph.alive[u]) ++count[uf.find(u)];
    }
    std::vector<std::uint64_t> sizes;
    for (std::uint64_t c : count) {
        if (c > 0) sizes.push_back(c);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

}  // namespace

std::vector<std::uint32_t> realize_degree_sequence(
    const PowerLawParams& params, std::optional<std::uint64_t> sample_count,
    std::mt19937_64& rng) {
    const std::uint64_t kmax = params.max_degree();
    std::vector<std::uint32_t> degrees;

    if (!sample_count) {
        if (kmax > kWeightGuard) {
            throw infeasible_error(
                "degree cutoff too large for a deterministic realization");
        }
        std::uint64_t total = 0;
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            total += static_cast<std::uint64_t>(
                std::max<long long>(0, std::llround(params.expected_node_count(k))));
        }
        if (total == 0) {
            throw infeasible_error("degree sequence is empty (all counts round to zero)");
        }
        if (total > kNodeGuard) {
            throw infeasible_error("deterministic realization exceeds the node guard");
        }
        degrees.reserve(total);
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            const long long c = std::llround(params.expected_node_count(k));
            for (long long i = 0; i < c; ++i) {
                degrees.push_back(static_cast<std::uint32_t>(k));
            }
        }
    } else {
        const std::uint64_t n = *sample_count;
        if (n == 0) throw infeasible_error("sampled realization needs n >= 1");
        if (n > kNodeGuard) throw infeasible_error("sample size exceeds the node guard");
        if (kmax > kWeightGuard) {
            throw infeasible_error("degree cutoff too large for a sampled realization");
        }
        std::vector<double> weights(kmax);
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            weights[k - 1] = std::pow(static_cast<double>(k), -params.beta);
        }
        DiscreteSampler sampler(weights);
        degrees.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            degrees.push_back(static_cast<std::uint32_t>(sampler.sample(rng) + 1));
        }
    }

    std::uint64_t stubs = 0;
    for (const std::uint32_t d : degrees) stubs += d;
    if (stubs == 1) {
        throw infeasible_error("a single total stub cannot be paired");
    }
    if (stubs % 2 == 1) {
        const std::uint32_t min_deg = *std::min_element(degrees.begin(), degrees.end());
        std::vector<std::uint64_t> candidates;
        for (std::uint64_t i = 0; i < degrees.size(); ++i) {
            if (degrees[i] == min_deg) candidates.push_back(i);
        }
        const std::uint64_t pick = uniform_below(rng, candidates.size());
        ++degrees[candidates[pick]];
    }
    return degrees;
}

Graph configuration_model(const std::vector<std::uint32_t>& degrees,
                          std::mt19937_64& rng) {
    std::uint64_t total = 0;
    for (const std::uint32_t d : degrees) total += d;
    if (total % 2 != 0) {
        throw std::invalid_argument("stub total is odd; degree sequence has no matching");
    }
    if (total > kStubGuard) {
        throw infeasible_error("stub total exceeds the size guard");
    }
    if (degrees.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw infeasible_error("node count exceeds 32-bit id space");
    }

    Graph g;
    g.node_count = static_cast<std::uint32_t>(degrees.size());
    g.degree = degrees;
    g.alive.assign(degrees.size(), 1);

    std::vector<std::uint32_t> stubs;
    stubs.reserve(total);
    for (std::uint32_t u = 0; u < g.node_count; ++u) {
        for (std::uint32_t i = 0; i < degrees[u]; ++i) stubs.push_back(u);
    }
    shuffle_vector(stubs, rng);

    const std::uint64_t edges = total / 2;
    g.edge_u.reserve(edges);
    g.edge_v.reserve(edges);
    for (std::uint64_t i = 0; i < edges; ++i) {
        g.edge_u.push_back(stubs[2 * i]);
        g.edge_v.push_back(stubs[2 * i + 1]);
    }
    return g;
}

SimpleAdjacency simple_neighbors(const Graph& graph) {
    std::vector<std::uint64_t> keys;
    keys.reserve(2 * graph.edge_count());
    const std::uint64_t n = graph.node_count;
    for (std::uint64_t i = 0; i < graph.edge_count(); ++i) {
        const std::uint32_t u = graph.edge_u[i];
        const std::uint32_t v = graph.edge_v[i];
        if (u == v) continue;
        keys.push_back(static_cast<std::uint64_t>(u) * n + v);
        keys.push_back(static_cast<std::uint64_t>(v) * n + u);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    SimpleAdjacency adj;
    adj.offset.assign(graph.node_count + 1, 0);
    adj.nbr.reserve(keys.size());
    for (const std::uint64_t key : keys) {
        const std::uint32_t u = static_cast<std::uint32_t>(key / n);
        adj.nbr.push_back(static_cast<std::uint32_t>(key % n));
        ++adj.offset[u + 1];
    }
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        adj.offset[u + 1] += adj.offset[u];
    }
    return adj;
}

GraphStats graph_stats(const Graph& graph) {
    GraphStats s;
    std::vector<std::uint8_t> has_loop(graph.node_count, 0);
    std::vector<std::uint64_t> keys;
    keys.reserve(graph.edge_count());
    const std::uint64_t n = graph.node_count;
    for (std::uint64_t i = 0; i < graph.edge_count(); ++i) {
        const std::uint32_t u = graph.edge_u[i];
        const std::uint32_t v = graph.edge_v[i];
        if (u == v) {
            ++s.self_loops;
            has_loop[u] = 1;
        }
        const std::uint64_t lo = std::min(u, v);
        const std::uint64_t hi = std::max(u, v);
        keys.push_back(lo * n + hi);
    }
    std::sort(keys.begin(), keys.end());
    const auto unique_end = std::unique(keys.begin(), keys.end());
    s.parallel_edges =
        keys.size() - static_cast<std::uint64_t>(unique_end - keys.begin());
    for (const std::uint8_t f : has_loop) s.nodes_with_self_loop += f;
    return s;
}

void fail_uniform(Graph& graph, double p, std::mt19937_64& rng) {
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        graph.alive[u] = uniform01(rng) >= p ? 1 : 0;
    }
}

std::vector<std::uint64_t> components(const Graph& graph) {
    return alive_component_sizes(graph, simple_neighbors(graph));
}

DegreeHistogram alive_degree_histogram(const Graph& graph) {
    const SimpleAdjacency adj = simple_neighbors(graph);
    const std::vector<std::uint32_t> deg = alive_simple_degrees(graph, adj);
    DegreeHistogram hist;
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        if (!graph.alive[u]) continue;
        if (deg[u] >= hist.size()) hist.resize(deg[u] + 1, 0);
        ++hist[deg[u]];
    }
    return hist;
}

PercolationReport percolate_report(Graph& graph, double p, std::mt19937_64& rng,
                                   std::uint64_t seed_label) {
    return percolate_report(graph, simple_neighbors(graph), p, rng, seed_label);
}

PercolationReport percolate_report(Graph& graph, const SimpleAdjacency& adj,
                                   double p, std::mt19937_64& rng,
                                   std::uint64_t seed_label) {
    fail_uniform(graph, p, rng);
    const std::vector<std::uint32_t> deg = alive_simple_degrees(graph, adj);

    PercolationReport r;
    r.p = p;
    r.seed = seed_label;
    DegreeHistogram hist;
    for (std::uint32_t u = 0; u < graph.node_count; ++u) {
        if (!graph.alive[u]) continue;
        ++r.survivors;
        if (deg[u] == 0) ++r.orphans;
        if (deg[u] == 1) ++r.degree1;
        if (deg[u] >= hist.size()) hist.resize(deg[u] + 1, 0);
        ++hist[deg[u]];
    }
    const std::vector<std::uint64_t> sizes = alive_component_sizes(graph, adj);
    r.largest_component = sizes.empty() ? 0 : sizes.front();
    r.largest_fraction_of_survivors =
        r.survivors == 0 ? 0.0
                         : static_cast<double>(r.largest_component) /
                               static_cast<double>(r.survivors);
    try {
        r.fitted_beta = fit_power_law_slope(hist);
    } catch (const insufficient_data_error&) {
        r.fitted_beta = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

double fit_power_law_slope(const DegreeHistogram& hist, std::uint32_t kmin,
                           std::uint32_t kmax_fit) {
    std::vector<double> xs;
    std::vector<double> ys;
    const std::uint32_t hi =
        hist.empty() ? 0
                     : std::min<std::uint32_t>(
                           kmax_fit, static_cast<std::uint32_t>(hist.size() - 1));
    for (std::uint32_t k = std::max<std::uint32_t>(kmin, 1); k <= hi; ++k) {
        if (hist[k] == 0) continue;
        xs.push_back(std::log(static_cast<double>(k)));
        ys.push_back(std::log(static_cast<double>(hist[k])));
    }
    if (xs.size() < 2) {
        throw insufficient_data_error(
            "slope fit needs at least two nonzero degree bins in range");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return -sxy / sxx;
}

double expansion_boundary(const Graph& graph,
                          const std::vector<std::uint32_t>& node_set) {
    if (node_set.empty()) {
        throw std::invalid_argument("expansion requires a nonempty node set");
    }
    std::vector<std::uint8_t> in_set(graph.node_count, 0);
    for (const std::uint32_t u : node_set) {
        if (u >= graph.node_count || !graph.alive[u]) {
            throw std::invalid_argument("expansion set must contain alive nodes");
        }
        in_set[u] = 1;
    }
    const SimpleAdjacency adj = simple_neighbors(graph);
    std::vector<std::uint8_t> seen(graph.node_count, 0);
    std::uint64_t boundary = 0;
    for (const std::uint32_t u : node_set) {
        for (const std::uint32_t* it = adj.begin(u); it != adj.end(u); ++it) {
            const std::uint32_t v = *it;
            if (!in_set[v] && graph.alive[v] && !seen[v]) {
                seen[v] = 1;
                ++boundary;
            }
        }
    }
    return static_cast<double>(boundary) / static_cast<double>(node_set.size());
}

std::string edge_list_text(const Graph& graph, std::uint64_t seed, double alpha,
                           double beta) {
    char header[160];
    std::snprintf(header, sizeof(header), "# nodes=%u seed=%llu alpha=%.15g beta=%.15g\n",
                  graph.node_count, static_cast<unsigned long long>(seed), alpha, beta);
    std::string out = header;
    out.reserve(out.size() + 16 * graph.edge_count());
    char line[48];
    for (std::uint64_t i = 0; i < graph.edge_count(); ++i) {
        std::snprintf(line, sizeof(line), "%u %u\n", graph.edge_u[i], graph.edge_v[i]);
        out += line;
    }
    return out;
}

Graph parse_edge_list(std::istream& in) {
    Graph g;
    std::uint64_t header_nodes = 0;
    bool have_header = false;
    std::uint32_t max_id = 0;
    bool any_edge = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::size_t pos = line.find("nodes=");
            if (pos != std::string::npos) {
                header_nodes = std::strtoull(line.c_str() + pos + 6, nullptr, 10);
                have_header = true;
            }
            continue;
        }
        std::istringstream ls(line);
        std::uint64_t u = 0, v = 0;
        if (!(ls >> u >> v)) {
            throw infeasible_error("malformed edge-list line: " + line);
        }
        if (u > std::numeric_limits<std::uint32_t>::max() ||
            v > std::numeric_limits<std::uint32_t>::max()) {
            throw infeasible_error("edge-list node id exceeds 32-bit id space");
        }
        g.edge_u.push_back(static_cast<std::uint32_t>(u));
        g.edge_v.push_back(static_cast<std::uint32_t>(v));
        max_id = std::max({max_id, static_cast<std::uint32_t>(u),
                           static_cast<std::uint32_t>(v)});
        any_edge = true;
    }
    const std::uint64_t n = have_header
                                ? header_nodes
                                : (any_edge ? static_cast<std::uint64_t>(max_id) + 1 : 0);
    if (n == 0) throw infeasible_error("edge list holds no nodes");
    if (any_edge && max_id >= n) {
        throw infeasible_error("edge list references a node beyond the declared count");
    }
    g.node_count = static_cast<std::uint32_t>(n);
    g.degree.assign(g.node_count, 0);
    g.alive.assign(g.node_count, 1);
    for (std::uint64_t i = 0; i < g.edge_count(); ++i) {
        if (g.edge_u[i] == g.edge_v[i]) {
            g.degree[g.edge_u[i]] += 2;
        } else {
            g.degree[g.edge_u[i]] += 1;
            g.degree[g.edge_v[i]] += 1;
        }
    }
    return g;
}

}  // namespace drsim
