#pragma once
// Configuration-model multigraphs, uniform node failure, component / orphan /
// degree-histogram measurement, slope fitting, and boundary expansion.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "drsim/powerlaw.hpp"

namespace drsim {

// Raised when requested parameters cannot produce a usable graph or scenario
// (empty realization, single stub, size guards, unreachable coverage).
class infeasible_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raised by measurements that need more data than the input holds.
class insufficient_data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Undirected multigraph in edge-list form. Self-loops are edges with
// edge_u == edge_v and contribute 2 to their node's degree.
struct Graph {
    std::uint32_t node_count = 0;
    std::vector<std::uint32_t> edge_u;
    std::vector<std::uint32_t> edge_v;
    std::vector<std::uint32_t> degree;  // multigraph degree per node
    std::vector<std::uint8_t> alive;    // survival flags, 1 = alive

    std::uint64_t edge_count() const { return edge_u.size(); }
};

// Collapsed neighbor sets: parallel edges merged, self-loops dropped.
// CSR layout; neighbors of u are nbr[offset[u]..offset[u+1]), sorted ascending.
struct SimpleAdjacency {
    std::vector<std::size_t> offset;
    std::vector<std::uint32_t> nbr;

    std::size_t degree(std::uint32_t u) const { return offset[u + 1] - offset[u]; }
    const std::uint32_t* begin(std::uint32_t u) const { return nbr.data() + offset[u]; }
    const std::uint32_t* end(std::uint32_t u) const { return nbr.data() + offset[u + 1]; }
};

// Degree histogram: index = degree, value = node count.
using DegreeHistogram = std::vector<std::uint64_t>;

struct GraphStats {
    std::uint64_t self_loops = 0;        // edges with both stubs on one node
    std::uint64_t parallel_edges = 0;    // edges beyond the first per node pair
    std::uint64_t nodes_with_self_loop = 0;
};

struct PercolationReport {
    double p = 0.0;
    std::uint64_t survivors = 0;
    std::uint64_t orphans = 0;   // alive nodes with zero alive neighbors
    std::uint64_t degree1 = 0;   // alive nodes with exactly one alive neighbor
    std::uint64_t largest_component = 0;
    double largest_fraction_of_survivors = 0.0;  // 0 when there are no survivors
    double fitted_beta = 0.0;  // NaN when fewer than two usable histogram bins
    std::uint64_t seed = 0;
};

// Degree sequence from the (alpha, beta) law. Without sample_count, emits
// round(e^alpha / k^beta) nodes of each degree k = 1..max_degree; with it,
// draws that many i.i.d. degrees from the normalized law on [1, max_degree].
// Odd stub totals get one extra stub on a uniformly chosen minimum-degree
// node. Throws infeasible_error on an empty sequence, a single total stub,
// or a deterministic realization beyond the node-count guard.
std::vector<std::uint32_t> realize_degree_sequence(
    const PowerLawParams& params, std::optional<std::uint64_t> sample_count,
    std::mt19937_64& rng);

// Uniform stub matching. Degree multiset of the result equals the input
// exactly. Throws std::invalid_argument when the stub total is odd.
Graph configuration_model(const std::vector<std::uint32_t>& degrees,
                          std::mt19937_64& rng);

SimpleAdjacency simple_neighbors(const Graph& graph);

GraphStats graph_stats(const Graph& graph);

// Marks each node dead independently with probability p (exactly one RNG draw
// per node regardless of p, so streams stay aligned across p values).
void fail_uniform(Graph& graph, double p, std::mt19937_64& rng);

// Component sizes over alive nodes and alive-alive collapsed edges,
// sorted descending. Isolated alive nodes count as size-1 components.
std::vector<std::uint64_t> components(const Graph& graph);

// Applies fail_uniform, then measures survivors / orphans / degree-1 nodes /
// largest component / fitted slope on the collapsed alive subgraph.
PercolationReport percolate_report(Graph& graph, double p, std::mt19937_64& rng,
                                   std::uint64_t seed_label = 0);

// Same measurement with a caller-supplied collapsed adjacency (must match
// graph), so p-sweeps avoid rebuilding it at every grid point.
PercolationReport percolate_report(Graph& graph, const SimpleAdjacency& adj,
                                   double p, std::mt19937_64& rng,
                                   std::uint64_t seed_label = 0);

// Alive-degree histogram of alive nodes over collapsed alive-alive edges.
DegreeHistogram alive_degree_histogram(const Graph& graph);

// Least-squares slope of log(count) vs log(k) over nonzero bins within
// [kmin, kmax_fit], returned as a positive estimate of beta.
// Throws insufficient_data_error with fewer than two usable bins.
double fit_power_law_slope(const DegreeHistogram& hist, std::uint32_t kmin = 1,
                           std::uint32_t kmax_fit = 10);

// Expansion coefficient: |alive nodes outside node_set adjacent to node_set|
// divided by |node_set|. Throws std::invalid_argument on an empty set or a
// set containing dead or out-of-range nodes.
double expansion_boundary(const Graph& graph,
                          const std::vector<std::uint32_t>& node_set);

// Edge-list text: "# nodes=N seed=S alpha=A beta=B" header then one "u v"
// line per edge (self-loops as "u u").
std::string edge_list_text(const Graph& graph, std::uint64_t seed, double alpha,
                           double beta);

// Parses the edge-list format above. Ignores blank lines; reads node count
// from the header when present, else from the largest id seen.
Graph parse_edge_list(std::istream& in);

}  // namespace drsim
