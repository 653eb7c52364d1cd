#pragma once
// Analytical model of random node failure on power-law graphs: the chi/xi
// series, orphan and degree-1 counts, the surviving-subgraph slope, its
// critical failure rate, and the failure-vs-survival curve family.

#include <cstdint>
#include <utility>
#include <vector>

namespace drsim {

// Slope threshold beyond which a min-degree-1 power-law graph has no giant
// component. Fixed model constant, never recomputed.
inline constexpr double kBetaGiantThreshold = 3.47875;

// (alpha, beta) parametrization: the expected number of degree-k nodes is
// e^alpha / k^beta for k in [1, max_degree], with max_degree = floor(e^(alpha/beta)).
struct PowerLawParams {
    double alpha = 0.0;  // log-scale size parameter, >= 0
    double beta = 1.0;   // power-law slope, > 1 for the infinite-sum regime

    std::uint64_t max_degree() const;
    double expected_node_count(std::uint64_t k) const;  // e^alpha * k^(-beta)
    double expected_nodes() const;   // e^alpha * truncated_zeta(beta, max_degree)
    std::uint64_t total_nodes() const;  // sum of rounded per-degree counts
};

struct BetaPrimeResult {
    double value = 0.0;        // +infinity when supercritical
    bool supercritical = false;
    bool truncated = false;    // beta <= 2: all sums truncated at max_degree
};

// Everything the theory predicts about the subgraph surviving failure rate p.
struct SubgraphTheoryReport {
    double p = 0.0;
    double chi = 0.0;
    double xi = 0.0;
    double orphan_count = 0.0;    // expected survivors with zero live neighbors
    double degree1_count = 0.0;   // expected survivors with exactly one live neighbor
    double beta_prime = 0.0;      // +infinity when supercritical
    bool supercritical = false;
    bool truncated = false;
    double survivor_fraction = 0.0;            // 1 - p
    double orphan_fraction_survivors = 0.0;    // chi / truncated_zeta
    double degree1_fraction_survivors = 0.0;   // xi / truncated_zeta
    double nonorphan_fraction = 0.0;           // (1-p) * (1 - chi/truncated_zeta)
    bool critical = false;                     // beta_prime >= kBetaGiantThreshold
};

// chi(p) = sum_{k=1..max_degree} k^(-beta) p^k. Monotone in p; chi(0) = 0.
double chi(const PowerLawParams& params, double p);

// xi(p) = sum_{k=1..max_degree} k^(1-beta) (1-p) p^(k-1). xi(0) = 1, xi(1) = 0.
double xi(const PowerLawParams& params, double p);

// ((1-p) e^alpha chi, (1-p) e^alpha xi): expected orphan and degree-1 counts.
std::pair<double, double> orphan_and_degree1_counts(const PowerLawParams& params,
                                                    double p);

// Slope of the surviving subgraph's degree distribution. For beta > 2 the
// defining equation uses the full zeta; for beta <= 2 every sum (including
// the outer inversion) is truncated at max_degree so the p = 0 identity holds.
BetaPrimeResult beta_prime(const PowerLawParams& params, double p);

// Smallest failure rate at which the subgraph slope reaches the giant-component
// threshold: 0 if beta is already past the threshold, 1 if it is never reached.
// Bisection to |dp| <= 1e-7.
double critical_failure_rate(const PowerLawParams& params);

// Size parameter of the surviving non-orphan subgraph: the alpha' for which
// e^alpha' * zeta(beta') equals the given count.
double alpha_prime(double survivor_nonorphan_count, double beta_prime_value);

// All theory quantities at a single failure rate.
SubgraphTheoryReport subgraph_report(const PowerLawParams& params, double p);

// (p, nonorphan_fraction) curve: the fraction of ORIGINAL nodes that survive
// with at least one live neighbor, per failure rate.
std::vector<std::pair<double, double>> figure_curve(const PowerLawParams& params,
                                                    const std::vector<double>& p_grid);

// The alpha for which the deterministic realization holds ~target_nodes nodes
// (fixed-point of alpha = ln(n / truncated_zeta(beta, e^(alpha/beta)))).
double alpha_for_nodes(double beta, double target_nodes);

}  // namespace drsim
