#include "drsim/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "drsim/kahan.hpp"
#include "drsim/zeta.hpp"

namespace drsim {
namespace {

// Hard cap on direct series loops. The geometric factor p^k collapses both
// series long before this for any failure rate below 1; the cap only guards
// pathological near-1 rates against unbounded loops at huge degree cutoffs.
constexpr std::uint64_t kSeriesCap = 10'000'000;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::uint64_t PowerLawParams::max_degree() const {
    const double v = std::floor(std::exp(alpha / beta));
    if (!(v >= 1.0)) return 1;
    if (v >= 9.0e18) return 9'000'000'000'000'000'000ULL;
    return static_cast<std::uint64_t>(v);
}

double PowerLawParams::expected_node_count(std::uint64_t k) const {
    return std::exp(alpha) * std::pow(static_cast<double>(k), -beta);
}

double PowerLawParams::expected_nodes() const {
    return std::exp(alpha) * truncated_zeta(beta, max_degree());
}

std::uint64_t PowerLawParams::total_nodes() const {
    const std::uint64_t kmax = max_degree();
    if (kmax > kSeriesCap) {
        throw std::length_error(
            "degree cutoff too large to enumerate a concrete graph");
    }
    std::uint64_t total = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        total += static_cast<std::uint64_t>(
            std::max<long long>(0, std::llround(expected_node_count(k))));
    }
    return total;
}

double chi(const PowerLawParams& params, double p) {
    if (p <= 0.0) return 0.0;
    const std::uint64_t kmax = params.max_degree();
    if (p >= 1.0) return truncated_zeta(params.beta, kmax);
    const std::uint64_t cap = std::min(kmax, kSeriesCap);
    KahanSum acc;
    double pk = 1.0;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        pk *= p;
        const double term = std::pow(static_cast<double>(k), -params.beta) * pk;
        acc.add(term);
        if (k > 8 && term < 1e-17 * std::max(acc.sum, 1e-300)) break;
    }
    return acc.sum;
}

double xi(const PowerLawParams& params, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    const std::uint64_t cap = std::min(params.max_degree(), kSeriesCap);
    KahanSum acc;
    double pk = 1.0;  // p^(k-1)
    for (std::uint64_t k = 1; k <= cap; ++k) {
        const double term =
            std::pow(static_cast<double>(k), 1.0 - params.beta) * (1.0 - p) * pk;
        acc.add(term);
        pk *= p;
        if (k > 8 && term < 1e-17 * std::max(acc.sum, 1e-300)) break;
    }
    return acc.sum;
}

std::pair<double, double> orphan_and_degree1_counts(const PowerLawParams& params,
                                                    double p) {
    const double scale = (1.0 - p) * std::exp(params.alpha);
    return {scale * chi(params, p), scale * xi(params, p)};
}

BetaPrimeResult beta_prime(const PowerLawParams& params, double p) {
    const bool truncated = params.beta <= 2.0;
    if (p >= 1.0) return {kInf, true, truncated};
    const double c = chi(params, p);
    const double x = xi(params, p);
    if (x <= 0.0) return {kInf, true, truncated};
    std::optional<double> bp;
    if (!truncated) {
        const double target = (riemann_zeta(params.beta) - c) / x;
        bp = try_inverse_zeta(target);
    } else {
        const std::uint64_t kmax = params.max_degree();
        const double target = (truncated_zeta(params.beta, kmax) - c) / x;
        bp = try_inverse_truncated_zeta(target, kmax);
    }
    // No admissible solution, or one below the original slope beyond numeric
    // slack, means the defining equation has left the physical branch: the
    // subgraph no longer looks power-law and is treated as past critical.
    if (!bp || *bp < params.beta - 1e-6) return {kInf, true, truncated};
    return {std::max(*bp, params.beta), false, truncated};
}

double critical_failure_rate(const PowerLawParams& params) {
    if (params.beta >= kBetaGiantThreshold) return 0.0;
    const auto crossed = [&](double p) {
        const BetaPrimeResult r = beta_prime(params, p);
        return r.supercritical || r.value >= kBetaGiantThreshold;
    };
    if (!crossed(1.0)) return 1.0;
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-7) {
        const double mid = 0.5 * (lo + hi);
        if (crossed(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double alpha_prime(double survivor_nonorphan_count, double beta_prime_value) {
    if (!(survivor_nonorphan_count > 0.0)) {
        throw std::domain_error("alpha_prime requires a positive node count");
    }
    return std::log(survivor_nonorphan_count / riemann_zeta(beta_prime_value));
}

SubgraphTheoryReport subgraph_report(const PowerLawParams& params, double p) {
    SubgraphTheoryReport r;
    r.p = p;
    r.chi = chi(params, p);
    r.xi = xi(params, p);
    const double scale = (1.0 - p) * std::exp(params.alpha);
    r.orphan_count = scale * r.chi;
    r.degree1_count = scale * r.xi;
    const BetaPrimeResult bp = beta_prime(params, p);
    r.beta_prime = bp.value;
    r.supercritical = bp.supercritical;
    r.truncated = bp.truncated;
    const double zt = truncated_zeta(params.beta, params.max_degree());
    r.survivor_fraction = 1.0 - p;
    r.orphan_fraction_survivors = r.chi / zt;
    r.degree1_fraction_survivors = r.xi / zt;
    r.nonorphan_fraction = (1.0 - p) * (1.0 - r.chi / zt);
    r.critical = bp.supercritical || bp.value >= kBetaGiantThreshold;
    return r;
}

std::vector<std::pair<double, double>> figure_curve(const PowerLawParams& params,
                                                    const std::vector<double>& p_grid) {
    const double zt = truncated_zeta(params.beta, params.max_degree());
    std::vector<std::pair<double, double>> out;
    out.reserve(p_grid.size());
    for (const double p : p_grid) {
        out.emplace_back(p, (1.0 - p) * (1.0 - chi(params, p) / zt));
    }
    return out;
}

double alpha_for_nodes(double beta, double target_nodes) {
    if (!(beta > 0.0)) throw std::domain_error("power-law slope must be positive");
    if (!(target_nodes >= 1.0)) {
        throw std::domain_error("target node count must be at least 1");
    }
    double a = beta > 1.0 + 1e-9 ? std::log(target_nodes / riemann_zeta(beta))
                                 : std::log(target_nodes);
    for (int i = 0; i < 40; ++i) {
        const double km = std::floor(std::exp(a / beta));
        std::uint64_t kmax = 1;
        if (km >= 9.0e18) {
            kmax = 9'000'000'000'000'000'000ULL;
        } else if (km >= 1.0) {
            kmax = static_cast<std::uint64_t>(km);
        }
        a = std::log(target_nodes / truncated_zeta(beta, kmax));
    }
    return a;
}

}  // namespace drsim
