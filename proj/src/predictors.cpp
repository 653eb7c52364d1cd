#include "drsim/predictors.hpp"

#include <cmath>
#include <stdexcept>

namespace drsim {
namespace {

struct ScenarioTerms {
    double ell;
    double eta_over_min_common;  // eta / min_i |P(S_i)|
    double avg_broadcast;        // avg_i |S_i| * avg_{u in S_i}|P(u)| / |P(S_i)|
    double max_members;
};

ScenarioTerms scenario_terms(const Scenario& s) {
    if (s.sigs.empty()) {
        throw std::invalid_argument("complexity prediction needs at least one group");
    }
    std::size_t min_common = 0;
    std::size_t max_members = 0;
    double sum_b = 0.0;
    for (const SIGSpec& sig : s.sigs) {
        if (sig.common_items.empty() || sig.members.empty()) {
            throw std::invalid_argument("groups need members and a common set");
        }
        min_common = min_common == 0 ? sig.common_items.size()
                                     : std::min(min_common, sig.common_items.size());
        max_members = std::max(max_members, sig.members.size());
        double sum_pu = 0.0;
        for (const std::uint32_t u : sig.members) {
            sum_pu += static_cast<double>(s.user_interests[u].size());
        }
        const double avg_pu = sum_pu / static_cast<double>(sig.members.size());
        sum_b += static_cast<double>(sig.members.size()) * avg_pu /
                 static_cast<double>(sig.common_items.size());
    }
    ScenarioTerms t;
    t.ell = static_cast<double>(s.sigs.size());
    t.eta_over_min_common = static_cast<double>(s.eta) / static_cast<double>(min_common);
    t.avg_broadcast = sum_b / t.ell;
    t.max_members = static_cast<double>(max_members);
    return t;
}

}  // namespace

ComplexityPrediction predict_baseline(const Scenario& s) {
    const ScenarioTerms t = scenario_terms(s);
    ComplexityPrediction p;
    p.model = ProtocolKind::baseline;
    const double per_phase =
        t.ell * (t.eta_over_min_common +
                 static_cast<double>(s.mu) * std::log(t.max_members));
    p.samples = 2.0 * per_phase;
    p.messages = per_phase;
    p.spam = t.ell * t.eta_over_min_common;
    return p;
}

ComplexityPrediction predict_mailing_list(const Scenario& s) {
    const ScenarioTerms t = scenario_terms(s);
    ComplexityPrediction p;
    p.model = ProtocolKind::mailing_list;
    p.samples = t.ell * (t.eta_over_min_common + (1.0 + 0.0) * t.avg_broadcast);
    p.messages = t.ell * t.avg_broadcast;
    p.spam = *p.messages - t.ell;
    return p;
}

ComplexityPrediction predict_word_of_mouth(const Scenario& s, double gamma,
                                           const Graph* graph,
                                           const std::vector<std::uint32_t>* placement) {
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    const ScenarioTerms t = scenario_terms(s);
    ComplexityPrediction p;
    p.model = ProtocolKind::word_of_mouth;
    p.samples = t.ell * (t.eta_over_min_common + (1.0 + gamma) * t.avg_broadcast);
    if (graph != nullptr && placement != nullptr) {
        const SimpleAdjacency adj = simple_neighbors(*graph);
        double bound = 0.0;
        for (const SIGSpec& sig : s.sigs) {
            std::vector<std::uint8_t> in_set(graph->node_count, 0);
            for (const std::uint32_t u : sig.members) {
                if (u >= placement->size() || (*placement)[u] >= graph->node_count) {
                    throw std::invalid_argument("placement mismatch in message bound");
                }
                in_set[(*placement)[u]] = 1;
            }
            std::uint64_t inside_twice = 0;  // member-member edges, both directions
            std::uint64_t boundary = 0;      // member-outside edges
            for (std::uint32_t v = 0; v < graph->node_count; ++v) {
                if (!in_set[v]) continue;
                for (const std::uint32_t* it = adj.begin(v); it != adj.end(v); ++it) {
                    if (in_set[*it]) {
                        ++inside_twice;
                    } else {
                        ++boundary;
                    }
                }
            }
            bound += static_cast<double>(inside_twice / 2 + boundary);
        }
        p.messages = bound;
    }
    return p;
}

}  // namespace drsim
