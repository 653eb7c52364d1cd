#pragma once
// Closed-form complexity estimates for the three protocols, in the same
// units as SimMetrics where a closed form exists.

#include <cstdint>
#include <optional>
#include <vector>

#include "drsim/graph.hpp"
#include "drsim/protocols.hpp"
#include "drsim/scenario.hpp"

namespace drsim {

struct ComplexityPrediction {
    ProtocolKind model = ProtocolKind::baseline;
    double samples = 0.0;
    std::optional<double> messages;  // unset where no closed/structural form exists
    std::optional<double> spam;
};

// samples = 2 ell (eta / min|P(S)| + mu ln max|S|); messages is half of that
// (communication happens on alternate rounds); spam is the floor
// ell * eta / min|P(S)| (every request made while targets are still searching).
ComplexityPrediction predict_baseline(const Scenario& scenario);

// With B_i = |S_i| * avg_{u in S_i}|P(u)| / |P(S_i)| and B = avg_i B_i:
// samples = ell (eta / min|P(S)| + B), messages = ell * B,
// spam = messages - ell (all broadcast traffic except one useful item per group).
ComplexityPrediction predict_mailing_list(const Scenario& scenario);

// samples = ell (eta / min|P(S)| + (1+gamma) * B); gamma is the member set's
// expansion coefficient. messages, when graph and placement are given, is the
// structural bound: collapsed edges inside each member set plus its boundary
// edges, summed over groups. No closed form exists for spam.
ComplexityPrediction predict_word_of_mouth(
    const Scenario& scenario, double gamma, const Graph* graph = nullptr,
    const std::vector<std::uint32_t>* placement = nullptr);

}  // namespace drsim
