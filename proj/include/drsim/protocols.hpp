#pragma once
// Discrete-round simulators for three recommendation-spreading protocols:
//  - baseline: agents alternate catalog sampling with asking random peers,
//  - mailing_list: SIG cliques with broadcast of liked items,
//  - word_of_mouth: liked items flood across a host graph's edges.
// All runs are synchronous, single-threaded, and deterministic per seed.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drsim/graph.hpp"
#include "drsim/scenario.hpp"

namespace drsim {

enum class ProtocolKind { baseline, mailing_list, word_of_mouth };

const char* protocol_name(ProtocolKind kind);
std::optional<ProtocolKind> protocol_from_name(const std::string& name);

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::baseline;
    // Chance an uninterested word-of-mouth recipient forwards anyway.
    // 0 means propagation strictly through interested agents (no RNG drawn).
    double forward_prob_uninterested = 0.0;
    std::uint32_t max_rounds = 1;
    std::uint64_t seed = 0;  // recorded in outputs; the RNG is passed separately
};

struct SimMetrics {
    std::uint64_t samples_random = 0;       // tests of uniformly drawn items
    std::uint64_t samples_recommended = 0;  // tests triggered by a delivery/reply
    std::uint64_t messages = 0;             // point-to-point deliveries + requests
    std::uint64_t spam = 0;                 // deliveries the recipient has no use for
    std::uint64_t satisfied_users = 0;
    double satisfied_sig_fraction = 0.0;    // satisfied share of SIG-member users
    std::uint32_t rounds = 0;
    std::uint64_t trace_length = 0;  // pooled member samples until each group's
                                     // common set is first hit, summed over groups
    bool capped = false;             // hit max_rounds before the coverage target
};

// One delivered item (message-log row). Baseline query requests carry no item
// and are not logged; query replies are.
struct MessageRecord {
    std::uint32_t round = 0;
    std::uint32_t sender = 0;
    std::uint32_t receiver = 0;
    std::uint32_t item = 0;
    bool liked = false;
};

// Connectivity of a SIG's member set placed on a host graph.
struct SigConnectivity {
    double largest_component_fraction = 0.0;  // of |members|, member-induced subgraph
    double orphan_fraction = 0.0;             // members with no member neighbor
    double gamma = 0.0;                       // expansion of the member set in the graph
};

// Alternating sample/query protocol. Odd rounds: every unsatisfied agent
// tests one uniform catalog item (with replacement). Even rounds: every
// unsatisfied agent asks one uniform agent (self included) for a
// recommendation; the target replies with a uniform item it has liked so far
// (or nothing), and the asker tests the reply. A request to an unsatisfied
// target counts as spam. Stops once the satisfied fraction reaches
// lambda_target, else at max_rounds (capped).
SimMetrics run_baseline(const Scenario& scenario, const ProtocolConfig& config,
                        std::mt19937_64& rng,
                        std::vector<MessageRecord>* log = nullptr);

// SIG-clique broadcast protocol. Each round: (1) agents test items delivered
// last round (received items are never re-broadcast); (2) every agent with an
// unserved SIG tests one uniform untested item, and a liked sample is queued
// for broadcast; (3) queued items go once to the union of the sender's clique
// neighbors, skipping recipients that already received or tested the item;
// each actual delivery counts one message, and one spam when the recipient
// does not care for the item. A group counts served once a member broadcasts
// an item from its common set. Stops when the satisfied fraction reaches
// lambda_target and no deliveries are pending, else at max_rounds (capped;
// pending deliveries are still tested).
SimMetrics run_mailing_list(const Scenario& scenario, const ProtocolConfig& config,
                            std::mt19937_64& rng,
                            std::vector<MessageRecord>* log = nullptr);

// Flooding protocol on a host graph. placement[u] is the graph node of user
// u (a bijection onto alive nodes). Each round: (1) agents test items
// delivered last round; an agent that likes a tested item sends it once over
// every incident collapsed edge, and an uninterested recipient forwards with
// probability forward_prob_uninterested; (2) unsatisfied agents test one
// uniform untested item, liked samples are sent the same way. Every edge
// delivery counts one message (and spam when unwanted); an item is queued for
// testing only the first time it reaches an agent. Stops like mailing_list.
// Throws std::invalid_argument when placement is not a bijection of users
// onto alive nodes.
SimMetrics run_word_of_mouth(const Scenario& scenario, const Graph& graph,
                             const std::vector<std::uint32_t>& placement,
                             const ProtocolConfig& config, std::mt19937_64& rng,
                             std::vector<MessageRecord>* log = nullptr);

// Largest-component / orphan share of the member-induced subgraph plus the
// member set's expansion coefficient in the full graph.
SigConnectivity measure_sig_connectivity(const Graph& graph, const SIGSpec& sig,
                                         const std::vector<std::uint32_t>& placement);

}  // namespace drsim
