#include "drsim/protocols.hpp"

#include <algorithm>
#include <numeric>

#include "drsim/rng.hpp"

namespace drsim {
namespace {

constexpr std::uint64_t kStateGuard = 400'000'000;  // mu * eta bitmap cells

// Shared per-run state used by all three protocols.
struct SimState {
    const Scenario& s;
    std::vector<std::uint8_t> interest;  // mu x eta: item in P(u)
    std::vector<std::uint8_t> tested;    // mu x eta
    std::vector<std::uint32_t> tested_count;
    std::vector<std::uint8_t> satisfied;
    std::uint64_t satisfied_count = 0;
    std::vector<std::vector<std::uint32_t>> memberships;  // user -> SIG indices
    std::vector<std::uint8_t> sig_member;                 // user in >= 1 SIG
    std::uint64_t covered_users = 0;
    std::vector<std::uint8_t> served;      // per SIG
    std::vector<std::uint8_t> trace_done;  // per SIG
    SimMetrics metrics;

    explicit SimState(const Scenario& scenario) : s(scenario) {
        const std::uint64_t cells =
            static_cast<std::uint64_t>(s.mu) * static_cast<std::uint64_t>(s.eta);
        if (s.mu == 0 || s.eta == 0 || cells > kStateGuard) {
            throw infeasible_error("scenario state exceeds the size guard");
        }
        interest.assign(cells, 0);
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            for (const std::uint32_t item : s.user_interests[u]) {
                interest[idx(u, item)] = 1;
            }
        }
        tested.assign(cells, 0);
        tested_count.assign(s.mu, 0);
        satisfied.assign(s.mu, 0);
        memberships.assign(s.mu, {});
        sig_member.assign(s.mu, 0);
        for (std::uint32_t i = 0; i < s.ell(); ++i) {
            for (const std::uint32_t u : s.sigs[i].members) {
                memberships[u].push_back(i);
                sig_member[u] = 1;
            }
        }
        for (const std::uint8_t c : sig_member) covered_users += c;
        served.assign(s.ell(), 0);
        trace_done.assign(s.ell(), 0);
    }

    std::size_t idx(std::uint32_t u, std::uint32_t item) const {
        return static_cast<std::size_t>(u) * s.eta + item;
    }
    bool likes(std::uint32_t u, std::uint32_t item) const {
        return interest[idx(u, item)] != 0;
    }

    void mark_satisfied(std::uint32_t u) {
        if (!satisfied[u]) {
            satisfied[u] = 1;
            ++satisfied_count;
        }
    }

    double satisfied_fraction() const {
        return static_cast<double>(satisfied_count) / s.mu;
    }

    // Tests an item once (callers guarantee it is untested in the memory-rule
    // protocols); returns whether the agent likes it.
    bool test(std::uint32_t u, std::uint32_t item, bool recommended) {
        if (!tested[idx(u, item)]) {
            tested[idx(u, item)] = 1;
            ++tested_count[u];
        }
        if (recommended) {
            ++metrics.samples_recommended;
        } else {
            ++metrics.samples_random;
        }
        const bool liked = likes(u, item);
        if (liked) mark_satisfied(u);
        return liked;
    }

    // Pooled discovery trace: a member's uniform sample extends the sample
    // sequence of each of its groups still searching; the sequence for a
    // group ends at the first sample inside its common set.
    void record_trace_sample(std::uint32_t u, std::uint32_t item) {
        for (const std::uint32_t sig : memberships[u]) {
            if (trace_done[sig]) continue;
            ++metrics.trace_length;
            const auto& common = s.sigs[sig].common_items;
            if (std::binary_search(common.begin(), common.end(), item)) {
                trace_done[sig] = 1;
            }
        }
    }

    // Uniform untested item via rejection; false when everything was tested.
    bool draw_untested(std::uint32_t u, std::mt19937_64& rng, std::uint32_t* out) {
        if (tested_count[u] >= s.eta) return false;
        for (;;) {
            const std::uint32_t item =
                static_cast<std::uint32_t>(uniform_below(rng, s.eta));
            if (!tested[idx(u, item)]) {
                *out = item;
                return true;
            }
        }
    }

    void finalize(std::uint32_t rounds_run, bool capped) {
        metrics.rounds = rounds_run;
        metrics.capped = capped;
        metrics.satisfied_users = satisfied_count;
        std::uint64_t satisfied_members = 0;
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            if (sig_member[u] && satisfied[u]) ++satisfied_members;
        }
        metrics.satisfied_sig_fraction =
            covered_users == 0 ? 0.0
                               : static_cast<double>(satisfied_members) /
                                     static_cast<double>(covered_users);
    }
};

struct Delivery {
    std::uint32_t sender;
    std::uint32_t item;
};

}  // namespace

const char* protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::baseline: return "baseline";
        case ProtocolKind::mailing_list: return "mailing_list";
        case ProtocolKind::word_of_mouth: return "word_of_mouth";
    }
    return "unknown";
}

std::optional<ProtocolKind> protocol_from_name(const std::string& name) {
    if (name == "baseline") return ProtocolKind::baseline;
    if (name == "mailing_list") return ProtocolKind::mailing_list;
    if (name == "word_of_mouth") return ProtocolKind::word_of_mouth;
    return std::nullopt;
}

SimMetrics run_baseline(const Scenario& s, const ProtocolConfig& config,
                        std::mt19937_64& rng, std::vector<MessageRecord>* log) {
    SimState st(s);
    // Liked items per user, kept sorted so replies index a canonical order.
    std::vector<std::vector<std::uint32_t>> liked_items(s.mu);
    const auto remember_liked = [&](std::uint32_t u, std::uint32_t item) {
        auto& v = liked_items[u];
        const auto it = std::lower_bound(v.begin(), v.end(), item);
        if (it == v.end() || *it != item) v.insert(it, item);
    };

    std::uint32_t rounds_run = 0;
    bool reached = false;
    for (std::uint32_t r = 1; r <= config.max_rounds; ++r) {
        if (st.satisfied_fraction() >= s.lambda_target) {
            reached = true;
            break;
        }
        if (r % 2 == 1) {  // sampling round, with replacement
            for (std::uint32_t u = 0; u < s.mu; ++u) {
                if (st.satisfied[u]) continue;
                const std::uint32_t item =
                    static_cast<std::uint32_t>(uniform_below(rng, s.eta));
                st.record_trace_sample(u, item);
                if (st.test(u, item, false)) remember_liked(u, item);
            }
        } else {  // query round
            for (std::uint32_t u = 0; u < s.mu; ++u) {
                if (st.satisfied[u]) continue;
                const std::uint32_t target =
                    static_cast<std::uint32_t>(uniform_below(rng, s.mu));
                ++st.metrics.messages;  // the request
                if (!st.satisfied[target]) ++st.metrics.spam;
                const auto& pool = liked_items[target];
                if (pool.empty()) continue;
                const std::uint32_t item =
                    pool[uniform_below(rng, pool.size())];
                ++st.metrics.messages;  // the reply
                const bool liked = st.likes(u, item);
                if (log) log->push_back({r, target, u, item, liked});
                if (st.test(u, item, true)) remember_liked(u, item);
            }
        }
        rounds_run = r;
    }
    if (!reached && st.satisfied_fraction() >= s.lambda_target) reached = true;
    st.finalize(rounds_run, !reached);
    return st.metrics;
}

SimMetrics run_mailing_list(const Scenario& s, const ProtocolConfig& config,
                            std::mt19937_64& rng, std::vector<MessageRecord>* log) {
    SimState st(s);
    // Broadcast reach: union of the user's SIG cliques, self excluded.
    std::vector<std::vector<std::uint32_t>> clique_neighbors(s.mu);
    for (std::uint32_t u = 0; u < s.mu; ++u) {
        auto& nb = clique_neighbors[u];
        for (const std::uint32_t sig : st.memberships[u]) {
            nb.insert(nb.end(), s.sigs[sig].members.begin(), s.sigs[sig].members.end());
        }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        nb.erase(std::remove(nb.begin(), nb.end(), u), nb.end());
    }

    const std::uint64_t cells = static_cast<std::uint64_t>(s.mu) * s.eta;
    std::vector<std::uint8_t> delivered(cells, 0);  // suppression memory
    std::vector<std::vector<std::uint32_t>> inbox(s.mu);
    std::uint64_t pending = 0;
    std::vector<Delivery> queue;

    const auto flush_inboxes = [&] {
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            if (inbox[u].empty()) continue;
            std::sort(inbox[u].begin(), inbox[u].end());
            for (const std::uint32_t item : inbox[u]) {
                if (!st.tested[st.idx(u, item)]) st.test(u, item, true);
            }
            pending -= inbox[u].size();
            inbox[u].clear();
        }
    };

    std::uint32_t rounds_run = 0;
    bool reached = false;
    for (std::uint32_t r = 1; r <= config.max_rounds; ++r) {
        rounds_run = r;
        // 1) Test last round's deliveries; received items are not re-broadcast.
        flush_inboxes();
        // 2) Agents with an unserved group sample one untested item each.
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            bool searching = false;
            for (const std::uint32_t sig : st.memberships[u]) {
                if (!st.served[sig]) {
                    searching = true;
                    break;
                }
            }
            if (!searching) continue;
            std::uint32_t item = 0;
            if (!st.draw_untested(u, rng, &item)) continue;
            st.record_trace_sample(u, item);
            if (st.test(u, item, false)) queue.push_back({u, item});
        }
        // 3) Broadcast liked samples in discovery order.
        for (const Delivery& d : queue) {
            for (const std::uint32_t sig : st.memberships[d.sender]) {
                const auto& common = s.sigs[sig].common_items;
                if (std::binary_search(common.begin(), common.end(), d.item)) {
                    st.served[sig] = 1;
                }
            }
            for (const std::uint32_t recv : clique_neighbors[d.sender]) {
                const std::size_t cell = st.idx(recv, d.item);
                if (delivered[cell] || st.tested[cell]) continue;
                delivered[cell] = 1;
                inbox[recv].push_back(d.item);
                ++pending;
                ++st.metrics.messages;
                const bool liked = st.likes(recv, d.item);
                if (!liked) ++st.metrics.spam;
                if (log) log->push_back({r, d.sender, recv, d.item, liked});
            }
        }
        queue.clear();
        if (st.satisfied_fraction() >= s.lambda_target && pending == 0) {
            reached = true;
            break;
        }
    }
    if (!reached) flush_inboxes();  // capped: deliveries already counted get tested
    st.finalize(rounds_run, !reached);
    return st.metrics;
}

SimMetrics run_word_of_mouth(const Scenario& s, const Graph& graph,
                             const std::vector<std::uint32_t>& placement,
                             const ProtocolConfig& config, std::mt19937_64& rng,
                             std::vector<MessageRecord>* log) {
    if (placement.size() != s.mu) {
        throw std::invalid_argument("placement mismatch: one node per user required");
    }
    std::vector<std::uint32_t> node_user(graph.node_count, 0xFFFFFFFFu);
    for (std::uint32_t u = 0; u < s.mu; ++u) {
        const std::uint32_t node = placement[u];
        if (node >= graph.node_count || !graph.alive[node] ||
            node_user[node] != 0xFFFFFFFFu) {
            throw std::invalid_argument(
                "placement mismatch: users must map one-to-one onto alive nodes");
        }
        node_user[node] = u;
    }
    for (std::uint32_t v = 0; v < graph.node_count; ++v) {
        if (graph.alive[v] && node_user[v] == 0xFFFFFFFFu) {
            throw std::invalid_argument("placement mismatch: alive node left vacant");
        }
    }

    SimState st(s);
    const SimpleAdjacency adj = simple_neighbors(graph);
    const std::uint64_t cells = static_cast<std::uint64_t>(s.mu) * s.eta;
    std::vector<std::uint8_t> received(cells, 0);  // first-arrival memory
    std::vector<std::vector<std::uint32_t>> inbox(s.mu);
    std::uint64_t pending = 0;
    std::vector<Delivery> queue;

    const auto flush_tests_only = [&] {
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            if (inbox[u].empty()) continue;
            for (const std::uint32_t item : inbox[u]) {
                if (!st.tested[st.idx(u, item)]) st.test(u, item, true);
            }
            pending -= inbox[u].size();
            inbox[u].clear();
        }
    };

    std::uint32_t rounds_run = 0;
    bool reached = false;
    for (std::uint32_t r = 1; r <= config.max_rounds; ++r) {
        rounds_run = r;
        // 1) Test items that arrived last round; liked ones are relayed, and
        //    disliked ones only with the configured forwarding probability.
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            if (inbox[u].empty()) continue;
            for (const std::uint32_t item : inbox[u]) {
                if (st.tested[st.idx(u, item)]) continue;
                const bool liked = st.test(u, item, true);
                if (liked) {
                    queue.push_back({u, item});
                } else if (config.forward_prob_uninterested > 0.0) {
                    if (uniform01(rng) < config.forward_prob_uninterested) {
                        queue.push_back({u, item});
                    }
                }
            }
            pending -= inbox[u].size();
            inbox[u].clear();
        }
        // 2) Unsatisfied agents sample one untested item each.
        for (std::uint32_t u = 0; u < s.mu; ++u) {
            if (st.satisfied[u]) continue;
            std::uint32_t item = 0;
            if (!st.draw_untested(u, rng, &item)) continue;
            st.record_trace_sample(u, item);
            if (st.test(u, item, false)) queue.push_back({u, item});
        }
        // 3) Send queued items over every incident collapsed edge.
        for (const Delivery& d : queue) {
            const std::uint32_t src = placement[d.sender];
            for (const std::uint32_t* it = adj.begin(src); it != adj.end(src); ++it) {
                if (!graph.alive[*it]) continue;
                const std::uint32_t recv = node_user[*it];
                ++st.metrics.messages;
                const bool liked = st.likes(recv, d.item);
                if (!liked) ++st.metrics.spam;
                if (log) log->push_back({r, d.sender, recv, d.item, liked});
                const std::size_t cell = st.idx(recv, d.item);
                if (!received[cell]) {
                    received[cell] = 1;
                    inbox[recv].push_back(d.item);
                    ++pending;
                }
            }
        }
        queue.clear();
        if (st.satisfied_fraction() >= s.lambda_target && pending == 0) {
            reached = true;
            break;
        }
    }
    if (!reached) flush_tests_only();
    st.finalize(rounds_run, !reached);
    return st.metrics;
}

SigConnectivity measure_sig_connectivity(const Graph& graph, const SIGSpec& sig,
                                         const std::vector<std::uint32_t>& placement) {
    std::vector<std::uint32_t> member_nodes;
    member_nodes.reserve(sig.members.size());
    for (const std::uint32_t u : sig.members) {
        if (u >= placement.size()) {
            throw std::invalid_argument("placement mismatch: member without a node");
        }
        member_nodes.push_back(placement[u]);
    }
    std::vector<std::uint8_t> in_set(graph.node_count, 0);
    for (const std::uint32_t v : member_nodes) {
        if (v >= graph.node_count || !graph.alive[v]) {
            throw std::invalid_argument("placement mismatch: member on a dead node");
        }
        in_set[v] = 1;
    }

    const SimpleAdjacency adj = simple_neighbors(graph);
    // Union-find restricted to member nodes.
    std::vector<std::uint32_t> parent(graph.node_count);
    std::iota(parent.begin(), parent.end(), 0u);
    const auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::uint64_t orphans = 0;
    for (const std::uint32_t v : member_nodes) {
        bool has_member_neighbor = false;
        for (const std::uint32_t* it = adj.begin(v); it != adj.end(v); ++it) {
            if (!in_set[*it]) continue;
            has_member_neighbor = true;
            const std::uint32_t a = find(v);
            const std::uint32_t b = find(*it);
            if (a != b) parent[a] = b;
        }
        if (!has_member_neighbor) ++orphans;
    }
    std::vector<std::uint64_t> comp_size(graph.node_count, 0);
    std::uint64_t largest = 0;
    for (const std::uint32_t v : member_nodes) {
        const std::uint64_t c = ++comp_size[find(v)];
        largest = std::max(largest, c);
    }

    SigConnectivity out;
    const double n_members = static_cast<double>(member_nodes.size());
    out.largest_component_fraction = member_nodes.empty() ? 0.0 : largest / n_members;
    out.orphan_fraction = member_nodes.empty() ? 0.0 : orphans / n_members;
    out.gamma = expansion_boundary(graph, member_nodes);
    return out;
}

}  // namespace drsim
