#include "drsim/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>

#include "drsim/csv.hpp"
#include "drsim/graph.hpp"
#include "drsim/rng.hpp"

namespace drsim {
namespace {

bool sorted_unique(const std::vector<std::uint32_t>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] <= v[i - 1]) return false;
    }
    return true;
}

bool is_subset(const std::vector<std::uint32_t>& sub,
               const std::vector<std::uint32_t>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::vector<std::uint32_t> parse_id_list(std::istringstream& ls,
                                         const std::string& what) {
    std::vector<std::uint32_t> out;
    std::uint64_t id = 0;
    while (ls >> id) {
        if (id > 0xFFFFFFFFull) {
            throw scenario_error(what + " id exceeds 32-bit range");
        }
        out.push_back(static_cast<std::uint32_t>(id));
    }
    if (!ls.eof()) throw scenario_error("non-numeric token in " + what + " list");
    return out;
}

}  // namespace

Scenario build_scenario(std::uint32_t ell,
                        const std::vector<std::uint32_t>& sig_sizes,
                        const std::vector<std::uint32_t>& sig_common_sizes,
                        std::uint32_t user_extra_items, std::uint32_t eta,
                        std::uint32_t mu, double lambda_target,
                        std::uint32_t overlap_members, std::mt19937_64& rng) {
    if (ell == 0) throw infeasible_error("scenario needs at least one group");
    if (sig_sizes.size() != ell || sig_common_sizes.size() != ell) {
        throw infeasible_error("group size lists must each have ell entries");
    }
    if (mu == 0 || eta == 0) throw infeasible_error("mu and eta must be >= 1");
    if (!(lambda_target > 0.0) || lambda_target > 1.0) {
        throw infeasible_error("lambda_target must lie in (0, 1]");
    }

    std::uint64_t common_total = 0;
    for (const std::uint32_t c : sig_common_sizes) {
        if (c == 0) throw infeasible_error("every group needs a nonempty common set");
        common_total += c;
    }
    if (common_total > eta) {
        throw infeasible_error("catalog too small for disjoint common sets");
    }
    const std::uint64_t remainder = eta - common_total;
    if (user_extra_items > remainder) {
        throw infeasible_error("catalog remainder too small for per-user extras");
    }

    Scenario s;
    s.eta = eta;
    s.mu = mu;
    s.lambda_target = lambda_target;
    s.sigs.resize(ell);

    // Disjoint consecutive item blocks for the common sets.
    std::uint32_t next_item = 0;
    for (std::uint32_t i = 0; i < ell; ++i) {
        for (std::uint32_t j = 0; j < sig_common_sizes[i]; ++j) {
            s.sigs[i].common_items.push_back(next_item++);
        }
    }

    // Consecutive member blocks; each SIG after the first reuses the last
    // overlap_members users of its predecessor.
    std::uint32_t next_user = 0;
    for (std::uint32_t i = 0; i < ell; ++i) {
        if (sig_sizes[i] < 2) throw infeasible_error("every group needs >= 2 members");
        std::uint32_t start = next_user;
        if (i > 0) {
            if (overlap_members >= sig_sizes[i] || overlap_members > next_user) {
                throw infeasible_error("overlap exceeds group or user-pool size");
            }
            start = next_user - overlap_members;
        }
        const std::uint64_t end = static_cast<std::uint64_t>(start) + sig_sizes[i];
        if (end > mu) throw infeasible_error("user pool too small for the member blocks");
        for (std::uint32_t u = start; u < end; ++u) {
            s.sigs[i].members.push_back(u);
        }
        next_user = static_cast<std::uint32_t>(end);
    }

    const double coverage = static_cast<double>(next_user) / mu;
    if (coverage < lambda_target) {
        throw infeasible_error("group coverage cannot reach lambda_target");
    }

    // Interests: union of the user's common sets, plus extras drawn uniformly
    // from items outside all common sets.
    s.user_interests.assign(mu, {});
    for (std::uint32_t i = 0; i < ell; ++i) {
        for (const std::uint32_t u : s.sigs[i].members) {
            auto& set = s.user_interests[u];
            set.insert(set.end(), s.sigs[i].common_items.begin(),
                       s.sigs[i].common_items.end());
        }
    }
    for (std::uint32_t u = 0; u < mu; ++u) {
        auto& set = s.user_interests[u];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (std::uint32_t j = 0; j < user_extra_items; ++j) {
            for (;;) {
                const std::uint32_t item = static_cast<std::uint32_t>(
                    uniform_below(rng, eta));
                if (item < common_total) continue;  // inside a common block
                const auto it = std::lower_bound(set.begin(), set.end(), item);
                if (it != set.end() && *it == item) continue;  // already owned
                set.insert(it, item);
                break;
            }
        }
    }
    return s;
}

Scenario build_single_sig_scenario(std::uint32_t mu, std::uint32_t eta,
                                   std::uint32_t member_count,
                                   std::uint32_t common_count,
                                   std::uint32_t member_extra_items,
                                   double lambda_target, std::mt19937_64& rng) {
    if (mu == 0 || eta == 0) throw infeasible_error("mu and eta must be >= 1");
    if (member_count < 2 || member_count > mu) {
        throw infeasible_error("member count must lie in [2, mu]");
    }
    if (common_count == 0 || common_count > eta) {
        throw infeasible_error("common set must be nonempty and fit the catalog");
    }
    if (member_extra_items > eta - common_count) {
        throw infeasible_error("catalog remainder too small for member extras");
    }
    if (!(lambda_target > 0.0) || lambda_target > 1.0) {
        throw infeasible_error("lambda_target must lie in (0, 1]");
    }
    if (static_cast<double>(member_count) / mu < lambda_target) {
        throw infeasible_error("group coverage cannot reach lambda_target");
    }

    Scenario s;
    s.eta = eta;
    s.mu = mu;
    s.lambda_target = lambda_target;
    s.sigs.resize(1);
    for (std::uint32_t i = 0; i < common_count; ++i) {
        s.sigs[0].common_items.push_back(i);
    }
    for (std::uint32_t u = 0; u < member_count; ++u) {
        s.sigs[0].members.push_back(u);
    }
    s.user_interests.assign(mu, {});
    for (std::uint32_t u = 0; u < member_count; ++u) {
        auto& set = s.user_interests[u];
        set = s.sigs[0].common_items;
        for (std::uint32_t j = 0; j < member_extra_items; ++j) {
            for (;;) {
                const std::uint32_t item =
                    static_cast<std::uint32_t>(uniform_below(rng, eta));
                if (item < common_count) continue;
                const auto it = std::lower_bound(set.begin(), set.end(), item);
                if (it != set.end() && *it == item) continue;
                set.insert(it, item);
                break;
            }
        }
    }
    return s;
}

void validate_scenario_strict(const Scenario& s) {
    if (s.eta == 0) throw scenario_error("eta must be >= 1");
    if (s.mu == 0) throw scenario_error("mu must be >= 1");
    if (!(s.lambda_target > 0.0) || s.lambda_target > 1.0) {
        throw scenario_error("lambda_target must lie in (0, 1]");
    }
    if (s.user_interests.size() != s.mu) {
        throw scenario_error("user_interests must hold one set per user");
    }
    for (std::uint32_t u = 0; u < s.mu; ++u) {
        const auto& set = s.user_interests[u];
        if (!sorted_unique(set)) {
            throw scenario_error("interest set of user " + std::to_string(u) +
                                 " is not sorted/unique");
        }
        if (!set.empty() && set.back() >= s.eta) {
            throw scenario_error("interest item out of catalog range for user " +
                                 std::to_string(u));
        }
    }
    std::vector<std::uint8_t> covered(s.mu, 0);
    for (std::size_t i = 0; i < s.sigs.size(); ++i) {
        const auto& sig = s.sigs[i];
        const std::string tag = "group " + std::to_string(i);
        if (sig.members.size() < 2) throw scenario_error(tag + " has fewer than 2 members");
        if (sig.common_items.empty()) throw scenario_error(tag + " has an empty common set");
        if (!sorted_unique(sig.members)) {
            throw scenario_error(tag + " member list is not sorted/unique");
        }
        if (!sorted_unique(sig.common_items)) {
            throw scenario_error(tag + " common-item list is not sorted/unique");
        }
        if (sig.members.back() >= s.mu) throw scenario_error(tag + " member id out of range");
        if (sig.common_items.back() >= s.eta) {
            throw scenario_error(tag + " common item out of catalog range");
        }
        for (const std::uint32_t u : sig.members) {
            covered[u] = 1;
            if (!is_subset(sig.common_items, s.user_interests[u])) {
                throw scenario_error(tag + " common set not contained in interests of user " +
                                     std::to_string(u));
            }
        }
    }
    std::uint64_t n_covered = 0;
    for (const std::uint8_t c : covered) n_covered += c;
    if (static_cast<double>(n_covered) / s.mu < s.lambda_target) {
        throw scenario_error("group membership covers fewer than lambda_target of users");
    }
}

std::vector<std::string> scenario_premise_warnings(const Scenario& s) {
    std::vector<std::string> warnings;
    for (std::size_t i = 0; i < s.sigs.size(); ++i) {
        const auto& sig = s.sigs[i];
        std::size_t max_pu = 0;
        for (const std::uint32_t u : sig.members) {
            max_pu = std::max(max_pu, s.user_interests[u].size());
        }
        const double lhs = static_cast<double>(max_pu) / s.eta;
        const double rhs = static_cast<double>(sig.common_items.size()) /
                           static_cast<double>(max_pu);
        if (!(lhs < rhs)) {
            warnings.push_back(
                "group " + std::to_string(i) +
                ": personal interest sets are broad relative to the group focus (" +
                csv_num(lhs) + " >= " + csv_num(rhs) + ")");
        }
    }
    return warnings;
}

std::string scenario_text(const Scenario& s) {
    std::string out = "# drsim scenario v1\n";
    out += "eta " + std::to_string(s.eta) + "\n";
    out += "mu " + std::to_string(s.mu) + "\n";
    out += "lambda_target " + csv_num(s.lambda_target) + "\n";
    out += "sigs " + std::to_string(s.sigs.size()) + "\n";
    const auto id_line = [](const char* key, const std::vector<std::uint32_t>& v) {
        std::string line = key;
        for (const std::uint32_t id : v) {
            line += ' ';
            line += std::to_string(id);
        }
        line += '\n';
        return line;
    };
    for (std::size_t i = 0; i < s.sigs.size(); ++i) {
        out += "sig " + std::to_string(i) + "\n";
        out += id_line("members", s.sigs[i].members);
        out += id_line("common_items", s.sigs[i].common_items);
        out += "end\n";
    }
    for (std::uint32_t u = 0; u < s.mu; ++u) {
        if (s.user_interests[u].empty()) continue;
        out += "interests " + std::to_string(u);
        for (const std::uint32_t item : s.user_interests[u]) {
            out += ' ';
            out += std::to_string(item);
        }
        out += '\n';
    }
    return out;
}

Scenario parse_scenario(std::istream& in) {
    Scenario s;
    bool have_eta = false, have_mu = false, have_lambda = false;
    std::size_t declared_sigs = 0;
    bool in_sig = false;
    std::size_t current_sig = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "eta" || key == "mu" || key == "sigs" || key == "sig") {
            std::uint64_t value = 0;
            if (!(ls >> value)) throw scenario_error("expected an integer after '" + key + "'");
            if (key == "eta") {
                s.eta = static_cast<std::uint32_t>(value);
                have_eta = true;
            } else if (key == "mu") {
                s.mu = static_cast<std::uint32_t>(value);
                have_mu = true;
            } else if (key == "sigs") {
                declared_sigs = value;
                s.sigs.resize(value);
            } else {
                if (in_sig) throw scenario_error("sig block opened inside another sig block");
                if (value >= declared_sigs) {
                    throw scenario_error("sig index out of declared range");
                }
                current_sig = value;
                in_sig = true;
            }
        } else if (key == "lambda_target") {
            if (!(ls >> s.lambda_target)) {
                throw scenario_error("expected a number after 'lambda_target'");
            }
            have_lambda = true;
        } else if (key == "members" || key == "common_items") {
            if (!in_sig) throw scenario_error("'" + key + "' outside a sig block");
            auto ids = parse_id_list(ls, key);
            if (key == "members") {
                s.sigs[current_sig].members = std::move(ids);
            } else {
                s.sigs[current_sig].common_items = std::move(ids);
            }
        } else if (key == "end") {
            if (!in_sig) throw scenario_error("'end' outside a sig block");
            in_sig = false;
        } else if (key == "interests") {
            if (in_sig) throw scenario_error("'interests' inside a sig block");
            if (!have_mu) throw scenario_error("'interests' before 'mu'");
            std::uint64_t user = 0;
            if (!(ls >> user) || user >= s.mu) {
                throw scenario_error("interests line needs a valid user id");
            }
            if (s.user_interests.empty()) s.user_interests.assign(s.mu, {});
            s.user_interests[user] = parse_id_list(ls, "interests");
        } else {
            throw scenario_error("unknown scenario key '" + key + "'");
        }
    }
    if (in_sig) throw scenario_error("unterminated sig block");
    if (!have_eta || !have_mu || !have_lambda) {
        throw scenario_error("scenario must set eta, mu, and lambda_target");
    }
    if (s.user_interests.empty()) s.user_interests.assign(s.mu, {});
    validate_scenario_strict(s);
    return s;
}

}  // namespace drsim
