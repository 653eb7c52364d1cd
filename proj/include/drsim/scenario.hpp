#pragma once
// Recommendation-scenario data model: a catalog of eta items, mu users,
// special-interest groups (SIGs) with shared item sets, and per-user interest
// sets. Includes a generator, validation, and a line-based text format.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace drsim {

// Raised when a scenario file cannot be parsed or fails validation.
class scenario_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A group of users sharing a common interest set.
struct SIGSpec {
    std::vector<std::uint32_t> members;       // user ids, sorted ascending
    std::vector<std::uint32_t> common_items;  // item ids, sorted ascending
};

struct Scenario {
    std::uint32_t eta = 0;        // catalog size |P|
    std::uint32_t mu = 0;         // user count |U|
    double lambda_target = 1.0;   // satisfied-fraction goal in (0, 1]
    std::vector<SIGSpec> sigs;
    // Per-user interest set P(u), sorted ascending; size mu.
    std::vector<std::vector<std::uint32_t>> user_interests;

    std::uint32_t ell() const { return static_cast<std::uint32_t>(sigs.size()); }
};

// Builds ell SIGs over disjoint blocks of the catalog. SIG i has
// sig_sizes[i] members and sig_common_sizes[i] common items; member blocks
// are consecutive user ids, with overlap_members users shared between each
// consecutive SIG pair. Every user's interest set is the union of their
// SIGs' common items plus user_extra_items further items drawn uniformly
// (without replacement) from the catalog remainder outside all common sets.
// Throws infeasible_error (see graph.hpp) when the catalog or user pool is
// too small or the member coverage cannot reach lambda_target.
Scenario build_scenario(std::uint32_t ell,
                        const std::vector<std::uint32_t>& sig_sizes,
                        const std::vector<std::uint32_t>& sig_common_sizes,
                        std::uint32_t user_extra_items, std::uint32_t eta,
                        std::uint32_t mu, double lambda_target,
                        std::uint32_t overlap_members, std::mt19937_64& rng);

// One SIG over the leading block of users: members are users
// 0..member_count-1, the common set is items 0..common_count-1, and each
// member additionally draws member_extra_items uniform items from the rest of
// the catalog. Non-members keep empty interest sets. Intended for placements
// that scatter the leading block across a host graph.
Scenario build_single_sig_scenario(std::uint32_t mu, std::uint32_t eta,
                                   std::uint32_t member_count,
                                   std::uint32_t common_count,
                                   std::uint32_t member_extra_items,
                                   double lambda_target, std::mt19937_64& rng);

// Full validation: field ranges, sorted/unique id lists, id bounds, SIGs
// with >= 2 members and nonempty common sets contained in every member's
// interests, and SIG coverage of at least lambda_target of all users.
// Throws scenario_error on the first violation.
void validate_scenario_strict(const Scenario& scenario);

// Soft checks from the model's premise (narrow personal interest relative to
// group focus): returns one human-readable warning per violated SIG, checking
// max_u |P(u)| / eta < |P(S)| / max_v |P(v)| over members u, v of each SIG.
std::vector<std::string> scenario_premise_warnings(const Scenario& scenario);

// Line-based text form (round-trips exactly through parse_scenario).
std::string scenario_text(const Scenario& scenario);

// Parses scenario_text output. Throws scenario_error on malformed input and
// runs validate_scenario_strict on the result.
Scenario parse_scenario(std::istream& in);

}  // namespace drsim
