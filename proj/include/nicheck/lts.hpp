#pragma once

#include "nicheck/net.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nicheck {

/// Explicit labeled transition system. State 0 is initial; edge symbols index
/// into `alphabet`, silent edges carry -1.
struct FiniteLts {
    std::vector<Marking> states;
    std::vector<std::string> alphabet; // sorted observable symbols
    std::vector<std::vector<std::pair<int32_t, uint32_t>>> edges;

    uint32_t state_count() const { return static_cast<uint32_t>(states.size()); }
};

/// Labeled reachability graph of the net from its initial marking (or from
/// `start`). Edge labels follow the net labelling: transition name for
/// Low/Down, silent for High. Throws OverflowError past max_states.
FiniteLts build_lts(const NetSystem& net, uint64_t max_states = 100'000);
FiniteLts build_lts(const NetSystem& net, const Marking& start,
                    uint64_t max_states = 100'000);

/// Deterministic view of an LTS after epsilon-closure subset construction.
struct DeterministicLts {
    std::vector<std::string> alphabet;
    std::vector<std::vector<int32_t>> next; // state x symbol -> successor or -1

    uint32_t state_count() const { return static_cast<uint32_t>(next.size()); }
};

DeterministicLts determinize_lts(const FiniteLts& lts);

/// Empty when the two systems accept the same observable words; otherwise a
/// shortest distinguishing word. Determinizes both via epsilon-closure subset
/// construction and walks the synchronized product. Requires equal alphabets.
std::optional<std::vector<std::string>> language_difference(const FiniteLts& a,
                                                            const FiniteLts& b);

bool language_equivalent(const FiniteLts& a, const FiniteLts& b);

/// Pairs of states (index in a, index in b).
using RelationTable = std::vector<std::pair<uint32_t, uint32_t>>;

struct BisimResult {
    bool bisimilar = false;
    RelationTable relation; // same-class cross pairs when bisimilar
};

/// Weak bisimilarity via silent-closure saturation followed by partition
/// refinement on the saturated union system. Requires equal alphabets.
BisimResult weakly_bisimilar(const FiniteLts& a, const FiniteLts& b);

/// Checks that `r` is a weak simulation of a by b (and relates the initial
/// states).
bool weak_simulation_check(const FiniteLts& a, const FiniteLts& b,
                           const RelationTable& r);

/// Observable words arising from firing sequences of length <= steps.
std::set<std::vector<std::string>> truncated_language(const NetSystem& net,
                                                      uint32_t steps);

/// Compares the two truncated languages; empty when they agree up to the
/// step budget, otherwise a word in exactly one of them.
std::optional<std::vector<std::string>> truncated_language_difference(
    const NetSystem& a, const NetSystem& b, uint32_t steps);

} // namespace nicheck
