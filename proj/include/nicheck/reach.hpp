#pragma once

#include "nicheck/net.hpp"
#include "nicheck/target.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace nicheck {

/// Token count extended with "arbitrarily large".
inline constexpr uint64_t OMEGA = std::numeric_limits<uint64_t>::max();

struct OmegaMarking {
    std::vector<uint64_t> tokens;
    bool operator==(const OmegaMarking&) const = default;
};

struct CoverabilityNode {
    OmegaMarking label;
    int32_t parent;         // -1 for the root
    int32_t via_transition; // -1 for the root
};

struct CoverabilityTree {
    std::vector<CoverabilityNode> nodes;
    bool has_omega = false;
    bool complete = true; // false when the node cap was hit
    std::optional<uint32_t> omega_place;
};

struct KmOptions {
    std::size_t node_cap = 200'000;
    std::vector<bool> excluded; // optional mask, size = transition count
};

/// Coverability tree with omega acceleration against ancestors and global
/// duplicate pruning. On bounded nets the node labels are exactly the
/// reachable markings.
CoverabilityTree karp_miller(const NetSystem& net, const KmOptions& opts = {});

/// True iff the coverability tree carries no omega. Throws OverflowError if
/// the tree exceeds the node cap before completion.
bool is_bounded(const NetSystem& net);

/// Some tree label covers the lower bounds of the clause (upper bounds are
/// ignored; omega covers everything).
bool covers_lower_bounds(const CoverabilityTree& tree, const ClauseBounds& clause);

struct SearchLimits {
    uint64_t max_states = 1'000'000;
    uint32_t max_depth = 10'000;
};

enum class ReachOutcome { TargetReachable, TargetUnreachableProven, Unknown };

enum class UnreachProof {
    ExhaustedBoundedStateSpace,
    UpwardRelaxationUncoverable,
    StateEquationInfeasible,
};

const char* reach_outcome_name(ReachOutcome o);
const char* unreach_proof_name(UnreachProof p);

struct ReachStats {
    uint64_t states_explored = 0;
    uint64_t frontier_peak = 0;
    uint64_t km_nodes = 0;
    uint64_t state_bound = 0;
    uint32_t depth_bound = 0;
    uint32_t depth_reached = 0;
};

struct Verdict {
    ReachOutcome outcome = ReachOutcome::Unknown;
    std::optional<std::vector<std::string>> witness; // firing sequence from M0
    std::optional<UnreachProof> proof_kind;
    ReachStats stats;
};

/// Three-valued reachability of the target from the initial marking.
///
/// Routes, in order: statically unsatisfiable targets are vacuously
/// unreachable; on nets the coverability tree proves bounded, breadth-first
/// enumeration decides exactly (shortest witness, ties broken by transition
/// declaration order); otherwise unreachability is attempted per clause via
/// the upward relaxation against the coverability tree and via the
/// state-equation refutation, and a breadth-first hunt within the limits
/// still finds witnesses. Anything else is Unknown.
///
/// Transitions named in `excluded` are never fired.
Verdict decide_reach(const NetSystem& net, const TargetSet& target,
                     const SearchLimits& limits,
                     const std::vector<std::string>& excluded = {});

} // namespace nicheck
