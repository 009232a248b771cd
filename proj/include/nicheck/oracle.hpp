#pragma once

#include "nicheck/lts.hpp"
#include "nicheck/net.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nicheck {

enum class SecurityOutcome { Secure, Insecure, Unknown };

const char* security_outcome_name(SecurityOutcome o);

struct OracleWitness {
    std::vector<std::string> prefix; // run from the initial marking
    std::string high;                // offending high transition, if any
    std::vector<std::string> word;   // distinguishing observable word
};

struct OracleReport {
    SecurityOutcome outcome = SecurityOutcome::Unknown;
    std::optional<OracleWitness> witness;
    std::string note;
};

/// Ground-truth checks on bounded nets, straight from the definitions.
/// All of them throw OverflowError when the state space exceeds max_states.

/// Language equality of the net against its high-restriction.
OracleReport ndc_direct(const NetSystem& net, uint64_t max_states = 100'000);

/// After every reachable high firing M1[h>M2, the high-restricted systems at
/// M1 and M2 must coincide. Decided through language equality of the
/// restricted free (hence deterministic) systems; with cross_check_bisim the
/// generic weak-bisimulation route is run as well and any disagreement between
/// the two routes raises logic_error.
OracleReport sbndc_direct(const NetSystem& net, uint64_t max_states = 100'000,
                          bool cross_check_bisim = false);

/// The inductive relation on markings generated from (M0, M0) by silent high
/// steps on the right and synchronous low steps on both sides.
struct MarkingRelation {
    std::vector<std::pair<Marking, Marking>> pairs;
};

MarkingRelation marking_relation(const NetSystem& net, uint64_t max_states = 100'000);

/// BNDC through the inductive relation: secure iff every related pair has
/// equal low languages under the high-restriction.
OracleReport bndc_via_relation(const NetSystem& net, uint64_t max_states = 100'000);

/// Three-level analogue: after every reachable high firing, the systems
/// restricted to low transitions only must have equal languages.
OracleReport bini_direct(const NetSystem& net, uint64_t max_states = 100'000);

/// At the initial marking and after every downgrading firing, the
/// down-restricted system must be language equivalent to the system with both
/// high and down removed.
OracleReport ini_direct(const NetSystem& net, uint64_t max_states = 100'000);

/// The per-downgrade condition of ini_direct for one chosen d only (markings
/// reached by firing that d, the initial marking excluded).
OracleReport ini_condition_for_d(const NetSystem& net, const std::string& d,
                                 uint64_t max_states = 100'000);

} // namespace nicheck
