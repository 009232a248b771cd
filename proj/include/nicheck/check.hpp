#pragma once

#include "nicheck/construct.hpp"
#include "nicheck/net.hpp"
#include "nicheck/oracle.hpp"
#include "nicheck/reach.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nicheck {

enum class Property { NDC, SBNDC, BNDC, INI, BINI };

const char* property_name(Property p);
std::optional<Property> property_from_string(const std::string& s);

struct CheckWitness {
    enum class Direction { Causal, Conflict };

    std::string high;
    std::string low;
    std::vector<std::string> run_prefix; // w: run before the offending high firing
    std::vector<std::string> low_suffix; // s: low-only continuation
    Direction direction = Direction::Causal;

    /// w ++ [h] ++ s
    std::vector<std::string> full_run() const;
};

const char* direction_name(CheckWitness::Direction d);

struct SubcheckResult {
    std::string name;
    SecurityOutcome outcome = SecurityOutcome::Unknown;
    std::optional<UnreachProof> proof;
    ReachStats stats;
};

struct CheckReport {
    Property property = Property::NDC;
    SecurityOutcome verdict = SecurityOutcome::Unknown;
    std::optional<CheckWitness> witness;
    std::vector<SubcheckResult> subchecks;
    SearchLimits limits;
    ReachStats totals;
};

/// Language-based transitive check; two-level nets only. Secure iff the
/// product target is unreachable. Every insecure report carries a witness
/// that has been replayed against the original net before being returned.
CheckReport check_ndc(const NetSystem& net, const SearchLimits& limits = {});

/// Per-pair enabling-mismatch check over all (high, low) pairs; two-level
/// nets only.
CheckReport check_sbndc(const NetSystem& net, const SearchLimits& limits = {});

/// Same decision procedure as check_sbndc, reported under the bisimulation
/// property name.
CheckReport check_bndc(const NetSystem& net, const SearchLimits& limits = {});

/// Intransitive language-based check; needs downgrading transitions. One
/// subcheck at the initial marking plus one mode-switch subcheck per
/// downgrading transition.
CheckReport check_ini(const NetSystem& net, const SearchLimits& limits = {});

/// Intransitive bisimulation-based check via the declassifying pair variant.
CheckReport check_bini(const NetSystem& net, const SearchLimits& limits = {});

CheckReport run_check(const NetSystem& net, Property property,
                      const SearchLimits& limits = {});

struct CrossValidation {
    enum class Status { Agree, Disagree, OracleSkipped };
    CheckReport structural;
    std::optional<OracleReport> oracle;
    Status status = Status::OracleSkipped;
    std::string reason;
};

/// Runs the structural decider next to the matching direct oracle check and
/// compares verdicts. Oracle overflow on unbounded nets is reported as
/// skipped, not as disagreement.
CrossValidation cross_validate(const NetSystem& net, Property property,
                               const SearchLimits& limits = {},
                               uint64_t oracle_max_states = 100'000);

} // namespace nicheck
