#pragma once

#include "nicheck/net.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nicheck {

enum class Rel { Ge, Le };

/// One per-place interval bound.
struct Atom {
    std::string place;
    Rel rel;
    uint32_t bound;
};

/// Conjunction of atoms.
struct Clause {
    std::vector<Atom> atoms;
};

/// Disjunction of clauses. The empty target is unsatisfiable.
struct TargetSet {
    std::vector<Clause> clauses;
};

/// Clause asserting that transition t is enabled: p >= F(p,t) per input place.
Clause enabled_clause(const NetSystem& net, uint32_t t);

/// Clause set asserting t is disabled: one clause p <= F(p,t)-1 per input
/// place with positive weight. Empty result means "never disabled".
std::vector<Clause> disabled_clauses(const NetSystem& net, uint32_t t);

/// Distributes (clause_a AND one-of bs) over the disjunction.
std::vector<Clause> conjoin(const Clause& a, const std::vector<Clause>& bs);

/// Interval form of a clause: per-place [lo, hi] ranges, places indexed.
struct ClauseBounds {
    struct Range {
        uint32_t place;
        uint32_t lo = 0;
        std::optional<uint32_t> hi; // empty = unbounded above
    };
    std::vector<Range> ranges; // sorted by place
};

/// Collapses a clause to interval bounds; nullopt when statically unsatisfiable.
std::optional<ClauseBounds> compile_clause(const NetSystem& net, const Clause& c);

struct CompiledTarget {
    std::vector<ClauseBounds> clauses; // statically unsatisfiable clauses removed
    std::size_t dropped_unsat = 0;
};

CompiledTarget compile_target(const NetSystem& net, const TargetSet& target);

bool satisfies(const Marking& m, const ClauseBounds& c);
bool satisfies(const Marking& m, const CompiledTarget& t);
/// True iff some clause of the target holds in m.
bool satisfies(const NetSystem& net, const Marking& m, const TargetSet& target);

} // namespace nicheck
