#include "nicheck/target.hpp"

#include <algorithm>
#include <map>

namespace nicheck {

Clause enabled_clause(const NetSystem& net, uint32_t t) {
    Clause c;
    for (const Arc& a : net.transition(t).pre)
        c.atoms.push_back(Atom{net.place_name(a.place), Rel::Ge, a.weight});
    return c;
}

std::vector<Clause> disabled_clauses(const NetSystem& net, uint32_t t) {
    std::vector<Clause> out;
    for (const Arc& a : net.transition(t).pre) {
        if (a.weight == 0)
            continue;
        Clause c;
        c.atoms.push_back(Atom{net.place_name(a.place), Rel::Le, a.weight - 1});
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Clause> conjoin(const Clause& a, const std::vector<Clause>& bs) {
    std::vector<Clause> out;
    for (const Clause& b : bs) {
        Clause c = a;
        c.atoms.insert(c.atoms.end(), b.atoms.begin(), b.atoms.end());
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<ClauseBounds> compile_clause(const NetSystem& net, const Clause& c) {
    std::map<uint32_t, std::pair<uint32_t, std::optional<uint32_t>>> ranges;
    for (const Atom& atom : c.atoms) {
        uint32_t p = net.require_place(atom.place);
        auto& [lo, hi] = ranges[p];
        if (atom.rel == Rel::Ge) {
            lo = std::max(lo, atom.bound);
        } else {
            hi = hi ? std::min(*hi, atom.bound) : atom.bound;
        }
    }
    ClauseBounds out;
    for (const auto& [p, range] : ranges) {
        if (range.second && *range.second < range.first)
            return std::nullopt;
        out.ranges.push_back(ClauseBounds::Range{p, range.first, range.second});
    }
    return out;
}

CompiledTarget compile_target(const NetSystem& net, const TargetSet& target) {
    CompiledTarget out;
    for (const Clause& c : target.clauses) {
        if (auto compiled = compile_clause(net, c))
            out.clauses.push_back(std::move(*compiled));
        else
            ++out.dropped_unsat;
    }
    return out;
}

bool satisfies(const Marking& m, const ClauseBounds& c) {
    for (const auto& r : c.ranges) {
        uint32_t v = m.tokens[r.place];
        if (v < r.lo || (r.hi && v > *r.hi))
            return false;
    }
    return true;
}

bool satisfies(const Marking& m, const CompiledTarget& t) {
    for (const ClauseBounds& c : t.clauses)
        if (satisfies(m, c))
            return true;
    return false;
}

bool satisfies(const NetSystem& net, const Marking& m, const TargetSet& target) {
    return satisfies(m, compile_target(net, target));
}

} // namespace nicheck
