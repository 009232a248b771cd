#pragma once

// Independent search oracles for the engine tests: plain breadth-first
// enumeration over the core firing rule, with the target evaluated directly
// from its atoms.

#include "nicheck/net.hpp"
#include "nicheck/target.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace brute {

using namespace nicheck;

inline bool atom_holds(const NetSystem& net, const Marking& m, const Atom& a) {
    uint32_t v = m[net.require_place(a.place)];
    return a.rel == Rel::Ge ? v >= a.bound : v <= a.bound;
}

inline bool target_holds(const NetSystem& net, const Marking& m, const TargetSet& t) {
    for (const Clause& c : t.clauses) {
        bool all = true;
        for (const Atom& a : c.atoms)
            if (!atom_holds(net, m, a)) {
                all = false;
                break;
            }
        if (all)
            return true;
    }
    return false;
}

struct Result {
    bool found = false;
    std::vector<std::string> witness;
    bool exhausted = false;
    std::size_t states = 0;
};

inline Result reach(const NetSystem& net, const TargetSet& target,
                    std::size_t max_states, uint32_t max_depth,
                    const std::vector<std::string>& excluded = {}) {
    std::set<std::string> skip(excluded.begin(), excluded.end());
    Result out;
    struct Node {
        Marking m;
        int64_t parent;
        int32_t via;
        uint32_t depth;
    };
    std::vector<Node> nodes{{net.initial_marking(), -1, -1, 0}};
    std::unordered_map<Marking, std::size_t, MarkingHash> seen;
    seen.emplace(net.initial_marking(), 0);

    auto path = [&](std::size_t i) {
        std::vector<std::string> w;
        for (int64_t k = static_cast<int64_t>(i); nodes[k].via >= 0; k = nodes[k].parent)
            w.push_back(net.transition(nodes[k].via).name);
        std::reverse(w.begin(), w.end());
        return w;
    };

    if (target_holds(net, nodes[0].m, target)) {
        out.found = true;
        out.states = 1;
        return out;
    }
    std::deque<std::size_t> queue{0};
    bool truncated = false;
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        ++out.states;
        if (nodes[cur].depth >= max_depth) {
            truncated = true;
            continue;
        }
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (skip.count(net.transition(t).name) || !enabled(net, nodes[cur].m, t))
                continue;
            Marking next = fire(net, nodes[cur].m, t);
            if (seen.count(next))
                continue;
            nodes.push_back(Node{next, static_cast<int64_t>(cur),
                                 static_cast<int32_t>(t), nodes[cur].depth + 1});
            seen.emplace(std::move(next), nodes.size() - 1);
            if (target_holds(net, nodes.back().m, target)) {
                out.found = true;
                out.witness = path(nodes.size() - 1);
                return out;
            }
            if (seen.size() > max_states) {
                truncated = true;
                return out;
            }
            queue.push_back(nodes.size() - 1);
        }
    }
    out.exhausted = !truncated;
    return out;
}

/// Exhaustive reachable set; empty optional when the cap is exceeded.
inline std::optional<std::vector<Marking>> states(const NetSystem& net,
                                                  std::size_t cap) {
    std::vector<Marking> out{net.initial_marking()};
    std::set<Marking> seen{net.initial_marking()};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (!enabled(net, out[cur], t))
                continue;
            Marking next = fire(net, out[cur], t);
            if (!seen.insert(next).second)
                continue;
            if (out.size() >= cap)
                return std::nullopt;
            out.push_back(std::move(next));
            queue.push_back(out.size() - 1);
        }
    }
    return out;
}

/// Does "after every w, l is enabled at M3 iff at M4" fail for this (h, l)?
/// Direct diamond search over synchronized pairs; bounded nets only.
inline bool pair_mismatch_exists(const NetSystem& net, const std::string& h,
                                 const std::string& l, bool declassify_too,
                                 std::size_t cap) {
    auto all = states(net, cap);
    if (!all)
        throw OverflowError("pair oracle needs a bounded net");
    uint32_t ht = net.require_transition(h);
    uint32_t lt = net.require_transition(l);
    for (const Marking& m1 : *all) {
        if (!enabled(net, m1, ht))
            continue;
        Marking m2 = fire(net, m1, ht);
        // Walk the synchronized low continuation.
        std::set<std::pair<Marking, Marking>> seen{{m1, m2}};
        std::deque<std::pair<Marking, Marking>> queue{{m1, m2}};
        while (!queue.empty()) {
            auto [m3, m4] = queue.front();
            queue.pop_front();
            if (enabled(net, m3, lt) != enabled(net, m4, lt))
                return true;
            for (uint32_t t = 0; t < net.transition_count(); ++t) {
                Level lv = net.transition(t).level;
                bool low_step = lv == Level::Low;
                (void)declassify_too; // continuations are low-only in both variants
                if (!low_step)
                    continue;
                if (!enabled(net, m3, t) || !enabled(net, m4, t))
                    continue;
                auto key = std::make_pair(fire(net, m3, t), fire(net, m4, t));
                if (seen.insert(key).second)
                    queue.push_back(key);
            }
        }
    }
    return false;
}

} // namespace brute
