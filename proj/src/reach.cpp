#include "nicheck/reach.hpp"

#include "nicheck/state_equation.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace nicheck {

const char* reach_outcome_name(ReachOutcome o) {
    switch (o) {
    case ReachOutcome::TargetReachable: return "TargetReachable";
    case ReachOutcome::TargetUnreachableProven: return "TargetUnreachableProven";
    case ReachOutcome::Unknown: return "Unknown";
    }
    return "?";
}

const char* unreach_proof_name(UnreachProof p) {
    switch (p) {
    case UnreachProof::ExhaustedBoundedStateSpace: return "ExhaustedBoundedStateSpace";
    case UnreachProof::UpwardRelaxationUncoverable: return "UpwardRelaxationUncoverable";
    case UnreachProof::StateEquationInfeasible: return "StateEquationInfeasible";
    }
    return "?";
}

namespace {

struct OmegaHash {
    std::size_t operator()(const OmegaMarking& m) const {
        std::size_t h = 1469598103934665603ull;
        for (uint64_t v : m.tokens) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

bool omega_le(const OmegaMarking& a, const OmegaMarking& b) {
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        uint64_t x = a.tokens[i], y = b.tokens[i];
        if (x == OMEGA && y != OMEGA)
            return false;
        if (x != OMEGA && y != OMEGA && x > y)
            return false;
    }
    return true;
}

bool omega_enabled(const NetSystem& net, const OmegaMarking& m, uint32_t t) {
    for (const Arc& a : net.transition(t).pre) {
        uint64_t v = m.tokens[a.place];
        if (v != OMEGA && v < a.weight)
            return false;
    }
    return true;
}

OmegaMarking omega_fire(const NetSystem& net, const OmegaMarking& m, uint32_t t) {
    OmegaMarking out = m;
    for (const Arc& a : net.transition(t).pre)
        if (out.tokens[a.place] != OMEGA)
            out.tokens[a.place] -= a.weight;
    for (const Arc& a : net.transition(t).post)
        if (out.tokens[a.place] != OMEGA)
            out.tokens[a.place] += a.weight;
    return out;
}

} // namespace

CoverabilityTree karp_miller(const NetSystem& net, const KmOptions& opts) {
    std::vector<bool> excluded = opts.excluded;
    excluded.resize(net.transition_count(), false);

    CoverabilityTree tree;
    OmegaMarking root;
    root.tokens.assign(net.initial_marking().tokens.begin(),
                       net.initial_marking().tokens.end());
    tree.nodes.push_back(CoverabilityNode{root, -1, -1});

    std::unordered_set<OmegaMarking, OmegaHash> seen;
    seen.insert(root);

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (excluded[t] || !omega_enabled(net, tree.nodes[cur].label, t))
                continue;
            OmegaMarking succ = omega_fire(net, tree.nodes[cur].label, t);

            // Accelerate: strictly dominated ancestors pump the strictly
            // larger coordinates to omega; new omegas can unlock further
            // ancestors, so repeat until stable.
            bool changed = true;
            while (changed) {
                changed = false;
                for (int32_t a = static_cast<int32_t>(cur); a >= 0;
                     a = tree.nodes[a].parent) {
                    const OmegaMarking& anc = tree.nodes[a].label;
                    if (anc == succ || !omega_le(anc, succ))
                        continue;
                    for (std::size_t p = 0; p < succ.tokens.size(); ++p) {
                        if (succ.tokens[p] != OMEGA &&
                            (anc.tokens[p] == OMEGA ? false
                                                    : anc.tokens[p] < succ.tokens[p])) {
                            succ.tokens[p] = OMEGA;
                            changed = true;
                        }
                    }
                }
            }

            if (!seen.insert(succ).second)
                continue;
            for (std::size_t p = 0; p < succ.tokens.size(); ++p) {
                if (succ.tokens[p] == OMEGA) {
                    tree.has_omega = true;
                    if (!tree.omega_place)
                        tree.omega_place = static_cast<uint32_t>(p);
                }
            }
            tree.nodes.push_back(CoverabilityNode{std::move(succ),
                                                  static_cast<int32_t>(cur),
                                                  static_cast<int32_t>(t)});
            if (tree.nodes.size() > opts.node_cap) {
                tree.complete = false;
                return tree;
            }
            queue.push_back(tree.nodes.size() - 1);
        }
    }
    return tree;
}

bool is_bounded(const NetSystem& net) {
    CoverabilityTree tree = karp_miller(net);
    if (!tree.complete)
        throw OverflowError("coverability tree exceeded the node cap");
    return !tree.has_omega;
}

bool covers_lower_bounds(const CoverabilityTree& tree, const ClauseBounds& clause) {
    for (const CoverabilityNode& node : tree.nodes) {
        bool ok = true;
        for (const auto& r : clause.ranges) {
            uint64_t v = node.label.tokens[r.place];
            if (v != OMEGA && v < r.lo) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

namespace {

struct BfsOutcome {
    enum class Status { Hit, Exhausted, Limited } status = Status::Limited;
    std::vector<uint32_t> witness;
    uint64_t states = 0;
    uint64_t frontier_peak = 0;
    uint32_t depth_reached = 0;
};

BfsOutcome bfs_search(const NetSystem& net, const CompiledTarget& target,
                      const SearchLimits& limits, const std::vector<bool>& excluded) {
    struct Node {
        Marking marking;
        int64_t parent;
        int32_t via;
        uint32_t depth;
    };
    BfsOutcome out;
    std::vector<Node> nodes;
    std::unordered_set<Marking, MarkingHash> seen;

    auto reconstruct = [&](int64_t idx) {
        std::vector<uint32_t> path;
        for (int64_t i = idx; nodes[i].parent >= 0 || nodes[i].via >= 0;
             i = nodes[i].parent)
            path.push_back(static_cast<uint32_t>(nodes[i].via));
        std::reverse(path.begin(), path.end());
        return path;
    };

    Marking m0 = net.initial_marking();
    nodes.push_back(Node{m0, -1, -1, 0});
    seen.insert(m0);
    if (satisfies(m0, target)) {
        out.status = BfsOutcome::Status::Hit;
        out.states = 1;
        return out;
    }

    std::deque<std::size_t> queue{0};
    bool truncated = false;
    while (!queue.empty()) {
        out.frontier_peak = std::max<uint64_t>(out.frontier_peak, queue.size());
        std::size_t cur = queue.front();
        queue.pop_front();
        ++out.states;
        if (nodes[cur].depth >= limits.max_depth) {
            truncated = true;
            continue;
        }
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (excluded[t] || !enabled(net, nodes[cur].marking, t))
                continue;
            Marking next = fire(net, nodes[cur].marking, t);
            if (!seen.insert(next).second)
                continue;
            nodes.push_back(Node{std::move(next), static_cast<int64_t>(cur),
                                 static_cast<int32_t>(t), nodes[cur].depth + 1});
            out.depth_reached = std::max(out.depth_reached, nodes[cur].depth + 1);
            if (satisfies(nodes.back().marking, target)) {
                out.witness = reconstruct(static_cast<int64_t>(nodes.size() - 1));
                out.status = BfsOutcome::Status::Hit;
                return out;
            }
            if (seen.size() > limits.max_states) {
                out.status = BfsOutcome::Status::Limited;
                return out;
            }
            queue.push_back(nodes.size() - 1);
        }
    }
    out.status = truncated ? BfsOutcome::Status::Limited : BfsOutcome::Status::Exhausted;
    return out;
}

} // namespace

Verdict decide_reach(const NetSystem& net, const TargetSet& target,
                     const SearchLimits& limits,
                     const std::vector<std::string>& excluded) {
    if (limits.max_states == 0 || limits.max_depth == 0)
        throw ConfigError("search limits must be positive");

    std::vector<bool> mask(net.transition_count(), false);
    for (const std::string& name : excluded)
        mask[net.require_transition(name)] = true;

    Verdict verdict;
    verdict.stats.state_bound = limits.max_states;
    verdict.stats.depth_bound = limits.max_depth;

    CompiledTarget compiled = compile_target(net, target);
    if (compiled.clauses.empty()) {
        // All clauses statically unsatisfiable: the relaxation check is
        // vacuously conclusive.
        verdict.outcome = ReachOutcome::TargetUnreachableProven;
        verdict.proof_kind = UnreachProof::UpwardRelaxationUncoverable;
        return verdict;
    }

    KmOptions km_opts;
    km_opts.excluded = mask;
    CoverabilityTree tree = karp_miller(net, km_opts);
    verdict.stats.km_nodes = tree.nodes.size();

    auto finish_bfs = [&](const BfsOutcome& bfs) {
        verdict.stats.states_explored = bfs.states;
        verdict.stats.frontier_peak = bfs.frontier_peak;
        verdict.stats.depth_reached = bfs.depth_reached;
    };

    auto hit_verdict = [&](const BfsOutcome& bfs) {
        finish_bfs(bfs);
        std::vector<std::string> names;
        names.reserve(bfs.witness.size());
        for (uint32_t t : bfs.witness)
            names.push_back(net.transition(t).name);
        Marking end = fire_sequence(net, net.initial_marking(),
                                    std::span<const uint32_t>(bfs.witness));
        if (!satisfies(end, compiled))
            throw std::logic_error("reachability witness does not satisfy the target");
        verdict.outcome = ReachOutcome::TargetReachable;
        verdict.witness = std::move(names);
    };

    bool bfs_ran = false;
    if (tree.complete) {
        bool all_uncoverable = true;
        for (const ClauseBounds& c : compiled.clauses)
            if (covers_lower_bounds(tree, c)) {
                all_uncoverable = false;
                break;
            }
        if (all_uncoverable) {
            verdict.outcome = ReachOutcome::TargetUnreachableProven;
            verdict.proof_kind = UnreachProof::UpwardRelaxationUncoverable;
            return verdict;
        }
        if (!tree.has_omega) {
            BfsOutcome bfs = bfs_search(net, compiled, limits, mask);
            bfs_ran = true;
            if (bfs.status == BfsOutcome::Status::Hit) {
                hit_verdict(bfs);
                return verdict;
            }
            finish_bfs(bfs);
            if (bfs.status == BfsOutcome::Status::Exhausted) {
                verdict.outcome = ReachOutcome::TargetUnreachableProven;
                verdict.proof_kind = UnreachProof::ExhaustedBoundedStateSpace;
                return verdict;
            }
            // Bounded but larger than the limits; fall through.
        }
    }

    bool all_refuted = true;
    for (const ClauseBounds& c : compiled.clauses) {
        if (!state_equation_refutes(net, net.initial_marking(), c, mask)) {
            all_refuted = false;
            break;
        }
    }
    if (all_refuted) {
        verdict.outcome = ReachOutcome::TargetUnreachableProven;
        verdict.proof_kind = UnreachProof::StateEquationInfeasible;
        return verdict;
    }

    if (!bfs_ran) {
        BfsOutcome bfs = bfs_search(net, compiled, limits, mask);
        if (bfs.status == BfsOutcome::Status::Hit) {
            hit_verdict(bfs);
            return verdict;
        }
        finish_bfs(bfs);
        if (bfs.status == BfsOutcome::Status::Exhausted) {
            verdict.outcome = ReachOutcome::TargetUnreachableProven;
            verdict.proof_kind = UnreachProof::ExhaustedBoundedStateSpace;
            return verdict;
        }
    }
    verdict.outcome = ReachOutcome::Unknown;
    return verdict;
}

} // namespace nicheck
