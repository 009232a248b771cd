#include "nicheck/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace nicheck {

const char* security_outcome_name(SecurityOutcome o) {
    switch (o) {
    case SecurityOutcome::Secure: return "secure";
    case SecurityOutcome::Insecure: return "insecure";
    case SecurityOutcome::Unknown: return "unknown";
    }
    return "?";
}

namespace {

// Explicit reachable state space with breadth-first parent pointers.
struct StateSpace {
    std::vector<Marking> states;
    std::unordered_map<Marking, uint32_t, MarkingHash> index;
    std::vector<int64_t> parent;
    std::vector<int32_t> via;

    std::vector<std::string> path(const NetSystem& net, uint32_t state) const {
        std::vector<std::string> out;
        for (int64_t i = state; via[i] >= 0; i = parent[i])
            out.push_back(net.transition(via[i]).name);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

StateSpace explore(const NetSystem& net, uint64_t max_states) {
    StateSpace ss;
    ss.states.push_back(net.initial_marking());
    ss.index.emplace(net.initial_marking(), 0);
    ss.parent.push_back(-1);
    ss.via.push_back(-1);
    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (!enabled(net, ss.states[cur], t))
                continue;
            Marking next = fire(net, ss.states[cur], t);
            if (ss.index.count(next))
                continue;
            if (ss.states.size() >= max_states)
                throw OverflowError("state space exceeds " + std::to_string(max_states) +
                                    " markings");
            uint32_t id = static_cast<uint32_t>(ss.states.size());
            ss.index.emplace(next, id);
            ss.states.push_back(std::move(next));
            ss.parent.push_back(cur);
            ss.via.push_back(static_cast<int32_t>(t));
            queue.push_back(id);
        }
    }
    return ss;
}

// Language-equivalence classes of the given markings under a free-labeled
// (deterministic) view: every transition of `view` is its own observable
// letter. The marking set must be closed under firing view transitions.
std::vector<uint32_t> language_classes(const NetSystem& view, const StateSpace& ss) {
    const uint32_t n = static_cast<uint32_t>(ss.states.size());
    const uint32_t tn = view.transition_count();
    std::vector<std::vector<int64_t>> succ(n, std::vector<int64_t>(tn, -1));
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t t = 0; t < tn; ++t)
            if (enabled(view, ss.states[i], t))
                succ[i][t] = ss.index.at(fire(view, ss.states[i], t));

    std::vector<uint32_t> block(n, 0);
    while (true) {
        std::map<std::vector<int64_t>, uint32_t> sig_index;
        std::vector<uint32_t> next(n);
        for (uint32_t i = 0; i < n; ++i) {
            std::vector<int64_t> sig;
            sig.push_back(block[i]);
            for (uint32_t t = 0; t < tn; ++t)
                sig.push_back(succ[i][t] < 0 ? -1 : block[succ[i][t]]);
            auto [it, _] = sig_index.emplace(sig, static_cast<uint32_t>(sig_index.size()));
            next[i] = it->second;
        }
        if (next == block)
            return block;
        block = std::move(next);
    }
}

// Shortest word telling two states of a deterministic view apart.
std::vector<std::string> distinguishing_word(const NetSystem& view, const StateSpace& ss,
                                             uint32_t a, uint32_t b) {
    struct Node {
        int64_t parent;
        int32_t sym;
    };
    std::map<std::pair<uint32_t, uint32_t>, std::size_t> seen;
    std::vector<Node> trace{{-1, -1}};
    std::deque<std::pair<uint32_t, uint32_t>> queue{{a, b}};
    seen.emplace(std::make_pair(a, b), 0);
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        std::size_t cur = seen.at({x, y});
        for (uint32_t t = 0; t < view.transition_count(); ++t) {
            bool ex = enabled(view, ss.states[x], t);
            bool ey = enabled(view, ss.states[y], t);
            if (ex != ey) {
                std::vector<std::string> word{view.transition(t).name};
                for (std::size_t i = cur; trace[i].sym >= 0; i = trace[i].parent)
                    word.push_back(view.transition(trace[i].sym).name);
                std::reverse(word.begin(), word.end());
                return word;
            }
            if (!ex)
                continue;
            auto key = std::make_pair(ss.index.at(fire(view, ss.states[x], t)),
                                      ss.index.at(fire(view, ss.states[y], t)));
            if (seen.count(key))
                continue;
            seen.emplace(key, trace.size());
            trace.push_back(Node{static_cast<int64_t>(cur), static_cast<int32_t>(t)});
            queue.push_back(key);
        }
    }
    return {};
}

std::vector<std::string> level_names(const NetSystem& net, Level lv) {
    std::vector<std::string> out;
    for (const Transition& t : net.transitions())
        if (t.level == lv)
            out.push_back(t.name);
    return out;
}

} // namespace

OracleReport ndc_direct(const NetSystem& net, uint64_t max_states) {
    OracleReport report;
    NetSystem low_only = restricted(net, level_names(net, Level::High));
    auto diff = language_difference(build_lts(net, max_states),
                                    build_lts(low_only, max_states));
    if (diff) {
        report.outcome = SecurityOutcome::Insecure;
        report.witness = OracleWitness{{}, "", *diff};
    } else {
        report.outcome = SecurityOutcome::Secure;
    }
    return report;
}

OracleReport sbndc_direct(const NetSystem& net, uint64_t max_states,
                          bool cross_check_bisim) {
    OracleReport report;
    StateSpace ss = explore(net, max_states);
    NetSystem view = restricted(net, level_names(net, Level::High));
    std::vector<uint32_t> classes = language_classes(view, ss);

    for (uint32_t i = 0; i < ss.states.size(); ++i) {
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (net.transition(t).level != Level::High ||
                !enabled(net, ss.states[i], t))
                continue;
            uint32_t j = ss.index.at(fire(net, ss.states[i], t));
            bool equal = classes[i] == classes[j];
            if (cross_check_bisim) {
                auto bisim = weakly_bisimilar(build_lts(view, ss.states[i], max_states),
                                              build_lts(view, ss.states[j], max_states));
                if (bisim.bisimilar != equal)
                    throw std::logic_error(
                        "bisimulation and language routes disagree on a "
                        "high-restricted pair");
            }
            if (!equal && report.outcome != SecurityOutcome::Insecure) {
                report.outcome = SecurityOutcome::Insecure;
                report.witness = OracleWitness{ss.path(net, i), net.transition(t).name,
                                               distinguishing_word(view, ss, i, j)};
                if (!cross_check_bisim)
                    return report;
            }
        }
    }
    if (report.outcome != SecurityOutcome::Insecure)
        report.outcome = SecurityOutcome::Secure;
    return report;
}

MarkingRelation marking_relation(const NetSystem& net, uint64_t max_states) {
    StateSpace ss = explore(net, max_states);
    NetSystem view = restricted(net, level_names(net, Level::High));

    // Pairs (restricted marking, full marking); both live inside the full
    // reachable set.
    std::set<std::pair<uint32_t, uint32_t>> pairs;
    std::deque<std::pair<uint32_t, uint32_t>> queue;
    pairs.emplace(0, 0);
    queue.emplace_back(0, 0);
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            const Transition& tr = net.transition(t);
            if (tr.level == Level::High) {
                if (!enabled(net, ss.states[b], t))
                    continue;
                auto key = std::make_pair(a, ss.index.at(fire(net, ss.states[b], t)));
                if (pairs.insert(key).second)
                    queue.push_back(key);
            } else {
                if (!enabled(view, ss.states[a], tr.name) ||
                    !enabled(net, ss.states[b], t))
                    continue;
                auto key = std::make_pair(ss.index.at(fire(view, ss.states[a], tr.name)),
                                          ss.index.at(fire(net, ss.states[b], t)));
                if (pairs.insert(key).second)
                    queue.push_back(key);
            }
        }
    }
    MarkingRelation out;
    for (const auto& [a, b] : pairs)
        out.pairs.emplace_back(ss.states[a], ss.states[b]);
    return out;
}

OracleReport bndc_via_relation(const NetSystem& net, uint64_t max_states) {
    OracleReport report;
    StateSpace ss = explore(net, max_states);
    NetSystem view = restricted(net, level_names(net, Level::High));
    std::vector<uint32_t> classes = language_classes(view, ss);

    std::set<std::pair<uint32_t, uint32_t>> pairs;
    std::deque<std::pair<uint32_t, uint32_t>> queue;
    pairs.emplace(0, 0);
    queue.emplace_back(0, 0);
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        if (classes[a] != classes[b]) {
            report.outcome = SecurityOutcome::Insecure;
            report.witness =
                OracleWitness{ss.path(net, b), "", distinguishing_word(view, ss, a, b)};
            return report;
        }
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            const Transition& tr = net.transition(t);
            if (tr.level == Level::High) {
                if (!enabled(net, ss.states[b], t))
                    continue;
                auto key = std::make_pair(a, ss.index.at(fire(net, ss.states[b], t)));
                if (pairs.insert(key).second)
                    queue.push_back(key);
            } else {
                if (!enabled(view, ss.states[a], tr.name) ||
                    !enabled(net, ss.states[b], t))
                    continue;
                auto key = std::make_pair(ss.index.at(fire(view, ss.states[a], tr.name)),
                                          ss.index.at(fire(net, ss.states[b], t)));
                if (pairs.insert(key).second)
                    queue.push_back(key);
            }
        }
    }
    report.outcome = SecurityOutcome::Secure;
    return report;
}

OracleReport bini_direct(const NetSystem& net, uint64_t max_states) {
    OracleReport report;
    StateSpace ss = explore(net, max_states);
    std::vector<std::string> removed = level_names(net, Level::High);
    for (const std::string& d : level_names(net, Level::Down))
        removed.push_back(d);
    NetSystem view = restricted(net, removed);
    std::vector<uint32_t> classes = language_classes(view, ss);

    for (uint32_t i = 0; i < ss.states.size(); ++i) {
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (net.transition(t).level != Level::High ||
                !enabled(net, ss.states[i], t))
                continue;
            uint32_t j = ss.index.at(fire(net, ss.states[i], t));
            if (classes[i] != classes[j]) {
                report.outcome = SecurityOutcome::Insecure;
                report.witness = OracleWitness{ss.path(net, i), net.transition(t).name,
                                               distinguishing_word(view, ss, i, j)};
                return report;
            }
        }
    }
    report.outcome = SecurityOutcome::Secure;
    return report;
}

namespace {

OracleReport ini_check_points(const NetSystem& net, uint64_t max_states,
                              const std::optional<std::string>& only_d,
                              bool include_initial) {
    OracleReport report;
    StateSpace ss = explore(net, max_states);
    NetSystem down_view = restricted(net, level_names(net, Level::Down));
    std::vector<std::string> removed = level_names(net, Level::High);
    for (const std::string& d : level_names(net, Level::Down))
        removed.push_back(d);
    NetSystem low_view = restricted(net, removed);

    std::set<uint32_t> points;
    if (include_initial)
        points.insert(0);
    for (uint32_t i = 0; i < ss.states.size(); ++i) {
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (net.transition(t).level != Level::Down ||
                !enabled(net, ss.states[i], t))
                continue;
            if (only_d && net.transition(t).name != *only_d)
                continue;
            points.insert(ss.index.at(fire(net, ss.states[i], t)));
        }
    }

    for (uint32_t m : points) {
        auto diff = language_difference(build_lts(down_view, ss.states[m], max_states),
                                        build_lts(low_view, ss.states[m], max_states));
        if (diff) {
            report.outcome = SecurityOutcome::Insecure;
            report.witness = OracleWitness{ss.path(net, m), "", *diff};
            return report;
        }
    }
    report.outcome = SecurityOutcome::Secure;
    return report;
}

} // namespace

OracleReport ini_direct(const NetSystem& net, uint64_t max_states) {
    return ini_check_points(net, max_states, std::nullopt, true);
}

OracleReport ini_condition_for_d(const NetSystem& net, const std::string& d,
                                 uint64_t max_states) {
    net.require_transition(d);
    return ini_check_points(net, max_states, d, false);
}

} // namespace nicheck
