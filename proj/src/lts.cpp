#include "nicheck/lts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace nicheck {

namespace {

std::vector<std::string> net_alphabet(const NetSystem& net) {
    std::vector<std::string> out;
    for (const Transition& t : net.transitions())
        if (t.level != Level::High)
            out.push_back(t.name);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

FiniteLts build_lts(const NetSystem& net, const Marking& start, uint64_t max_states) {
    FiniteLts lts;
    lts.alphabet = net_alphabet(net);
    std::unordered_map<std::string, int32_t> sym_idx;
    for (std::size_t i = 0; i < lts.alphabet.size(); ++i)
        sym_idx[lts.alphabet[i]] = static_cast<int32_t>(i);

    std::unordered_map<Marking, uint32_t, MarkingHash> index;
    lts.states.push_back(start);
    lts.edges.emplace_back();
    index.emplace(start, 0);

    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (!enabled(net, lts.states[cur], t))
                continue;
            Marking next = fire(net, lts.states[cur], t);
            uint32_t target;
            auto it = index.find(next);
            if (it == index.end()) {
                if (lts.states.size() >= max_states)
                    throw OverflowError("reachability graph exceeds " +
                                        std::to_string(max_states) + " states");
                target = static_cast<uint32_t>(lts.states.size());
                index.emplace(next, target);
                lts.states.push_back(std::move(next));
                lts.edges.emplace_back();
                queue.push_back(target);
            } else {
                target = it->second;
            }
            auto sym = net.label(t);
            int32_t s = sym ? sym_idx.at(*sym) : -1;
            lts.edges[cur].emplace_back(s, target);
        }
    }
    return lts;
}

FiniteLts build_lts(const NetSystem& net, uint64_t max_states) {
    return build_lts(net, net.initial_marking(), max_states);
}

namespace {

// Reflexive-transitive silent closure, per state.
std::vector<std::vector<uint32_t>> silent_closure(const FiniteLts& lts) {
    std::vector<std::vector<uint32_t>> out(lts.state_count());
    for (uint32_t s = 0; s < lts.state_count(); ++s) {
        std::vector<bool> seen(lts.state_count(), false);
        std::deque<uint32_t> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            uint32_t cur = queue.front();
            queue.pop_front();
            out[s].push_back(cur);
            for (const auto& [sym, to] : lts.edges[cur]) {
                if (sym < 0 && !seen[to]) {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        std::sort(out[s].begin(), out[s].end());
    }
    return out;
}

struct Determinized {
    // next[state][symbol] = successor or -1
    std::vector<std::vector<int32_t>> next;
    std::vector<std::vector<uint32_t>> members;
};

Determinized determinize(const FiniteLts& lts,
                         const std::vector<std::vector<uint32_t>>& closure) {
    Determinized dfa;
    std::map<std::vector<uint32_t>, uint32_t> index;
    std::vector<uint32_t> init = closure[0];
    index.emplace(init, 0);
    dfa.members.push_back(init);
    dfa.next.emplace_back(lts.alphabet.size(), -1);

    std::deque<uint32_t> queue{0};
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop_front();
        for (std::size_t sym = 0; sym < lts.alphabet.size(); ++sym) {
            std::set<uint32_t> reached;
            for (uint32_t q : dfa.members[cur])
                for (const auto& [s, to] : lts.edges[q])
                    if (s == static_cast<int32_t>(sym))
                        for (uint32_t c : closure[to])
                            reached.insert(c);
            if (reached.empty())
                continue;
            std::vector<uint32_t> key(reached.begin(), reached.end());
            auto [it, inserted] = index.emplace(key, static_cast<uint32_t>(dfa.members.size()));
            if (inserted) {
                dfa.members.push_back(key);
                dfa.next.emplace_back(lts.alphabet.size(), -1);
                queue.push_back(it->second);
            }
            dfa.next[cur][sym] = static_cast<int32_t>(it->second);
        }
    }
    return dfa;
}

} // namespace

DeterministicLts determinize_lts(const FiniteLts& lts) {
    Determinized d = determinize(lts, silent_closure(lts));
    DeterministicLts out;
    out.alphabet = lts.alphabet;
    out.next = std::move(d.next);
    return out;
}

std::optional<std::vector<std::string>> language_difference(const FiniteLts& a,
                                                            const FiniteLts& b) {
    if (a.alphabet != b.alphabet)
        throw UsageError("language comparison requires identical alphabets");

    Determinized da = determinize(a, silent_closure(a));
    Determinized db = determinize(b, silent_closure(b));

    // Prefix-closed languages with every state accepting: the languages differ
    // exactly when the product reaches a state pair enabling different symbols.
    struct Node {
        int64_t parent;
        int32_t symbol;
    };
    std::vector<Node> trace;
    std::map<std::pair<uint32_t, uint32_t>, std::size_t> seen;
    std::deque<std::pair<uint32_t, uint32_t>> queue;
    queue.emplace_back(0, 0);
    seen.emplace(std::make_pair(0u, 0u), 0);
    trace.push_back(Node{-1, -1});

    auto word_of = [&](std::size_t node, int32_t last_sym) {
        std::vector<std::string> word;
        word.push_back(a.alphabet[last_sym]);
        for (std::size_t i = node; trace[i].symbol >= 0; i = trace[i].parent)
            word.push_back(a.alphabet[trace[i].symbol]);
        std::reverse(word.begin(), word.end());
        return word;
    };

    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        std::size_t cur = seen.at({sa, sb});
        for (std::size_t sym = 0; sym < a.alphabet.size(); ++sym) {
            int32_t na = da.next[sa][sym];
            int32_t nb = db.next[sb][sym];
            if ((na < 0) != (nb < 0))
                return word_of(cur, static_cast<int32_t>(sym));
            if (na < 0)
                continue;
            auto key = std::make_pair(static_cast<uint32_t>(na), static_cast<uint32_t>(nb));
            if (seen.count(key))
                continue;
            seen.emplace(key, trace.size());
            trace.push_back(Node{static_cast<int64_t>(cur), static_cast<int32_t>(sym)});
            queue.push_back(key);
        }
    }
    return std::nullopt;
}

bool language_equivalent(const FiniteLts& a, const FiniteLts& b) {
    return !language_difference(a, b).has_value();
}

namespace {

struct Saturated {
    // per state, per symbol: sorted saturated successors
    std::vector<std::vector<std::vector<uint32_t>>> obs;
    std::vector<std::vector<uint32_t>> silent; // reflexive-transitive
};

Saturated saturate(const FiniteLts& lts) {
    Saturated out;
    out.silent = silent_closure(lts);
    out.obs.assign(lts.state_count(),
                   std::vector<std::vector<uint32_t>>(lts.alphabet.size()));
    for (uint32_t s = 0; s < lts.state_count(); ++s) {
        for (std::size_t sym = 0; sym < lts.alphabet.size(); ++sym) {
            std::set<uint32_t> acc;
            for (uint32_t pre : out.silent[s])
                for (const auto& [lbl, to] : lts.edges[pre])
                    if (lbl == static_cast<int32_t>(sym))
                        for (uint32_t post : out.silent[to])
                            acc.insert(post);
            out.obs[s][sym].assign(acc.begin(), acc.end());
        }
    }
    return out;
}

// States of b are appended after the states of a.
struct UnionSystem {
    Saturated sat;
    uint32_t offset = 0; // index of b's initial state
    std::size_t symbols = 0;
    uint32_t total = 0;
};

UnionSystem build_union(const FiniteLts& a, const FiniteLts& b) {
    if (a.alphabet != b.alphabet)
        throw UsageError("bisimulation comparison requires identical alphabets");
    UnionSystem u;
    u.offset = a.state_count();
    u.total = a.state_count() + b.state_count();
    u.symbols = a.alphabet.size();
    Saturated sa = saturate(a);
    Saturated sb = saturate(b);
    u.sat.silent.resize(u.total);
    u.sat.obs.resize(u.total);
    for (uint32_t s = 0; s < a.state_count(); ++s) {
        u.sat.silent[s] = sa.silent[s];
        u.sat.obs[s] = sa.obs[s];
    }
    for (uint32_t s = 0; s < b.state_count(); ++s) {
        auto shift = [&](std::vector<uint32_t> v) {
            for (uint32_t& x : v)
                x += u.offset;
            return v;
        };
        u.sat.silent[u.offset + s] = shift(sb.silent[s]);
        u.sat.obs[u.offset + s].resize(u.symbols);
        for (std::size_t sym = 0; sym < u.symbols; ++sym)
            u.sat.obs[u.offset + s][sym] = shift(sb.obs[s][sym]);
    }
    return u;
}

// Coarsest partition stable under saturated observable moves and silent
// closure; weak bisimilarity on the original systems.
std::vector<uint32_t> refine_partition(const UnionSystem& u) {
    std::vector<uint32_t> block(u.total, 0);
    while (true) {
        std::map<std::vector<uint32_t>, uint32_t> sig_index;
        std::vector<uint32_t> next(u.total);
        for (uint32_t s = 0; s < u.total; ++s) {
            std::set<uint32_t> sig_set;
            std::vector<uint32_t> sig;
            sig.push_back(block[s]);
            for (std::size_t sym = 0; sym < u.symbols; ++sym) {
                sig_set.clear();
                for (uint32_t to : u.sat.obs[s][sym])
                    sig_set.insert(block[to]);
                sig.push_back(static_cast<uint32_t>(sig_set.size()));
                sig.insert(sig.end(), sig_set.begin(), sig_set.end());
            }
            sig_set.clear();
            for (uint32_t to : u.sat.silent[s])
                sig_set.insert(block[to]);
            sig.push_back(static_cast<uint32_t>(sig_set.size()));
            sig.insert(sig.end(), sig_set.begin(), sig_set.end());
            auto [it, _] = sig_index.emplace(sig, static_cast<uint32_t>(sig_index.size()));
            next[s] = it->second;
        }
        if (next == block)
            return block;
        block = std::move(next);
    }
}

} // namespace

BisimResult weakly_bisimilar(const FiniteLts& a, const FiniteLts& b) {
    UnionSystem u = build_union(a, b);
    std::vector<uint32_t> block = refine_partition(u);
    BisimResult out;
    out.bisimilar = block[0] == block[u.offset];
    if (out.bisimilar) {
        for (uint32_t i = 0; i < u.offset; ++i)
            for (uint32_t j = u.offset; j < u.total; ++j)
                if (block[i] == block[j])
                    out.relation.emplace_back(i, j - u.offset);
    }
    return out;
}

bool weak_simulation_check(const FiniteLts& a, const FiniteLts& b,
                           const RelationTable& r) {
    if (a.alphabet != b.alphabet)
        throw UsageError("simulation check requires identical alphabets");
    bool has_init = false;
    for (const auto& [qa, qb] : r)
        if (qa == 0 && qb == 0)
            has_init = true;
    if (!has_init)
        return false;

    Saturated sb = saturate(b);
    auto related = [&](uint32_t qa, uint32_t qb) {
        return std::find(r.begin(), r.end(), std::make_pair(qa, qb)) != r.end();
    };
    for (const auto& [q1, q1b] : r) {
        for (const auto& [sym, q2] : a.edges[q1]) {
            bool matched = false;
            if (sym < 0) {
                for (uint32_t q2b : sb.silent[q1b])
                    if (related(q2, q2b)) {
                        matched = true;
                        break;
                    }
            } else {
                for (uint32_t q2b : sb.obs[q1b][sym])
                    if (related(q2, q2b)) {
                        matched = true;
                        break;
                    }
            }
            if (!matched)
                return false;
        }
    }
    return true;
}

namespace {

struct WordTable {
    // Words interned as (parent word, symbol) pairs; 0 is the empty word.
    std::vector<std::pair<uint32_t, int32_t>> nodes{{0, -1}};
    std::map<std::pair<uint32_t, int32_t>, uint32_t> index;

    uint32_t extend(uint32_t word, int32_t symbol) {
        auto key = std::make_pair(word, symbol);
        auto it = index.find(key);
        if (it != index.end())
            return it->second;
        uint32_t id = static_cast<uint32_t>(nodes.size());
        nodes.push_back(key);
        index.emplace(key, id);
        return id;
    }

    std::vector<int32_t> symbols(uint32_t word) const {
        std::vector<int32_t> out;
        for (uint32_t w = word; nodes[w].second >= 0; w = nodes[w].first)
            out.push_back(nodes[w].second);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

// Words realizable by runs of at most `steps` transitions.
std::set<uint32_t> reachable_words(const NetSystem& net, uint32_t steps,
                                   WordTable& words,
                                   const std::vector<std::string>& alphabet) {
    std::unordered_map<std::string, int32_t> sym_idx;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        sym_idx[alphabet[i]] = static_cast<int32_t>(i);

    std::set<uint32_t> seen_words{0};
    std::map<std::pair<uint32_t, Marking>, uint32_t> best; // min steps used
    std::deque<std::tuple<uint32_t, Marking, uint32_t>> queue;
    queue.emplace_back(0, net.initial_marking(), 0);
    best.emplace(std::make_pair(0u, net.initial_marking()), 0);

    while (!queue.empty()) {
        auto [word, m, used] = queue.front();
        queue.pop_front();
        if (used >= steps)
            continue;
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (!enabled(net, m, t))
                continue;
            Marking next = fire(net, m, t);
            auto sym = net.label(t);
            uint32_t next_word = sym ? words.extend(word, sym_idx.at(*sym)) : word;
            auto key = std::make_pair(next_word, next);
            auto it = best.find(key);
            if (it != best.end() && it->second <= used + 1)
                continue;
            best[key] = used + 1;
            seen_words.insert(next_word);
            queue.emplace_back(next_word, std::move(next), used + 1);
        }
    }
    return seen_words;
}

} // namespace

std::set<std::vector<std::string>> truncated_language(const NetSystem& net,
                                                      uint32_t steps) {
    WordTable words;
    std::vector<std::string> alphabet = net_alphabet(net);
    std::set<uint32_t> ids = reachable_words(net, steps, words, alphabet);
    std::set<std::vector<std::string>> out;
    for (uint32_t id : ids) {
        std::vector<std::string> word;
        for (int32_t s : words.symbols(id))
            word.push_back(alphabet[s]);
        out.insert(std::move(word));
    }
    return out;
}

std::optional<std::vector<std::string>> truncated_language_difference(
    const NetSystem& a, const NetSystem& b, uint32_t steps) {
    std::vector<std::string> alpha_a = net_alphabet(a);
    std::vector<std::string> alpha_b = net_alphabet(b);
    if (alpha_a != alpha_b)
        throw UsageError("truncated comparison requires identical alphabets");
    WordTable words;
    std::set<uint32_t> wa = reachable_words(a, steps, words, alpha_a);
    std::set<uint32_t> wb = reachable_words(b, steps, words, alpha_a);
    std::vector<uint32_t> diff;
    std::set_symmetric_difference(wa.begin(), wa.end(), wb.begin(), wb.end(),
                                  std::back_inserter(diff));
    if (diff.empty())
        return std::nullopt;
    uint32_t pick = diff.front();
    std::size_t best_len = words.symbols(pick).size();
    for (uint32_t id : diff) {
        if (words.symbols(id).size() < best_len) {
            pick = id;
            best_len = words.symbols(id).size();
        }
    }
    std::vector<std::string> word;
    for (int32_t s : words.symbols(pick))
        word.push_back(alpha_a[s]);
    return word;
}

} // namespace nicheck
