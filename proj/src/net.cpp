#include "nicheck/net.hpp"

#include <algorithm>

namespace nicheck {

const char* level_name(Level lv) {
    switch (lv) {
    case Level::Low: return "L";
    case Level::High: return "H";
    case Level::Down: return "D";
    }
    return "?";
}

bool covered_by(const Marking& a, const Marking& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.tokens[i] > b.tokens[i])
            return false;
    return true;
}

std::optional<uint32_t> NetSystem::place_index(const std::string& name) const {
    auto it = place_idx_.find(name);
    if (it == place_idx_.end())
        return std::nullopt;
    return it->second;
}

std::optional<uint32_t> NetSystem::transition_index(const std::string& name) const {
    auto it = trans_idx_.find(name);
    if (it == trans_idx_.end())
        return std::nullopt;
    return it->second;
}

uint32_t NetSystem::require_place(const std::string& name) const {
    auto idx = place_index(name);
    if (!idx)
        throw StructuralError("unknown place: " + name);
    return *idx;
}

uint32_t NetSystem::require_transition(const std::string& name) const {
    auto idx = transition_index(name);
    if (!idx)
        throw StructuralError("unknown transition: " + name);
    return *idx;
}

int64_t NetSystem::delta(uint32_t t, uint32_t p) const {
    int64_t d = 0;
    for (const Arc& a : transitions_[t].post)
        if (a.place == p)
            d += a.weight;
    for (const Arc& a : transitions_[t].pre)
        if (a.place == p)
            d -= a.weight;
    return d;
}

std::optional<std::string> NetSystem::label(uint32_t t) const {
    if (transitions_[t].level == Level::High)
        return std::nullopt;
    return transitions_[t].name;
}

std::vector<uint32_t> NetSystem::transitions_of_level(Level lv) const {
    std::vector<uint32_t> out;
    for (uint32_t t = 0; t < transition_count(); ++t)
        if (transitions_[t].level == lv)
            out.push_back(t);
    return out;
}

bool NetSystem::has_level(Level lv) const {
    return std::any_of(transitions_.begin(), transitions_.end(),
                       [lv](const Transition& t) { return t.level == lv; });
}

bool NetSystem::operator==(const NetSystem& other) const {
    if (places_ != other.places_ || initial_ != other.initial_)
        return false;
    if (transitions_.size() != other.transitions_.size())
        return false;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const Transition& a = transitions_[i];
        const Transition& b = other.transitions_[i];
        if (a.name != b.name || a.level != b.level)
            return false;
        auto eq_arcs = [](const std::vector<Arc>& x, const std::vector<Arc>& y) {
            if (x.size() != y.size())
                return false;
            for (std::size_t k = 0; k < x.size(); ++k)
                if (x[k].place != y[k].place || x[k].weight != y[k].weight)
                    return false;
            return true;
        };
        if (!eq_arcs(a.pre, b.pre) || !eq_arcs(a.post, b.post))
            return false;
    }
    return true;
}

uint32_t NetBuilder::add_place(const std::string& name, uint32_t initial) {
    if (net_.place_idx_.count(name) || net_.trans_idx_.count(name))
        throw StructuralError("duplicate identifier: " + name);
    uint32_t idx = static_cast<uint32_t>(net_.places_.size());
    net_.places_.push_back(name);
    net_.initial_.tokens.push_back(initial);
    net_.place_idx_.emplace(name, idx);
    return idx;
}

uint32_t NetBuilder::add_transition(const std::string& name, Level lv) {
    if (net_.place_idx_.count(name) || net_.trans_idx_.count(name))
        throw StructuralError("duplicate identifier: " + name);
    uint32_t idx = static_cast<uint32_t>(net_.transitions_.size());
    net_.transitions_.push_back(Transition{name, lv, {}, {}});
    net_.trans_idx_.emplace(name, idx);
    return idx;
}

namespace {

void merge_arc(std::vector<Arc>& arcs, uint32_t place, uint32_t weight) {
    for (Arc& a : arcs) {
        if (a.place == place) {
            a.weight += weight;
            return;
        }
    }
    arcs.push_back(Arc{place, weight});
}

} // namespace

void NetBuilder::arc_pt(uint32_t place, uint32_t trans, uint32_t weight) {
    if (place >= net_.places_.size() || trans >= net_.transitions_.size())
        throw StructuralError("arc endpoint out of range");
    if (weight == 0)
        throw StructuralError("arc weight must be positive");
    merge_arc(net_.transitions_[trans].pre, place, weight);
}

void NetBuilder::arc_tp(uint32_t trans, uint32_t place, uint32_t weight) {
    if (place >= net_.places_.size() || trans >= net_.transitions_.size())
        throw StructuralError("arc endpoint out of range");
    if (weight == 0)
        throw StructuralError("arc weight must be positive");
    merge_arc(net_.transitions_[trans].post, place, weight);
}

void NetBuilder::add_arc(const std::string& from, const std::string& to, uint32_t weight) {
    auto p_from = net_.place_idx_.find(from);
    auto t_from = net_.trans_idx_.find(from);
    auto p_to = net_.place_idx_.find(to);
    auto t_to = net_.trans_idx_.find(to);
    if (p_from != net_.place_idx_.end() && t_to != net_.trans_idx_.end()) {
        arc_pt(p_from->second, t_to->second, weight);
    } else if (t_from != net_.trans_idx_.end() && p_to != net_.place_idx_.end()) {
        arc_tp(t_from->second, p_to->second, weight);
    } else if (p_from == net_.place_idx_.end() && t_from == net_.trans_idx_.end()) {
        throw StructuralError("unknown arc source: " + from);
    } else if (p_to == net_.place_idx_.end() && t_to == net_.trans_idx_.end()) {
        throw StructuralError("unknown arc target: " + to);
    } else {
        throw StructuralError("arc must connect a place and a transition: " + from +
                              " -> " + to);
    }
}

NetSystem NetBuilder::build() {
    for (Transition& t : net_.transitions_) {
        auto by_place = [](const Arc& a, const Arc& b) { return a.place < b.place; };
        std::sort(t.pre.begin(), t.pre.end(), by_place);
        std::sort(t.post.begin(), t.post.end(), by_place);
    }
    return std::move(net_);
}

bool enabled(const NetSystem& net, const Marking& m, uint32_t t) {
    if (t >= net.transition_count())
        throw StructuralError("transition index out of range");
    for (const Arc& a : net.transition(t).pre)
        if (m.tokens[a.place] < a.weight)
            return false;
    return true;
}

bool enabled(const NetSystem& net, const Marking& m, const std::string& t) {
    return enabled(net, m, net.require_transition(t));
}

Marking fire(const NetSystem& net, const Marking& m, uint32_t t) {
    if (t >= net.transition_count())
        throw StructuralError("transition index out of range");
    const Transition& tr = net.transition(t);
    for (const Arc& a : tr.pre) {
        if (m.tokens[a.place] < a.weight)
            throw FiringError("transition " + tr.name + " not enabled (place " +
                                  net.place_name(a.place) + " holds " +
                                  std::to_string(m.tokens[a.place]) + ", needs " +
                                  std::to_string(a.weight) + ")",
                              tr.name, net.place_name(a.place));
    }
    Marking out = m;
    for (const Arc& a : tr.pre)
        out.tokens[a.place] -= a.weight;
    for (const Arc& a : tr.post)
        out.tokens[a.place] += a.weight;
    return out;
}

Marking fire(const NetSystem& net, const Marking& m, const std::string& t) {
    return fire(net, m, net.require_transition(t));
}

Marking fire_sequence(const NetSystem& net, const Marking& m,
                      std::span<const uint32_t> seq) {
    Marking cur = m;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            cur = fire(net, cur, seq[i]);
        } catch (FiringError& e) {
            e.index = i;
            throw;
        }
    }
    return cur;
}

Marking fire_sequence(const NetSystem& net, const Marking& m,
                      const std::vector<std::string>& seq) {
    std::vector<uint32_t> idx;
    idx.reserve(seq.size());
    for (const std::string& name : seq)
        idx.push_back(net.require_transition(name));
    return fire_sequence(net, m, idx);
}

NetSystem compose(const NetSystem& a, const NetSystem& b) {
    for (const std::string& p : b.places())
        if (a.place_index(p))
            throw StructuralError("compose: place sets overlap on " + p);
    // A place of one component may not be a transition of the other.
    for (const std::string& p : b.places())
        if (a.transition_index(p))
            throw StructuralError("compose: identifier " + p +
                                  " is a place in one net and a transition in the other");
    for (const Transition& t : b.transitions())
        if (a.place_index(t.name))
            throw StructuralError("compose: identifier " + t.name +
                                  " is a place in one net and a transition in the other");

    NetBuilder nb;
    for (uint32_t p = 0; p < a.place_count(); ++p)
        nb.add_place(a.place_name(p), a.initial_marking()[p]);
    for (uint32_t p = 0; p < b.place_count(); ++p)
        nb.add_place(b.place_name(p), b.initial_marking()[p]);

    for (const Transition& t : a.transitions()) {
        if (auto other = b.transition_index(t.name)) {
            if (b.transition(*other).level != t.level)
                throw StructuralError("compose: shared transition " + t.name +
                                      " has conflicting levels");
        }
        nb.add_transition(t.name, t.level);
        for (const Arc& arc : t.pre)
            nb.add_arc(a.place_name(arc.place), t.name, arc.weight);
        for (const Arc& arc : t.post)
            nb.add_arc(t.name, a.place_name(arc.place), arc.weight);
    }
    for (const Transition& t : b.transitions()) {
        if (!nb.has_transition(t.name))
            nb.add_transition(t.name, t.level);
        for (const Arc& arc : t.pre)
            nb.add_arc(b.place_name(arc.place), t.name, arc.weight);
        for (const Arc& arc : t.post)
            nb.add_arc(t.name, b.place_name(arc.place), arc.weight);
    }
    return nb.build();
}

NetSystem restricted(const NetSystem& net, const std::vector<std::string>& removed) {
    std::vector<bool> drop(net.transition_count(), false);
    for (const std::string& name : removed)
        drop[net.require_transition(name)] = true;

    NetBuilder nb;
    for (uint32_t p = 0; p < net.place_count(); ++p)
        nb.add_place(net.place_name(p), net.initial_marking()[p]);
    for (uint32_t t = 0; t < net.transition_count(); ++t) {
        if (drop[t])
            continue;
        const Transition& tr = net.transition(t);
        nb.add_transition(tr.name, tr.level);
        for (const Arc& arc : tr.pre)
            nb.add_arc(net.place_name(arc.place), tr.name, arc.weight);
        for (const Arc& arc : tr.post)
            nb.add_arc(tr.name, net.place_name(arc.place), arc.weight);
    }
    return nb.build();
}

std::vector<std::string> observable_projection(const NetSystem& net,
                                               const std::vector<std::string>& seq) {
    std::vector<std::string> out;
    for (const std::string& name : seq) {
        uint32_t t = net.require_transition(name);
        if (auto sym = net.label(t))
            out.push_back(*sym);
    }
    return out;
}

} // namespace nicheck
