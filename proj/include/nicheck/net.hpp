#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nicheck {

// Transition levels. Low and Down are observable, High is silent.
enum class Level { Low, High, Down };

const char* level_name(Level lv);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed net: duplicate names, dangling arc endpoints, level conflicts.
struct StructuralError : Error {
    using Error::Error;
};

// Firing a disabled transition; carries the first blocking place.
struct FiringError : Error {
    FiringError(const std::string& msg, std::string transition,
                std::string blocking_place, std::size_t index = 0)
        : Error(msg), transition(std::move(transition)),
          blocking_place(std::move(blocking_place)), index(index) {}
    std::string transition;
    std::string blocking_place;
    std::size_t index; // position in the offending sequence
};

struct UsageError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// State-space cap hit while building an explicit structure.
struct OverflowError : Error {
    using Error::Error;
};

/// Token count per place, in place-declaration order.
struct Marking {
    std::vector<uint32_t> tokens;

    Marking() = default;
    explicit Marking(std::vector<uint32_t> t) : tokens(std::move(t)) {}

    bool operator==(const Marking&) const = default;
    auto operator<=>(const Marking&) const = default;

    uint32_t operator[](uint32_t place) const { return tokens[place]; }
    std::size_t size() const { return tokens.size(); }
};

struct MarkingHash {
    std::size_t operator()(const Marking& m) const {
        std::size_t h = 1469598103934665603ull;
        for (uint32_t v : m.tokens) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// True iff a <= b pointwise.
bool covered_by(const Marking& a, const Marking& b);

struct Arc {
    uint32_t place;
    uint32_t weight;
};

struct Transition {
    std::string name;
    Level level = Level::Low;
    std::vector<Arc> pre;  // sorted by place index
    std::vector<Arc> post; // sorted by place index
};

/// A place/transition net with an initial marking. Immutable once built;
/// construct through NetBuilder. Place declaration order is the coordinate
/// order of markings.
class NetSystem {
public:
    NetSystem() = default;

    uint32_t place_count() const { return static_cast<uint32_t>(places_.size()); }
    uint32_t transition_count() const { return static_cast<uint32_t>(transitions_.size()); }

    const std::string& place_name(uint32_t p) const { return places_[p]; }
    const Transition& transition(uint32_t t) const { return transitions_[t]; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const std::vector<std::string>& places() const { return places_; }
    const Marking& initial_marking() const { return initial_; }

    std::optional<uint32_t> place_index(const std::string& name) const;
    std::optional<uint32_t> transition_index(const std::string& name) const;
    uint32_t require_place(const std::string& name) const;
    uint32_t require_transition(const std::string& name) const;

    /// Net token effect of t on p (post minus pre).
    int64_t delta(uint32_t t, uint32_t p) const;

    /// Observable label of t: the transition name for Low/Down, silent for High.
    std::optional<std::string> label(uint32_t t) const;

    std::vector<uint32_t> transitions_of_level(Level lv) const;
    bool has_level(Level lv) const;
    /// D = empty.
    bool is_two_level() const { return !has_level(Level::Down); }

    bool operator==(const NetSystem& other) const;

private:
    friend class NetBuilder;
    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    Marking initial_;
    std::unordered_map<std::string, uint32_t> place_idx_;
    std::unordered_map<std::string, uint32_t> trans_idx_;
};

/// Accumulates declarations, validates, and produces an immutable NetSystem.
class NetBuilder {
public:
    uint32_t add_place(const std::string& name, uint32_t initial = 0);
    uint32_t add_transition(const std::string& name, Level lv);
    void add_arc(const std::string& from, const std::string& to, uint32_t weight = 1);
    /// place -> transition
    void arc_pt(uint32_t place, uint32_t trans, uint32_t weight);
    /// transition -> place
    void arc_tp(uint32_t trans, uint32_t place, uint32_t weight);

    bool has_place(const std::string& name) const { return net_.place_idx_.count(name) > 0; }
    bool has_transition(const std::string& name) const { return net_.trans_idx_.count(name) > 0; }

    NetSystem build();

private:
    NetSystem net_;
};

bool enabled(const NetSystem& net, const Marking& m, uint32_t t);
bool enabled(const NetSystem& net, const Marking& m, const std::string& t);

Marking fire(const NetSystem& net, const Marking& m, uint32_t t);
Marking fire(const NetSystem& net, const Marking& m, const std::string& t);

Marking fire_sequence(const NetSystem& net, const Marking& m,
                      std::span<const uint32_t> seq);
Marking fire_sequence(const NetSystem& net, const Marking& m,
                      const std::vector<std::string>& seq);

/// Disjoint-place union; transitions with equal names are shared and act on
/// both components. Shared transitions must agree on level.
NetSystem compose(const NetSystem& a, const NetSystem& b);

/// Drops the named transitions; places and initial marking are kept.
NetSystem restricted(const NetSystem& net, const std::vector<std::string>& removed);

/// Applies the labelling map to a transition name sequence, dropping silent
/// symbols. Pure string map; the sequence need not be fireable.
std::vector<std::string> observable_projection(const NetSystem& net,
                                               const std::vector<std::string>& seq);

} // namespace nicheck
