#pragma once

#include "nicheck/net.hpp"

#include <map>
#include <string>

namespace nicheck {

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col)
        : Error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    int line;
    int col;
};

/// Parsed net plus the source line of every declaration.
struct NetDocument {
    NetSystem net;
    std::map<std::string, int> declared_at; // identifier -> line
};

struct ParseOptions {
    /// Accept the construction name scheme ('#', '@', trailing prime); off for
    /// user input so constructed nets can never collide with it.
    bool allow_reserved = false;
};

/// Line-oriented format:
///   place NAME NAT
///   trans NAME (L|H|D)
///   arc NAME -> NAME [NAT]     weight defaults to 1, zero is an error
/// '#' starts a comment; blank lines are ignored.
NetDocument parse_net(const std::string& text, const ParseOptions& opts = {});

/// Inverse of parse_net up to comments and spacing: parsing the output yields
/// a structurally equal net.
std::string serialize_net(const NetSystem& net);

/// Net structure graph: circles for places (token count in the label), boxes
/// for transitions (level in the label), weighted edges.
std::string net_to_dot(const NetSystem& net, const std::string& name = "net");

/// Reachability graph of a bounded net. Throws UsageError naming a place that
/// can grow without bound when the net is unbounded, OverflowError past
/// max_states.
std::string reachability_to_dot(const NetSystem& net, uint64_t max_states = 100'000,
                                const std::string& name = "rg");

} // namespace nicheck
