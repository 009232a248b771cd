#include "nicheck/text_format.hpp"

#include "nicheck/lts.hpp"
#include "nicheck/reach.hpp"

#include <cctype>
#include <sstream>

namespace nicheck {

namespace {

struct Token {
    std::string text;
    int col;
};

// '#' opens a comment only at a token boundary; inside a token it is an
// ordinary character (construction names use it).
std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#')
            break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        out.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

bool plain_name(const std::string& s) {
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

bool reserved_name(const std::string& s) {
    if (s.empty())
        return false;
    if (s.back() == '\'')
        return true;
    for (char c : s)
        if (c == '#' || c == '@' || c == '\'')
            return true;
    return false;
}

void check_name(const Token& tok, int line, const ParseOptions& opts) {
    if (opts.allow_reserved) {
        bool ok = !tok.text.empty() &&
                  (std::isalpha(static_cast<unsigned char>(tok.text[0])) ||
                   tok.text[0] == '_');
        for (char c : tok.text)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
                c != '#' && c != '@' && c != '\'')
                ok = false;
        if (!ok)
            throw ParseError("invalid name '" + tok.text + "'", line, tok.col);
        return;
    }
    if (reserved_name(tok.text))
        throw ParseError("name '" + tok.text +
                             "' uses a reserved character ('#', '@' or trailing ')",
                         line, tok.col);
    if (!plain_name(tok.text))
        throw ParseError("invalid name '" + tok.text + "'", line, tok.col);
}

uint32_t parse_nat(const Token& tok, int line, uint32_t minimum) {
    for (char c : tok.text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("expected a number, got '" + tok.text + "'", line, tok.col);
    unsigned long long v;
    try {
        v = std::stoull(tok.text);
    } catch (...) {
        throw ParseError("number out of range: " + tok.text, line, tok.col);
    }
    if (v < minimum)
        throw ParseError("value must be at least " + std::to_string(minimum), line,
                         tok.col);
    if (v > 0xffffffffull)
        throw ParseError("number out of range: " + tok.text, line, tok.col);
    return static_cast<uint32_t>(v);
}

} // namespace

NetDocument parse_net(const std::string& text, const ParseOptions& opts) {
    NetDocument doc;
    NetBuilder nb;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    struct PendingArc {
        std::string from, to;
        uint32_t weight;
        int line, col;
    };
    std::vector<PendingArc> arcs;

    while (std::getline(in, raw)) {
        ++line_no;
        std::vector<Token> toks = tokenize(raw);
        if (toks.empty())
            continue;
        const std::string& kw = toks[0].text;
        if (kw == "place") {
            if (toks.size() != 3)
                throw ParseError("expected: place NAME COUNT", line_no, toks[0].col);
            check_name(toks[1], line_no, opts);
            uint32_t count = parse_nat(toks[2], line_no, 0);
            if (doc.declared_at.count(toks[1].text))
                throw ParseError("duplicate identifier '" + toks[1].text +
                                     "' (first declared on line " +
                                     std::to_string(doc.declared_at[toks[1].text]) + ")",
                                 line_no, toks[1].col);
            nb.add_place(toks[1].text, count);
            doc.declared_at[toks[1].text] = line_no;
        } else if (kw == "trans") {
            if (toks.size() != 3)
                throw ParseError("expected: trans NAME (L|H|D)", line_no, toks[0].col);
            check_name(toks[1], line_no, opts);
            Level lv;
            if (toks[2].text == "L")
                lv = Level::Low;
            else if (toks[2].text == "H")
                lv = Level::High;
            else if (toks[2].text == "D")
                lv = Level::Down;
            else
                throw ParseError("level must be L, H or D, got '" + toks[2].text + "'",
                                 line_no, toks[2].col);
            if (doc.declared_at.count(toks[1].text))
                throw ParseError("duplicate identifier '" + toks[1].text +
                                     "' (first declared on line " +
                                     std::to_string(doc.declared_at[toks[1].text]) + ")",
                                 line_no, toks[1].col);
            nb.add_transition(toks[1].text, lv);
            doc.declared_at[toks[1].text] = line_no;
        } else if (kw == "arc") {
            if (toks.size() != 4 && toks.size() != 5)
                throw ParseError("expected: arc FROM -> TO [WEIGHT]", line_no,
                                 toks[0].col);
            if (toks[2].text != "->")
                throw ParseError("expected '->' between arc endpoints", line_no,
                                 toks[2].col);
            uint32_t weight = 1;
            if (toks.size() == 5)
                weight = parse_nat(toks[4], line_no, 1);
            arcs.push_back(PendingArc{toks[1].text, toks[3].text, weight, line_no,
                                      toks[1].col});
        } else {
            throw ParseError("unknown declaration '" + kw + "'", line_no, toks[0].col);
        }
    }

    for (const PendingArc& a : arcs) {
        try {
            nb.add_arc(a.from, a.to, a.weight);
        } catch (const StructuralError& e) {
            throw ParseError(e.what(), a.line, a.col);
        }
    }
    doc.net = nb.build();
    return doc;
}

std::string serialize_net(const NetSystem& net) {
    std::ostringstream out;
    for (uint32_t p = 0; p < net.place_count(); ++p)
        out << "place " << net.place_name(p) << " " << net.initial_marking()[p] << "\n";
    for (const Transition& t : net.transitions())
        out << "trans " << t.name << " " << level_name(t.level) << "\n";
    for (const Transition& t : net.transitions()) {
        for (const Arc& a : t.pre) {
            out << "arc " << net.place_name(a.place) << " -> " << t.name;
            if (a.weight != 1)
                out << " " << a.weight;
            out << "\n";
        }
        for (const Arc& a : t.post) {
            out << "arc " << t.name << " -> " << net.place_name(a.place);
            if (a.weight != 1)
                out << " " << a.weight;
            out << "\n";
        }
    }
    return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string net_to_dot(const NetSystem& net, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    out << "  rankdir=LR;\n";
    for (uint32_t p = 0; p < net.place_count(); ++p) {
        out << "  \"p:" << dot_escape(net.place_name(p)) << "\" [shape=circle,label=\""
            << dot_escape(net.place_name(p));
        if (net.initial_marking()[p] > 0)
            out << "\\n" << net.initial_marking()[p];
        out << "\"];\n";
    }
    for (const Transition& t : net.transitions()) {
        out << "  \"t:" << dot_escape(t.name) << "\" [shape=box,label=\""
            << dot_escape(t.name) << " (" << level_name(t.level) << ")\"];\n";
    }
    for (const Transition& t : net.transitions()) {
        for (const Arc& a : t.pre) {
            out << "  \"p:" << dot_escape(net.place_name(a.place)) << "\" -> \"t:"
                << dot_escape(t.name) << "\"";
            if (a.weight != 1)
                out << " [label=\"" << a.weight << "\"]";
            out << ";\n";
        }
        for (const Arc& a : t.post) {
            out << "  \"t:" << dot_escape(t.name) << "\" -> \"p:"
                << dot_escape(net.place_name(a.place)) << "\"";
            if (a.weight != 1)
                out << " [label=\"" << a.weight << "\"]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string reachability_to_dot(const NetSystem& net, uint64_t max_states,
                                const std::string& name) {
    CoverabilityTree tree = karp_miller(net);
    if (tree.has_omega)
        throw UsageError("net is unbounded: place " +
                         net.place_name(*tree.omega_place) +
                         " can grow without bound");
    if (!tree.complete)
        throw OverflowError("coverability analysis exceeded its node cap");

    FiniteLts lts = build_lts(net, max_states);
    auto marking_label = [&](const Marking& m) {
        std::string s = "{";
        bool first = true;
        for (uint32_t p = 0; p < net.place_count(); ++p) {
            if (m[p] == 0)
                continue;
            if (!first)
                s += ",";
            first = false;
            s += net.place_name(p) + ":" + std::to_string(m[p]);
        }
        s += "}";
        return s;
    };

    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (uint32_t s = 0; s < lts.state_count(); ++s) {
        out << "  s" << s << " [label=\"" << dot_escape(marking_label(lts.states[s]))
            << "\"";
        if (s == 0)
            out << ",penwidth=2";
        out << "];\n";
    }
    for (uint32_t s = 0; s < lts.state_count(); ++s) {
        for (const auto& [sym, to] : lts.edges[s]) {
            out << "  s" << s << " -> s" << to << " [label=\""
                << (sym < 0 ? std::string("\\u03b5")
                            : dot_escape(lts.alphabet[sym]))
                << "\"";
            if (sym < 0)
                out << ",style=dashed";
            out << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace nicheck
