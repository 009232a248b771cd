#include "nicheck/check.hpp"
#include "nicheck/report_json.hpp"
#include "nicheck/text_format.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitSecure = 0;
constexpr int kExitInsecure = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitError = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw nicheck::UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw nicheck::UsageError("cannot write " + path);
    out << text;
}

nicheck::SearchLimits resolve_limits(uint64_t state_bound, uint32_t depth_bound) {
    nicheck::SearchLimits limits;
    if (const char* env = std::getenv("NICHECK_STATE_BOUND")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw nicheck::UsageError("NICHECK_STATE_BOUND must be a positive integer");
        limits.max_states = v;
    }
    if (state_bound != 0)
        limits.max_states = state_bound;
    if (depth_bound != 0)
        limits.max_depth = depth_bound;
    return limits;
}

void print_report(const nicheck::CheckReport& report) {
    using namespace nicheck;
    std::cout << property_name(report.property) << ": "
              << security_outcome_name(report.verdict) << "\n";
    for (const SubcheckResult& s : report.subchecks) {
        std::cout << "  " << s.name << ": " << security_outcome_name(s.outcome);
        if (s.proof)
            std::cout << " [" << unreach_proof_name(*s.proof) << "]";
        std::cout << "\n";
    }
    if (report.witness) {
        const CheckWitness& w = *report.witness;
        auto join = [](const std::vector<std::string>& v) {
            std::string out;
            for (const std::string& s : v) {
                if (!out.empty())
                    out += " ";
                out += s;
            }
            return out.empty() ? "(empty)" : out;
        };
        std::cout << "  witness: h=" << w.high << " l=" << w.low << " w=["
                  << join(w.run_prefix) << "] s=[" << join(w.low_suffix)
                  << "] direction=" << direction_name(w.direction) << "\n";
    }
}

void print_oracle(const nicheck::OracleReport& report) {
    using namespace nicheck;
    std::cout << "oracle: " << security_outcome_name(report.outcome) << "\n";
    if (report.witness && !report.witness->word.empty()) {
        std::cout << "  distinguishing word:";
        for (const std::string& s : report.witness->word)
            std::cout << " " << s;
        std::cout << "\n";
    }
    if (!report.note.empty())
        std::cout << "  note: " << report.note << "\n";
}

int exit_code(nicheck::SecurityOutcome outcome) {
    switch (outcome) {
    case nicheck::SecurityOutcome::Secure: return kExitSecure;
    case nicheck::SecurityOutcome::Insecure: return kExitInsecure;
    case nicheck::SecurityOutcome::Unknown: return kExitUnknown;
    }
    return kExitError;
}

} // namespace

int main(int argc, char** argv) {
    using namespace nicheck;
    CLI::App app{"Non-interference checker for place/transition nets"};
    app.require_subcommand(1);

    // check
    std::string check_property;
    std::string check_engine = "structural";
    std::string check_input;
    std::string check_dot;
    uint64_t state_bound = 0;
    uint32_t depth_bound = 0;
    bool json_output = false;
    bool allow_constructed = false;
    auto* check = app.add_subcommand("check", "Decide a non-interference property");
    check->add_option("--property", check_property, "ndc, sbndc, bndc, ini or bini")
        ->required();
    check->add_option("--engine", check_engine, "structural, oracle or both")
        ->check(CLI::IsMember({"structural", "oracle", "both"}));
    check->add_option("--state-bound", state_bound, "max explored markings");
    check->add_option("--depth-bound", depth_bound, "max search depth");
    check->add_flag("--json", json_output, "emit the JSON report");
    check->add_option("--dot", check_dot, "also write the net structure graph");
    check->add_flag("--allow-constructed", allow_constructed,
                    "accept names produced by 'construct'");
    check->add_option("input", check_input, "net file")->required();

    // construct
    std::string construct_input;
    std::string construct_out;
    std::string pcheck_pair;
    std::string nd_trans;
    bool product = false;
    bool declassify = false;
    auto* construct = app.add_subcommand("construct", "Emit a derived check net");
    construct->add_option("--pcheck", pcheck_pair, "H,L pair for the two-copy check");
    construct->add_flag("--declassify", declassify,
                        "gate downgrading transitions too (pair check on "
                        "three-level nets)");
    construct->add_option("--nd", nd_trans, "downgrading transition for the mode net");
    construct->add_flag("--product", product, "inclusion product against the "
                                              "high-restriction");
    construct->add_option("-o,--output", construct_out, "output file (default stdout)");
    construct->add_option("input", construct_input, "net file")->required();

    // dot
    std::string dot_input;
    std::string dot_out;
    bool dot_rg = false;
    uint64_t dot_states = 0;
    auto* dot = app.add_subcommand("dot", "Export graphs in DOT format");
    dot->add_flag("--reachability", dot_rg, "export the reachability graph "
                                            "(bounded nets only)");
    dot->add_option("--state-bound", dot_states, "max markings for the export");
    dot->add_flag("--allow-constructed", allow_constructed,
                  "accept names produced by 'construct'");
    dot->add_option("-o,--output", dot_out, "output file (default stdout)");
    dot->add_option("input", dot_input, "net file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        ParseOptions popts;
        popts.allow_reserved = allow_constructed;

        if (check->parsed()) {
            auto property = property_from_string(check_property);
            if (!property)
                throw UsageError("unknown property '" + check_property + "'");
            NetDocument doc = parse_net(read_file(check_input), popts);
            SearchLimits limits = resolve_limits(state_bound, depth_bound);

            if (!check_dot.empty())
                write_output(check_dot, net_to_dot(doc.net));

            if (check_engine == "structural") {
                CheckReport report = run_check(doc.net, *property, limits);
                if (json_output)
                    std::cout << report_to_json(report);
                else
                    print_report(report);
                return exit_code(report.verdict);
            }
            if (check_engine == "oracle") {
                OracleReport report;
                try {
                    switch (*property) {
                    case Property::NDC: report = ndc_direct(doc.net); break;
                    case Property::SBNDC: report = sbndc_direct(doc.net); break;
                    case Property::BNDC: report = bndc_via_relation(doc.net); break;
                    case Property::INI: report = ini_direct(doc.net); break;
                    case Property::BINI: report = bini_direct(doc.net); break;
                    }
                } catch (const OverflowError& e) {
                    std::cerr << "oracle inapplicable: " << e.what() << "\n";
                    return kExitUnknown;
                }
                print_oracle(report);
                return exit_code(report.outcome);
            }
            // both
            CrossValidation cv = cross_validate(doc.net, *property, limits);
            if (json_output)
                std::cout << report_to_json(cv.structural);
            else
                print_report(cv.structural);
            if (cv.status == CrossValidation::Status::OracleSkipped) {
                std::cout << "oracle: skipped (" << cv.reason << ")\n";
                return exit_code(cv.structural.verdict);
            }
            print_oracle(*cv.oracle);
            if (cv.status == CrossValidation::Status::Disagree) {
                std::cerr << "engines disagree: " << cv.reason << "\n";
                return kExitError;
            }
            return exit_code(cv.structural.verdict);
        }

        if (construct->parsed()) {
            int modes = (!pcheck_pair.empty() ? 1 : 0) + (!nd_trans.empty() ? 1 : 0) +
                        (product ? 1 : 0);
            if (modes != 1)
                throw UsageError("pick exactly one of --pcheck, --nd, --product");
            NetDocument doc = parse_net(read_file(construct_input), ParseOptions{});
            if (!pcheck_pair.empty()) {
                auto comma = pcheck_pair.find(',');
                if (comma == std::string::npos)
                    throw UsageError("--pcheck expects H,L");
                PCheckNet c = build_pcheck(doc.net, pcheck_pair.substr(0, comma),
                                           pcheck_pair.substr(comma + 1), declassify);
                write_output(construct_out, serialize_net(c.net));
            } else if (!nd_trans.empty()) {
                NdNet nd = build_nd(doc.net, nd_trans);
                write_output(construct_out, serialize_net(nd.net));
            } else {
                ProductCheck p = build_ndc_product(doc.net);
                write_output(construct_out, serialize_net(p.net));
            }
            return 0;
        }

        if (dot->parsed()) {
            NetDocument doc = parse_net(read_file(dot_input), popts);
            uint64_t cap = dot_states == 0 ? 100'000 : dot_states;
            std::string text =
                dot_rg ? reachability_to_dot(doc.net, cap) : net_to_dot(doc.net);
            write_output(dot_out, text);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
