#include "nicheck/check.hpp"

#include <algorithm>

namespace nicheck {

const char* property_name(Property p) {
    switch (p) {
    case Property::NDC: return "ndc";
    case Property::SBNDC: return "sbndc";
    case Property::BNDC: return "bndc";
    case Property::INI: return "ini";
    case Property::BINI: return "bini";
    }
    return "?";
}

std::optional<Property> property_from_string(const std::string& s) {
    if (s == "ndc") return Property::NDC;
    if (s == "sbndc") return Property::SBNDC;
    if (s == "bndc") return Property::BNDC;
    if (s == "ini") return Property::INI;
    if (s == "bini") return Property::BINI;
    return std::nullopt;
}

const char* direction_name(CheckWitness::Direction d) {
    return d == CheckWitness::Direction::Causal ? "causal" : "conflict";
}

std::vector<std::string> CheckWitness::full_run() const {
    std::vector<std::string> out = run_prefix;
    out.push_back(high);
    out.insert(out.end(), low_suffix.begin(), low_suffix.end());
    return out;
}

namespace {

void accumulate(ReachStats& total, const ReachStats& s) {
    total.states_explored += s.states_explored;
    total.km_nodes += s.km_nodes;
    total.frontier_peak = std::max(total.frontier_peak, s.frontier_peak);
    total.depth_reached = std::max(total.depth_reached, s.depth_reached);
    total.state_bound = s.state_bound;
    total.depth_bound = s.depth_bound;
}

SecurityOutcome aggregate(const std::vector<SubcheckResult>& subs) {
    bool unknown = false;
    for (const SubcheckResult& s : subs) {
        if (s.outcome == SecurityOutcome::Insecure)
            return SecurityOutcome::Insecure;
        if (s.outcome == SecurityOutcome::Unknown)
            unknown = true;
    }
    return unknown ? SecurityOutcome::Unknown : SecurityOutcome::Secure;
}

SecurityOutcome verdict_of(const Verdict& v) {
    switch (v.outcome) {
    case ReachOutcome::TargetReachable: return SecurityOutcome::Insecure;
    case ReachOutcome::TargetUnreachableProven: return SecurityOutcome::Secure;
    case ReachOutcome::Unknown: return SecurityOutcome::Unknown;
    }
    return SecurityOutcome::Unknown;
}

// Replays an insecure product witness against the base net: the full run must
// fire and enable `low`; the same run without its diverging high firings must
// fire and leave `low` disabled. Internal soundness guard; failures are bugs,
// not verdicts.
void validate_inclusion_witness(const NetSystem& base,
                                const std::vector<std::string>& full_run,
                                const std::vector<std::string>& restricted_run,
                                const std::string& low) {
    Marking with_high = fire_sequence(base, base.initial_marking(), full_run);
    if (!enabled(base, with_high, low))
        throw std::logic_error("witness does not enable " + low +
                               " on the unrestricted branch");
    Marking without_high =
        fire_sequence(base, base.initial_marking(), restricted_run);
    if (enabled(base, without_high, low))
        throw std::logic_error("witness does not block " + low +
                               " on the restricted branch");
}

// The pair witness replays the diamond: M0[w>M1, M1[h>M2, M1[s>M3, M2[s>M4,
// and the low transition must be enabled on exactly the side the direction
// names.
void validate_pair_witness(const NetSystem& net, const CheckWitness& w) {
    Marking m1 = fire_sequence(net, net.initial_marking(), w.run_prefix);
    Marking m2 = fire(net, m1, w.high);
    Marking m3 = fire_sequence(net, m1, w.low_suffix);
    Marking m4 = fire_sequence(net, m2, w.low_suffix);
    bool at3 = enabled(net, m3, w.low);
    bool at4 = enabled(net, m4, w.low);
    bool causal = !at3 && at4;
    bool conflict = at3 && !at4;
    if (w.direction == CheckWitness::Direction::Causal ? !causal : !conflict)
        throw std::logic_error("pair witness does not exhibit the reported mismatch");
}

struct ProductOutcome {
    SubcheckResult sub;
    std::optional<CheckWitness> witness;
};

// Runs one inclusion product; `unmap` translates construction names back to
// base-net names. The diverging firings are the product's high transitions.
template <typename Unmap>
ProductOutcome run_product(const NetSystem& base, const ProductCheck& product,
                           const SearchLimits& limits, const std::string& name,
                           Unmap unmap) {
    ProductOutcome out;
    out.sub.name = name;
    Verdict v = decide_reach(product.net, product.target, limits, product.never_fired);
    out.sub.outcome = verdict_of(v);
    out.sub.proof = v.proof_kind;
    out.sub.stats = v.stats;
    if (v.outcome != ReachOutcome::TargetReachable)
        return out;

    Marking end = fire_sequence(product.net, product.net.initial_marking(), *v.witness);
    std::string low;
    for (std::size_t i = 0; i < product.target.clauses.size(); ++i) {
        auto c = compile_clause(product.net, product.target.clauses[i]);
        if (c && satisfies(end, *c)) {
            low = product.mismatches[i].low;
            break;
        }
    }
    if (low.empty())
        throw std::logic_error("reachable product verdict without a satisfied clause");

    CheckWitness w;
    w.low = unmap(low);
    w.direction = CheckWitness::Direction::Causal;
    std::vector<std::string> full;
    std::vector<std::string> restricted_side;
    std::size_t last_high = 0;
    bool saw_high = false;
    for (const std::string& step : *v.witness) {
        uint32_t t = product.net.require_transition(step);
        full.push_back(unmap(step));
        if (product.net.transition(t).level == Level::High) {
            last_high = full.size() - 1;
            saw_high = true;
        } else {
            restricted_side.push_back(unmap(step));
        }
    }
    if (!saw_high)
        throw std::logic_error("product witness contains no diverging firing");
    w.high = full[last_high];
    w.run_prefix.assign(full.begin(), full.begin() + last_high);
    w.low_suffix.assign(full.begin() + last_high + 1, full.end());

    validate_inclusion_witness(base, full, restricted_side, w.low);
    out.witness = std::move(w);
    return out;
}

ProductOutcome run_pair_check(const NetSystem& net, const std::string& h,
                              const std::string& l, bool declassify_too,
                              const SearchLimits& limits) {
    ProductOutcome out;
    out.sub.name = "pair(" + h + "," + l + ")";
    PCheckNet check = build_pcheck(net, h, l, declassify_too);
    Verdict v = decide_reach(check.net, check.target, limits, check.never_fired);
    out.sub.outcome = verdict_of(v);
    out.sub.proof = v.proof_kind;
    out.sub.stats = v.stats;
    if (v.outcome != ReachOutcome::TargetReachable)
        return out;

    Marking end = fire_sequence(check.net, check.net.initial_marking(), *v.witness);
    std::optional<MismatchInfo> hit;
    for (std::size_t i = 0; i < check.target.clauses.size(); ++i) {
        auto c = compile_clause(check.net, check.target.clauses[i]);
        if (c && satisfies(end, *c)) {
            hit = check.mismatches[i];
            break;
        }
    }
    if (!hit)
        throw std::logic_error("reachable pair verdict without a satisfied clause");

    CheckWitness w;
    w.high = h;
    w.low = l;
    w.direction = hit->blocked_after_high ? CheckWitness::Direction::Conflict
                                          : CheckWitness::Direction::Causal;
    bool seen_probe = false;
    for (const std::string& step : *v.witness) {
        if (step == check.high_probe) {
            seen_probe = true;
            continue;
        }
        (seen_probe ? w.low_suffix : w.run_prefix).push_back(step);
    }
    if (!seen_probe)
        throw std::logic_error("pair witness does not fire the high probe");

    validate_pair_witness(net, w);
    out.witness = std::move(w);
    return out;
}

CheckReport pair_property(const NetSystem& net, Property property,
                          bool declassify_too, const SearchLimits& limits) {
    CheckReport report;
    report.property = property;
    report.limits = limits;
    if (declassify_too) {
        if (net.is_two_level())
            throw UsageError("net has no downgrading transitions; use bndc or sbndc");
    } else if (!net.is_two_level()) {
        throw UsageError("net has downgrading transitions; use bini (or ini)");
    }
    for (const Transition& ht : net.transitions()) {
        if (ht.level != Level::High)
            continue;
        for (const Transition& lt : net.transitions()) {
            if (lt.level != Level::Low)
                continue;
            ProductOutcome sub =
                run_pair_check(net, ht.name, lt.name, declassify_too, limits);
            accumulate(report.totals, sub.sub.stats);
            report.subchecks.push_back(std::move(sub.sub));
            if (sub.witness && !report.witness)
                report.witness = std::move(sub.witness);
        }
    }
    report.verdict = aggregate(report.subchecks);
    return report;
}

} // namespace

CheckReport check_ndc(const NetSystem& net, const SearchLimits& limits) {
    if (!net.is_two_level())
        throw UsageError("net has downgrading transitions; use ini");
    CheckReport report;
    report.property = Property::NDC;
    report.limits = limits;
    ProductCheck product = build_ndc_product(net);
    ProductOutcome sub = run_product(net, product, limits, "inclusion",
                                     [](const std::string& s) { return s; });
    accumulate(report.totals, sub.sub.stats);
    report.subchecks.push_back(std::move(sub.sub));
    report.witness = std::move(sub.witness);
    report.verdict = aggregate(report.subchecks);
    return report;
}

CheckReport check_sbndc(const NetSystem& net, const SearchLimits& limits) {
    return pair_property(net, Property::SBNDC, false, limits);
}

CheckReport check_bndc(const NetSystem& net, const SearchLimits& limits) {
    CheckReport report = pair_property(net, Property::BNDC, false, limits);
    report.property = Property::BNDC;
    return report;
}

CheckReport check_ini(const NetSystem& net, const SearchLimits& limits) {
    if (net.is_two_level())
        throw UsageError("net has no downgrading transitions; use ndc");
    CheckReport report;
    report.property = Property::INI;
    report.limits = limits;

    std::vector<std::string> down;
    for (const Transition& t : net.transitions())
        if (t.level == Level::Down)
            down.push_back(t.name);

    NetSystem initial_view = restricted(net, down);
    {
        ProductCheck product = build_ndc_product(initial_view);
        ProductOutcome sub = run_product(initial_view, product, limits, "initial",
                                         [](const std::string& s) { return s; });
        accumulate(report.totals, sub.sub.stats);
        report.subchecks.push_back(std::move(sub.sub));
        if (sub.witness)
            report.witness = std::move(sub.witness);
    }

    for (const std::string& d : down) {
        NdNet nd = build_nd(net, d);
        auto unmap = [&nd](const std::string& s) {
            if (s == nd.down_probe)
                return nd.down;
            if (s.size() > 1 && s.back() == '\'')
                return s.substr(0, s.size() - 1);
            return s;
        };
        ProductCheck product = build_ndc_product(nd.net);
        ProductOutcome sub =
            run_product(net, product, limits, "after(" + d + ")", unmap);
        accumulate(report.totals, sub.sub.stats);
        report.subchecks.push_back(std::move(sub.sub));
        if (sub.witness && !report.witness)
            report.witness = std::move(sub.witness);
    }
    report.verdict = aggregate(report.subchecks);
    return report;
}

CheckReport check_bini(const NetSystem& net, const SearchLimits& limits) {
    return pair_property(net, Property::BINI, true, limits);
}

CheckReport run_check(const NetSystem& net, Property property,
                      const SearchLimits& limits) {
    switch (property) {
    case Property::NDC: return check_ndc(net, limits);
    case Property::SBNDC: return check_sbndc(net, limits);
    case Property::BNDC: return check_bndc(net, limits);
    case Property::INI: return check_ini(net, limits);
    case Property::BINI: return check_bini(net, limits);
    }
    throw UsageError("unknown property");
}

CrossValidation cross_validate(const NetSystem& net, Property property,
                               const SearchLimits& limits,
                               uint64_t oracle_max_states) {
    CrossValidation out;
    out.structural = run_check(net, property, limits);
    try {
        switch (property) {
        case Property::NDC:
            out.oracle = ndc_direct(net, oracle_max_states);
            break;
        case Property::SBNDC:
            out.oracle = sbndc_direct(net, oracle_max_states);
            break;
        case Property::BNDC:
            out.oracle = bndc_via_relation(net, oracle_max_states);
            break;
        case Property::INI:
            out.oracle = ini_direct(net, oracle_max_states);
            break;
        case Property::BINI:
            out.oracle = bini_direct(net, oracle_max_states);
            break;
        }
    } catch (const OverflowError& e) {
        out.status = CrossValidation::Status::OracleSkipped;
        out.reason = e.what();
        return out;
    }
    out.status = out.structural.verdict == out.oracle->outcome
                     ? CrossValidation::Status::Agree
                     : CrossValidation::Status::Disagree;
    if (out.status == CrossValidation::Status::Disagree)
        out.reason = std::string("structural says ") +
                     security_outcome_name(out.structural.verdict) + ", oracle says " +
                     security_outcome_name(out.oracle->outcome);
    return out;
}

} // namespace nicheck
