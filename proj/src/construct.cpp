#include "nicheck/construct.hpp"

namespace nicheck {

namespace {

void copy_transition_flows(NetBuilder& nb, const NetSystem& net, const Transition& t,
                           const std::string& target_name,
                           const std::unordered_map<std::string, std::string>& place_map) {
    for (const Arc& a : t.pre)
        nb.add_arc(place_map.at(net.place_name(a.place)), target_name, a.weight);
    for (const Arc& a : t.post)
        nb.add_arc(target_name, place_map.at(net.place_name(a.place)), a.weight);
}

} // namespace

PCheckNet build_pcheck(const NetSystem& net, const std::string& h,
                       const std::string& l, bool declassify_too) {
    uint32_t ht = net.require_transition(h);
    uint32_t lt = net.require_transition(l);
    if (net.transition(ht).level != Level::High)
        throw UsageError("transition " + h + " is not high-level");
    if (net.transition(lt).level != Level::Low)
        throw UsageError("transition " + l + " is not low-level");

    PCheckNet out;
    out.high = h;
    out.low = l;
    out.high_probe = prime_name(h);
    out.low_probe_1 = prime_name(copy_name(l, 1));
    out.low_probe_2 = prime_name(copy_name(l, 2));
    out.never_fired = {out.low_probe_1, out.low_probe_2};

    NetBuilder nb;
    for (uint32_t p = 0; p < net.place_count(); ++p) {
        const std::string& name = net.place_name(p);
        out.copy1_place[name] = copy_name(name, 1);
        out.copy2_place[name] = copy_name(name, 2);
        nb.add_place(out.copy1_place[name], net.initial_marking()[p]);
    }
    for (uint32_t p = 0; p < net.place_count(); ++p)
        nb.add_place(out.copy2_place[net.place_name(p)], net.initial_marking()[p]);
    nb.add_place(out.control_pre, 1);
    nb.add_place(out.control_post, 0);

    // The original transitions drive both copies in lockstep; the gating
    // levels keep a side condition on x@ so no further high (or downgrading,
    // for the declassifying variant) firing can follow the probe.
    for (const Transition& t : net.transitions()) {
        nb.add_transition(t.name, t.level);
        copy_transition_flows(nb, net, t, t.name, out.copy1_place);
        copy_transition_flows(nb, net, t, t.name, out.copy2_place);
        bool gated = t.level == Level::High ||
                     (declassify_too && t.level == Level::Down);
        if (gated) {
            nb.add_arc(out.control_pre, t.name, 1);
            nb.add_arc(t.name, out.control_pre, 1);
        }
    }

    nb.add_transition(out.high_probe, Level::High);
    copy_transition_flows(nb, net, net.transition(ht), out.high_probe, out.copy2_place);
    nb.add_arc(out.control_pre, out.high_probe, 1);
    nb.add_arc(out.high_probe, out.control_post, 1);

    nb.add_transition(out.low_probe_1, Level::Low);
    copy_transition_flows(nb, net, net.transition(lt), out.low_probe_1, out.copy1_place);
    nb.add_arc(out.control_post, out.low_probe_1, 1);

    nb.add_transition(out.low_probe_2, Level::Low);
    copy_transition_flows(nb, net, net.transition(lt), out.low_probe_2, out.copy2_place);
    nb.add_arc(out.control_post, out.low_probe_2, 1);

    out.net = nb.build();

    // Copy 2 differs from copy 1 by exactly one firing of h, so an enabling
    // mismatch at input place p needs a nonzero net effect of h on p, with
    // the matching sign.
    uint32_t l1p = out.net.require_transition(out.low_probe_1);
    uint32_t l2p = out.net.require_transition(out.low_probe_2);
    for (const Arc& a : net.transition(lt).pre) {
        const std::string& p = net.place_name(a.place);
        int64_t d = net.delta(ht, a.place);
        if (d < 0) {
            // l possible without h, blocked after it.
            Clause c = enabled_clause(out.net, l1p);
            c.atoms.push_back(Atom{out.copy2_place.at(p), Rel::Le, a.weight - 1});
            out.target.clauses.push_back(std::move(c));
            out.mismatches.push_back(MismatchInfo{l, p, true});
        } else if (d > 0) {
            // l possible only after h.
            Clause c = enabled_clause(out.net, l2p);
            c.atoms.push_back(Atom{out.copy1_place.at(p), Rel::Le, a.weight - 1});
            out.target.clauses.push_back(std::move(c));
            out.mismatches.push_back(MismatchInfo{l, p, false});
        } else {
            ++out.pruned_clauses;
        }
    }
    return out;
}

TargetSet pcheck_target(const PCheckNet& check) { return check.target; }

ProductCheck build_ndc_product(const NetSystem& net) {
    if (!net.is_two_level())
        throw UsageError("product check requires a two-level net; restrict or "
                         "reinterpret downgrading transitions first");

    ProductCheck out;
    NetBuilder nb;
    for (uint32_t p = 0; p < net.place_count(); ++p) {
        const std::string& name = net.place_name(p);
        out.copy1_place[name] = copy_name(name, 1);
        out.copy2_place[name] = copy_name(name, 2);
        nb.add_place(out.copy1_place[name], net.initial_marking()[p]);
    }
    for (uint32_t p = 0; p < net.place_count(); ++p)
        nb.add_place(out.copy2_place[net.place_name(p)], net.initial_marking()[p]);

    for (const Transition& t : net.transitions()) {
        nb.add_transition(t.name, t.level);
        copy_transition_flows(nb, net, t, t.name, out.copy1_place);
        if (t.level != Level::High)
            copy_transition_flows(nb, net, t, t.name, out.copy2_place);
    }

    // Enabledness probes; never fired, they only give the target something to
    // talk about.
    std::vector<uint32_t> lows = net.transitions_of_level(Level::Low);
    std::vector<uint32_t> highs = net.transitions_of_level(Level::High);
    for (uint32_t lt : lows) {
        const Transition& t = net.transition(lt);
        std::string p1 = prime_name(copy_name(t.name, 1));
        std::string p2 = prime_name(copy_name(t.name, 2));
        nb.add_transition(p1, Level::Low);
        copy_transition_flows(nb, net, t, p1, out.copy1_place);
        nb.add_transition(p2, Level::Low);
        copy_transition_flows(nb, net, t, p2, out.copy2_place);
        out.never_fired.push_back(p1);
        out.never_fired.push_back(p2);
    }

    out.net = nb.build();

    // Copy 1 may run ahead of copy 2 only through high firings, so the copies
    // can disagree at input place p only if some high transition adds tokens
    // to p.
    for (uint32_t lt : lows) {
        const Transition& t = net.transition(lt);
        uint32_t probe1 = out.net.require_transition(prime_name(copy_name(t.name, 1)));
        for (const Arc& a : t.pre) {
            bool possible = false;
            for (uint32_t h : highs)
                if (net.delta(h, a.place) > 0)
                    possible = true;
            if (!possible) {
                ++out.pruned_clauses;
                continue;
            }
            Clause c = enabled_clause(out.net, probe1);
            c.atoms.push_back(Atom{out.copy2_place.at(net.place_name(a.place)), Rel::Le,
                                   a.weight - 1});
            out.target.clauses.push_back(std::move(c));
            out.mismatches.push_back(
                MismatchInfo{t.name, net.place_name(a.place), false});
        }
    }
    return out;
}

NdNet build_nd(const NetSystem& net, const std::string& d) {
    uint32_t dt = net.require_transition(d);
    if (net.transition(dt).level != Level::Down)
        throw UsageError("transition " + d + " is not a downgrading transition");

    NdNet out;
    out.down = d;
    out.down_probe = prime_name(d);

    NetBuilder nb;
    std::unordered_map<std::string, std::string> same;
    for (uint32_t p = 0; p < net.place_count(); ++p) {
        same[net.place_name(p)] = net.place_name(p);
        nb.add_place(net.place_name(p), net.initial_marking()[p]);
    }
    nb.add_place(out.mode_place, 1);
    nb.add_place(out.mode_place_prime, 0);

    for (const Transition& t : net.transitions()) {
        nb.add_transition(t.name, Level::Low);
        copy_transition_flows(nb, net, t, t.name, same);
        nb.add_arc(out.mode_place, t.name, 1);
        nb.add_arc(t.name, out.mode_place, 1);
    }

    nb.add_transition(out.down_probe, Level::Low);
    copy_transition_flows(nb, net, net.transition(dt), out.down_probe, same);
    nb.add_arc(out.mode_place, out.down_probe, 1);
    nb.add_arc(out.down_probe, out.mode_place_prime, 1);

    for (const Transition& t : net.transitions()) {
        if (t.level == Level::Down)
            continue;
        std::string primed = prime_name(t.name);
        out.primed[t.name] = primed;
        Level lv = t.level == Level::High ? Level::High : Level::Low;
        if (t.level == Level::High)
            out.primed_high.push_back(primed);
        nb.add_transition(primed, lv);
        copy_transition_flows(nb, net, t, primed, same);
        nb.add_arc(out.mode_place_prime, primed, 1);
        nb.add_arc(primed, out.mode_place_prime, 1);
    }

    out.net = nb.build();
    return out;
}

} // namespace nicheck
