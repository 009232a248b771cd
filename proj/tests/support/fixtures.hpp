#pragma once

#include "nicheck/net.hpp"

namespace fixtures {

using nicheck::Level;
using nicheck::NetBuilder;
using nicheck::NetSystem;

// Mirrors nets/chain_high_then_low.net.
inline NetSystem chain_high_then_low() {
    NetBuilder nb;
    nb.add_place("a", 1);
    nb.add_place("s", 0);
    nb.add_transition("h", Level::High);
    nb.add_transition("l", Level::Low);
    nb.add_arc("a", "h");
    nb.add_arc("h", "s");
    nb.add_arc("s", "l");
    return nb.build();
}

// Mirrors nets/chain_low_then_high.net.
inline NetSystem chain_low_then_high() {
    NetBuilder nb;
    nb.add_place("b", 1);
    nb.add_place("s", 0);
    nb.add_transition("l", Level::Low);
    nb.add_transition("h", Level::High);
    nb.add_arc("b", "l");
    nb.add_arc("l", "s");
    nb.add_arc("s", "h");
    return nb.build();
}

// Mirrors nets/pump_disconnected.net.
inline NetSystem pump_disconnected() {
    NetBuilder nb;
    nb.add_place("h_top", 1);
    nb.add_place("h_mid", 0);
    nb.add_place("l_top", 1);
    nb.add_place("l_mid", 0);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_arc("h_top", "h1");
    nb.add_arc("h1", "h_top");
    nb.add_arc("h1", "h_mid");
    nb.add_arc("h_mid", "h2");
    nb.add_arc("l_top", "l1");
    nb.add_arc("l1", "l_top");
    nb.add_arc("l1", "l_mid");
    nb.add_arc("l_mid", "l2");
    return nb.build();
}

// Mirrors nets/token_race.net.
inline NetSystem token_race() {
    NetBuilder nb;
    nb.add_place("s", 1);
    nb.add_transition("h", Level::High);
    nb.add_transition("l", Level::Low);
    nb.add_arc("s", "h");
    nb.add_arc("s", "l");
    return nb.build();
}

// Mirrors nets/side_loop_leak.net.
inline NetSystem side_loop_leak() {
    NetBuilder nb;
    nb.add_place("p", 1);
    nb.add_place("q", 0);
    nb.add_place("r", 0);
    nb.add_transition("h", Level::High);
    nb.add_transition("k", Level::Low);
    nb.add_transition("l", Level::Low);
    nb.add_arc("p", "h");
    nb.add_arc("h", "p");
    nb.add_arc("h", "q");
    nb.add_arc("p", "k");
    nb.add_arc("k", "r");
    nb.add_arc("q", "l");
    nb.add_arc("r", "l");
    return nb.build();
}

// side_loop_leak with a one-shot fuel place on h: bounded, same leak, so the
// direct oracles can enumerate it.
inline NetSystem side_loop_leak_bounded() {
    NetBuilder nb;
    nb.add_place("p", 1);
    nb.add_place("q", 0);
    nb.add_place("r", 0);
    nb.add_place("fuel", 1);
    nb.add_transition("h", Level::High);
    nb.add_transition("k", Level::Low);
    nb.add_transition("l", Level::Low);
    nb.add_arc("p", "h");
    nb.add_arc("h", "p");
    nb.add_arc("h", "q");
    nb.add_arc("fuel", "h");
    nb.add_arc("p", "k");
    nb.add_arc("k", "r");
    nb.add_arc("q", "l");
    nb.add_arc("r", "l");
    return nb.build();
}

// Mirrors nets/shared_token_leak.net.
inline NetSystem shared_token_leak() {
    NetBuilder nb;
    nb.add_place("s0", 1);
    nb.add_place("s1", 1);
    nb.add_place("s2", 0);
    nb.add_place("s3", 0);
    nb.add_place("s", 0);
    nb.add_transition("h", Level::High);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("l3", Level::Low);
    nb.add_arc("s0", "h");
    nb.add_arc("s1", "h");
    nb.add_arc("h", "s1");
    nb.add_arc("h", "s");
    nb.add_arc("s1", "l1");
    nb.add_arc("l1", "s2");
    nb.add_arc("l1", "s");
    nb.add_arc("s2", "l2");
    nb.add_arc("s", "l2");
    nb.add_arc("l2", "s3");
    nb.add_arc("s3", "l3");
    nb.add_arc("s", "l3");
    return nb.build();
}

// Same structure with the last low step reclassified as downgrading.
inline NetSystem shared_token_leak_downgraded() {
    NetBuilder nb;
    nb.add_place("s0", 1);
    nb.add_place("s1", 1);
    nb.add_place("s2", 0);
    nb.add_place("s3", 0);
    nb.add_place("s", 0);
    nb.add_transition("h", Level::High);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("l3", Level::Down);
    nb.add_arc("s0", "h");
    nb.add_arc("s1", "h");
    nb.add_arc("h", "s1");
    nb.add_arc("h", "s");
    nb.add_arc("s1", "l1");
    nb.add_arc("l1", "s2");
    nb.add_arc("l1", "s");
    nb.add_arc("s2", "l2");
    nb.add_arc("s", "l2");
    nb.add_arc("l2", "s3");
    nb.add_arc("s3", "l3");
    nb.add_arc("s", "l3");
    return nb.build();
}

namespace detail {

inline void shop_core(NetBuilder& nb) {
    nb.add_arc("open", "l2");
    nb.add_arc("l2", "open");
    nb.add_arc("goods", "l2");
    nb.add_arc("open", "d1");
    nb.add_arc("d1", "closed");
    nb.add_arc("closed", "d2");
    nb.add_arc("d2", "open");
    nb.add_arc("goods", "h1");
    nb.add_arc("closed", "h1");
    nb.add_arc("h1", "lent");
    nb.add_arc("lent", "h2");
    nb.add_arc("h2", "goods");
    nb.add_arc("h2", "closed");
}

} // namespace detail

// Mirrors nets/shop.net.
inline NetSystem shop() {
    NetBuilder nb;
    nb.add_place("open", 1);
    nb.add_place("goods", 0);
    nb.add_place("closed", 0);
    nb.add_place("lent", 0);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("d1", Level::Down);
    nb.add_transition("d2", Level::Down);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_arc("l1", "goods");
    detail::shop_core(nb);
    return nb.build();
}

// Shop with a finite goods supply, so the direct oracle can enumerate it.
inline NetSystem shop_bounded(uint32_t supply = 2) {
    NetBuilder nb;
    nb.add_place("open", 1);
    nb.add_place("goods", 0);
    nb.add_place("closed", 0);
    nb.add_place("lent", 0);
    nb.add_place("supply", supply);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("d1", Level::Down);
    nb.add_transition("d2", Level::Down);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_arc("supply", "l1");
    nb.add_arc("l1", "goods");
    detail::shop_core(nb);
    return nb.build();
}

// Bounded shop with every downgrading transition reclassified as high.
inline NetSystem shop_bounded_downs_as_high(uint32_t supply = 2) {
    NetBuilder nb;
    nb.add_place("open", 1);
    nb.add_place("goods", 0);
    nb.add_place("closed", 0);
    nb.add_place("lent", 0);
    nb.add_place("supply", supply);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("d1", Level::High);
    nb.add_transition("d2", Level::High);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_arc("supply", "l1");
    nb.add_arc("l1", "goods");
    detail::shop_core(nb);
    return nb.build();
}

// Shop where the borrowing step also unlocks the shop door: insecure.
inline NetSystem shop_leaky() {
    NetBuilder nb;
    nb.add_place("open", 1);
    nb.add_place("goods", 0);
    nb.add_place("closed", 0);
    nb.add_place("lent", 0);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("d1", Level::Down);
    nb.add_transition("d2", Level::Down);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_arc("l1", "goods");
    detail::shop_core(nb);
    nb.add_arc("h1", "open");
    return nb.build();
}

// Mirrors nets/prey_rings.net.
inline NetSystem prey_rings() {
    NetBuilder nb;
    nb.add_place("s1", 1);
    nb.add_place("s2", 0);
    nb.add_place("s3", 0);
    nb.add_place("sink", 0);
    nb.add_place("q1", 0);
    nb.add_place("q2", 0);
    nb.add_place("q3", 1);
    nb.add_transition("l1", Level::Low);
    nb.add_transition("l2", Level::Low);
    nb.add_transition("l3", Level::Low);
    nb.add_transition("h1", Level::High);
    nb.add_transition("h2", Level::High);
    nb.add_transition("h3", Level::High);
    nb.add_transition("d1", Level::Down);
    nb.add_transition("d2", Level::Down);
    nb.add_transition("d3", Level::Down);
    nb.add_arc("s1", "l1");
    nb.add_arc("l1", "s2", 2);
    nb.add_arc("s2", "l2");
    nb.add_arc("l2", "s3");
    nb.add_arc("s3", "l3");
    nb.add_arc("l3", "s1");
    nb.add_arc("q3", "h1");
    nb.add_arc("h1", "q1");
    nb.add_arc("s1", "h1");
    nb.add_arc("h1", "s1");
    nb.add_arc("q1", "h2");
    nb.add_arc("h2", "q2");
    nb.add_arc("s2", "h2");
    nb.add_arc("h2", "s2");
    nb.add_arc("q2", "h3");
    nb.add_arc("h3", "q3");
    nb.add_arc("s3", "h3");
    nb.add_arc("h3", "s3");
    nb.add_arc("s2", "d1");
    nb.add_arc("d1", "sink");
    nb.add_arc("q1", "d1");
    nb.add_arc("d1", "q1");
    nb.add_arc("s3", "d2");
    nb.add_arc("d2", "sink");
    nb.add_arc("q2", "d2");
    nb.add_arc("d2", "q2");
    nb.add_arc("s1", "d3");
    nb.add_arc("d3", "sink");
    nb.add_arc("q3", "d3");
    nb.add_arc("d3", "q3");
    return nb.build();
}

} // namespace fixtures
