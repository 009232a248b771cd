#pragma once

#include "nicheck/net.hpp"
#include "nicheck/target.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace nicheck {

/// Names reserved for construction output: '#', '@' and a trailing prime are
/// rejected in user input, so generated identifiers never collide.
inline std::string copy_name(const std::string& base, int copy) {
    return base + "#" + std::to_string(copy);
}
inline std::string prime_name(const std::string& base) { return base + "'"; }

/// Which mismatch a target clause witnesses: the low transition, the blocked
/// input place (original name), and whether the blocked side is the copy that
/// saw the extra high firing.
struct MismatchInfo {
    std::string low;
    std::string place;
    bool blocked_after_high; // true: disabled only with h (conflict flow)
};

/// Two-copy check net for one (h, l) pair. Copy 1 runs the h-free branch,
/// copy 2 the branch with one extra h (injected by the high probe). The
/// target holds exactly when the two branches disagree on enabling l.
struct PCheckNet {
    NetSystem net;
    TargetSet target;
    std::vector<MismatchInfo> mismatches; // aligned with target.clauses
    std::string high, low;                // original transitions
    std::string high_probe;               // fresh copy of h acting on copy 2
    std::string low_probe_1, low_probe_2; // fresh copies of l, one per copy
    std::string control_pre = "x@";       // gates high firings before the probe
    std::string control_post = "y@";      // marks that the probe has fired
    std::vector<std::string> never_fired; // the low probes
    std::size_t pruned_clauses = 0;
    std::unordered_map<std::string, std::string> copy1_place, copy2_place;
};

/// With declassify_too, downgrading transitions count as high for the gating
/// side conditions (and may occur before the probe).
PCheckNet build_pcheck(const NetSystem& net, const std::string& h,
                       const std::string& l, bool declassify_too = false);

TargetSet pcheck_target(const PCheckNet& check);

/// Synchronized two-copy product deciding language inclusion of the net in
/// its high-restriction: copy 1 runs the full net, copy 2 the restriction,
/// low transitions fire on both copies at once, high transitions on copy 1
/// only. The target holds when some low transition is enabled on copy 1 but
/// not on copy 2. Probe transitions exist only to express the target; they
/// are listed in never_fired and must be excluded from any search.
struct ProductCheck {
    NetSystem net;
    TargetSet target;
    std::vector<MismatchInfo> mismatches;
    std::vector<std::string> never_fired;
    std::size_t pruned_clauses = 0;
    std::unordered_map<std::string, std::string> copy1_place, copy2_place;
};

ProductCheck build_ndc_product(const NetSystem& net);

/// Mode-switch net for one downgrading transition d: the original transitions
/// run while pd@ is marked; the fresh d' hands the token to pd'@, after which
/// only the primed copies of the low and high transitions can run. All
/// transitions are low except the primed high copies.
struct NdNet {
    NetSystem net;
    std::string down;       // d
    std::string down_probe; // d'
    std::string mode_place = "pd@";
    std::string mode_place_prime = "pd'@";
    std::vector<std::string> primed_high;
    std::unordered_map<std::string, std::string> primed; // t in L∪H -> t'
};

NdNet build_nd(const NetSystem& net, const std::string& d);

} // namespace nicheck
