#pragma once

#include "nicheck/net.hpp"
#include "nicheck/target.hpp"

#include <vector>

namespace nicheck {

/// Over-approximation of the transitions that can ever fire, by boolean token
/// propagation: a place is markable if initially nonempty or fed by a usable
/// transition; a transition is usable if all its input places are markable.
/// Transitions flagged in `excluded` stay unusable.
std::vector<bool> fireable_transitions(const NetSystem& net, std::vector<bool> excluded);

/// Sound refutation of "some marking satisfying `clause` is reachable".
///
/// Every reachable marking M obeys the marking equation M = M0 + C*n for a
/// nonnegative firing-count vector n, so rational infeasibility of
///   { n >= 0,  M0 + C*n within the clause bounds,  M0 + C*n >= 0 }
/// proves the clause unreachable. The feasibility test is interleaved with two
/// count eliminations run to a fixpoint: transitions the token-propagation
/// over-approximation rules out, and transitions t for which the system plus
/// n_t >= 1 is already infeasible. Exact rational arithmetic throughout.
bool state_equation_refutes(const NetSystem& net, const Marking& initial,
                            const ClauseBounds& clause, std::vector<bool> excluded);

} // namespace nicheck
