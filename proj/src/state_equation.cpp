#include "nicheck/state_equation.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <optional>

namespace nicheck {

namespace {

using Rat = boost::multiprecision::cpp_rational;

// Phase-1 simplex feasibility for { y >= 0 : A y = b } with b >= 0,
// Bland's rule, exact rationals.
bool simplex_feasible(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const std::size_t m = a.size();
    if (m == 0)
        return true;
    const std::size_t n = a[0].size();

    // Append the artificial identity block.
    for (std::size_t i = 0; i < m; ++i) {
        a[i].resize(n + m, 0);
        a[i][n + i] = 1;
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = n + i;

    // Reduced costs for minimizing the artificial sum: r_j = c_j - sum_i a[i][j].
    std::vector<Rat> reduced(n + m, 0);
    for (std::size_t j = 0; j < n + m; ++j) {
        Rat col_sum = 0;
        for (std::size_t i = 0; i < m; ++i)
            col_sum += a[i][j];
        reduced[j] = (j >= n ? Rat(1) : Rat(0)) - col_sum;
    }

    while (true) {
        std::optional<std::size_t> entering;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (reduced[j] < 0) {
                entering = j;
                break;
            }
        }
        if (!entering)
            break;
        std::size_t e = *entering;

        std::optional<std::size_t> leaving;
        Rat best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][e] <= 0)
                continue;
            Rat ratio = b[i] / a[i][e];
            if (!leaving || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[*leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (!leaving)
            return true; // cannot happen in phase 1; err on the feasible side

        std::size_t r = *leaving;
        Rat pivot = a[r][e];
        for (std::size_t j = 0; j < n + m; ++j)
            a[r][j] /= pivot;
        b[r] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][e] == 0)
                continue;
            Rat factor = a[i][e];
            for (std::size_t j = 0; j < n + m; ++j)
                a[i][j] -= factor * a[r][j];
            b[i] -= factor * b[r];
        }
        Rat factor = reduced[e];
        for (std::size_t j = 0; j < n + m; ++j)
            reduced[j] -= factor * a[r][j];
        basis[r] = e;
    }
    Rat residual = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n)
            residual += b[i];
    return residual == 0;
}

struct System {
    // Inequalities sum_j coef[row][j] * x_j >= rhs[row], x >= 0.
    std::vector<std::vector<Rat>> coef;
    std::vector<Rat> rhs;
    std::size_t vars = 0;
};

// One variable per usable transition; rows bound the final marking of each
// place to [max(0, clause lo), clause hi].
System build_system(const NetSystem& net, const Marking& initial,
                    const ClauseBounds& clause, const std::vector<bool>& excluded,
                    std::optional<uint32_t> at_least_once) {
    System sys;
    std::vector<int32_t> var_of(net.transition_count(), -1);
    for (uint32_t t = 0; t < net.transition_count(); ++t)
        if (!excluded[t])
            var_of[t] = static_cast<int32_t>(sys.vars++);

    std::vector<std::optional<uint32_t>> clause_lo(net.place_count());
    std::vector<std::optional<uint32_t>> clause_hi(net.place_count());
    for (const auto& r : clause.ranges) {
        clause_lo[r.place] = r.lo;
        clause_hi[r.place] = r.hi;
    }

    // Shift for the "fires at least once" variant: x_t := x_t' + 1.
    std::vector<Rat> shift(net.place_count(), 0);
    if (at_least_once) {
        if (excluded[*at_least_once])
            return System{{{}}, {Rat(1)}, 0}; // 0 >= 1, infeasible
        for (uint32_t p = 0; p < net.place_count(); ++p)
            shift[p] = net.delta(*at_least_once, p);
    }

    for (uint32_t p = 0; p < net.place_count(); ++p) {
        std::vector<Rat> row(sys.vars, 0);
        bool any_neg = false;
        bool any_pos = false;
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (var_of[t] < 0)
                continue;
            int64_t d = net.delta(t, p);
            if (d != 0) {
                row[var_of[t]] = d;
                (d < 0 ? any_neg : any_pos) = true;
            }
        }
        Rat base = Rat(initial[p]) + shift[p];
        uint32_t lo = clause_lo[p].value_or(0);
        // base + row*x >= lo; vacuous when nothing can decrease the place and
        // the base already clears the bound.
        if (any_neg || base < lo) {
            sys.coef.push_back(row);
            sys.rhs.push_back(Rat(lo) - base);
        }
        if (clause_hi[p]) {
            // base + row*x <= hi  ->  -row*x >= base - hi
            if (any_pos || base > Rat(*clause_hi[p])) {
                std::vector<Rat> neg(row.size());
                for (std::size_t j = 0; j < row.size(); ++j)
                    neg[j] = -row[j];
                sys.coef.push_back(std::move(neg));
                sys.rhs.push_back(base - Rat(*clause_hi[p]));
            }
        }
    }
    return sys;
}

bool system_feasible(const System& sys) {
    // Convert A x >= b into equalities with surplus variables, b normalized >= 0.
    const std::size_t m = sys.coef.size();
    std::vector<std::vector<Rat>> a(m);
    std::vector<Rat> b(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = sys.coef[i];
        a[i].resize(sys.vars + m, 0);
        a[i][sys.vars + i] = -1; // surplus
        b[i] = sys.rhs[i];
        if (b[i] < 0) {
            for (auto& v : a[i])
                v = -v;
            b[i] = -b[i];
        }
    }
    return simplex_feasible(std::move(a), std::move(b));
}

bool lp_feasible(const NetSystem& net, const Marking& initial,
                 const ClauseBounds& clause, const std::vector<bool>& excluded,
                 std::optional<uint32_t> at_least_once = std::nullopt) {
    System sys = build_system(net, initial, clause, excluded, at_least_once);
    for (std::size_t i = 0; i < sys.coef.size(); ++i) {
        bool any = std::any_of(sys.coef[i].begin(), sys.coef[i].end(),
                               [](const Rat& v) { return v != 0; });
        if (!any && sys.rhs[i] > 0)
            return false;
    }
    return system_feasible(sys);
}

} // namespace

std::vector<bool> fireable_transitions(const NetSystem& net, std::vector<bool> excluded) {
    std::vector<bool> markable(net.place_count(), false);
    for (uint32_t p = 0; p < net.place_count(); ++p)
        markable[p] = net.initial_marking()[p] > 0;
    std::vector<bool> usable(net.transition_count(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t t = 0; t < net.transition_count(); ++t) {
            if (usable[t] || excluded[t])
                continue;
            bool ok = true;
            for (const Arc& a : net.transition(t).pre) {
                if (!markable[a.place]) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            usable[t] = true;
            changed = true;
            for (const Arc& a : net.transition(t).post)
                markable[a.place] = true;
        }
    }
    return usable;
}

bool state_equation_refutes(const NetSystem& net, const Marking& initial,
                            const ClauseBounds& clause, std::vector<bool> excluded) {
    if (excluded.size() != net.transition_count())
        throw StructuralError("exclusion mask size mismatch");

    // Probe likely-forced counts first: transitions that drain a place the
    // clause bounds from below get eliminated soonest, and each elimination
    // restarts the cheap propagation.
    std::vector<uint32_t> order(net.transition_count());
    for (uint32_t t = 0; t < net.transition_count(); ++t)
        order[t] = t;
    std::vector<int> priority(net.transition_count(), 0);
    for (uint32_t t = 0; t < net.transition_count(); ++t)
        for (const auto& r : clause.ranges)
            if (r.lo > 0 && net.delta(t, r.place) < 0)
                priority[t] = 1;
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return priority[a] > priority[b]; });

    std::vector<bool> probed(net.transition_count(), false);
    while (true) {
        std::vector<bool> usable = fireable_transitions(net, excluded);
        for (uint32_t t = 0; t < net.transition_count(); ++t)
            if (!usable[t])
                excluded[t] = true;

        if (!lp_feasible(net, initial, clause, excluded))
            return true;

        bool progress = false;
        for (uint32_t t : order) {
            if (excluded[t] || probed[t])
                continue;
            probed[t] = true;
            if (!lp_feasible(net, initial, clause, excluded, t)) {
                excluded[t] = true;
                // Tighter system: earlier feasible probes may flip, so rerun
                // propagation, the main test, and the probes from scratch.
                std::fill(probed.begin(), probed.end(), false);
                progress = true;
                break;
            }
        }
        if (!progress)
            return false;
    }
}

} // namespace nicheck
