#include "nicheck/report_json.hpp"

#include <json.hpp>

namespace nicheck {

std::string report_to_json(const CheckReport& report) {
    using nlohmann::json;
    json j;
    j["property"] = property_name(report.property);
    j["verdict"] = security_outcome_name(report.verdict);
    if (report.witness) {
        const CheckWitness& w = *report.witness;
        j["witness"] = {{"h", w.high},
                        {"l", w.low},
                        {"w", w.run_prefix},
                        {"s", w.low_suffix},
                        {"direction", direction_name(w.direction)}};
    } else {
        j["witness"] = nullptr;
    }
    json subs = json::array();
    for (const SubcheckResult& s : report.subchecks) {
        json sub;
        sub["name"] = s.name;
        sub["verdict"] = security_outcome_name(s.outcome);
        if (s.proof)
            sub["proof"] = unreach_proof_name(*s.proof);
        sub["stats"] = {{"states_explored", s.stats.states_explored},
                        {"km_nodes", s.stats.km_nodes}};
        subs.push_back(std::move(sub));
    }
    j["subchecks"] = std::move(subs);
    j["stats"] = {{"states_explored", report.totals.states_explored},
                  {"frontier_peak", report.totals.frontier_peak},
                  {"km_nodes", report.totals.km_nodes}};
    j["limits"] = {{"max_states", report.limits.max_states},
                   {"max_depth", report.limits.max_depth}};
    return j.dump(2) + "\n";
}

} // namespace nicheck
