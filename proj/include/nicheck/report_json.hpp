#pragma once

#include "nicheck/check.hpp"

#include <string>

namespace nicheck {

/// Stable JSON rendering of a check report:
/// { "property": str, "verdict": "secure"|"insecure"|"unknown",
///   "witness": {"h","l","w","s","direction"}|null,
///   "subchecks": [...], "stats": {...}, "limits": {...} }
std::string report_to_json(const CheckReport& report);

} // namespace nicheck
