#pragma once

#include "ipmu/instance.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace ipmu::cli {

/// Entry point for the `ipmu` tool. Data goes to `out`, diagnostics to `err`;
/// returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Recomputes a solve/exact record's objective from its medians and upgrade
/// list on `instance`; returns the absolute difference to the recorded value.
double record_discrepancy(const nlohmann::ordered_json& record, const Instance& instance);

/// 100 (heuristic - optimum) / optimum, with 0 when equal and the optimum is 0.
double deviation_percent(double heuristic, double optimum);

} // namespace ipmu::cli
