// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/gcs/event_log.hpp"
#include "hmt/gcs/mission.hpp"
#include "hmt/harness/human.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>

namespace hmt::harness {

struct ViewCounts
{
    std::uint64_t displayed = 0;
    std::uint64_t suppressed = 0;

    friend bool operator==(const ViewCounts&, const ViewCounts&) = default;
};

/// Everything here is derived from an event log and nothing else.
struct RunMetrics
{
    std::uint64_t detections_true = 0;
    std::uint64_t detections_false = 0;
    std::uint64_t sessions_opened = 0;
    std::uint64_t sessions_confirmed = 0;
    std::uint64_t sessions_refuted = 0;
    std::uint64_t sessions_timed_out = 0;
    std::optional<double> mean_response_ms;
    /// Distinct alerts ever displayed / ever suppressed, per view.
    std::map<std::string, ViewCounts> alerts;
    std::uint64_t adaptations = 0;
    std::uint64_t explanations = 0;
    std::uint64_t tug_of_war_conflicts = 0;
    std::uint64_t human_failures = 0;
    std::uint64_t reverted_decisions = 0;
    std::uint64_t machine_rule_changes = 0;
    std::uint64_t stale_commands = 0;
    std::map<std::string, std::string> final_states;
    SimTime duration_ms = 0;
    std::string outcome;
    bool incomplete = false;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

nlohmann::json to_json(const RunMetrics& m);

RunMetrics compute_metrics(const gcs::EventLog& log);

struct RunResult
{
    RunMetrics metrics;
    std::string log;
    gcs::Lifecycle outcome = gcs::Lifecycle::idle;
    std::vector<PromptRecord> prompts;
    /// GCS model states at the end of the live run.
    nlohmann::json final_state;
    std::vector<coord::Conflict> conflicts;
};

/// Lockstep run to mission end or the time cap. A missing script means no
/// human is on the bus.
RunResult run_scenario(const gcs::MissionSpec& spec, const std::optional<HumanScript>& script,
                       std::uint64_t seed);

struct LogComparison
{
    bool equal = true;
    /// Sequence number of the first differing record; 0 for the header.
    std::optional<std::uint64_t> first_divergent_seq;
    std::size_t line = 0;
};

/// Line-by-line byte comparison. Lockstep logs carry simulated time only,
/// so no normalization is applied.
LogComparison compare_logs(const std::string& a, const std::string& b);


} // namespace hmt::harness
