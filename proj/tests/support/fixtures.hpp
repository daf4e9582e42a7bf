// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/gcs/event_log.hpp"
#include "hmt/gcs/mission_spec.hpp"
#include "hmt/common/rng.hpp"
#include "hmt/harness/harness.hpp"

#include <string>
#include <vector>

namespace hmt::fixture {

std::string scenario_path(const std::string& file);
gcs::MissionSpec scenario(const std::string& name);
harness::HumanScript human(const std::string& name, const gcs::MissionSpec& spec);

gcs::EventLog parse(const std::string& log_text);

/// Payloads of one type from a log, with their delivery times.
template <typename T>
std::vector<std::pair<SimTime, T>> records_of(const gcs::EventLog& log)
{
    std::vector<std::pair<SimTime, T>> out;
    for (const auto& r : log.records) {
        if (const auto* p = std::get_if<T>(&r.envelope.payload)) {
            out.emplace_back(r.at, *p);
        }
    }
    return out;
}

/// A small valid mission document for unit tests: one searching UAV.
nlohmann::json minimal_mission();

/// Random machine over states drawn from a shared pool of `pool` names, so
/// that machines overlap. Always has at least one state.
agent::MachineSpec random_machine(Rng& rng, std::size_t pool);

} // namespace hmt::fixture
