// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <set>
#include <sstream>

namespace hmt::fixture {

std::string scenario_path(const std::string& file) { return std::string(HMT_SCENARIO_DIR) + "/" + file; }

gcs::MissionSpec scenario(const std::string& name) { return gcs::load_mission(scenario_path(name + ".json")); }

harness::HumanScript human(const std::string& name, const gcs::MissionSpec& spec)
{
    return harness::load_human_script(scenario_path("humans/" + name + ".json"), spec);
}

gcs::EventLog parse(const std::string& log_text)
{
    std::istringstream in(log_text);
    return gcs::parse_event_log(in);
}

nlohmann::json minimal_mission()
{
    return nlohmann::json::parse(R"({
      "name": "unit",
      "seed": 1,
      "origin": [41.7, -86.24],
      "search_area": [[41.69, -86.25], [41.69, -86.23], [41.71, -86.23], [41.71, -86.25]],
      "views": [{"name": "map", "max_threshold": 3}],
      "alert_rules": [{"alert_type": "help_request", "view": "map", "essential": true}],
      "machines": {
        "sar": {
          "initial": "standby",
          "states": ["standby", "takeoff", "searching", "victim_detected", "tracking", "delivery", "rtl", "land"],
          "transitions": [
            {"from": "standby", "event": "launch", "to": "takeoff"},
            {"from": "takeoff", "event": "altitude_reached", "to": "searching"},
            {"from": "searching", "event": "help_requested", "to": "victim_detected"},
            {"from": "searching", "event": "track", "to": "tracking"},
            {"from": "victim_detected", "event": "track", "to": "tracking"},
            {"from": "victim_detected", "event": "resume_search", "to": "searching"},
            {"from": "tracking", "event": "track_complete", "to": "delivery"},
            {"from": "delivery", "event": "delivered", "to": "rtl"},
            {"from": "searching", "event": "route_complete", "to": "rtl"},
            {"from": "searching", "event": "return", "to": "rtl"},
            {"from": "searching", "event": "battery_low", "to": "rtl"},
            {"from": "tracking", "event": "return", "to": "rtl"},
            {"from": "victim_detected", "event": "return", "to": "rtl"},
            {"from": "rtl", "event": "home_reached", "to": "land"}
          ]
        }
      },
      "uavs": [
        {"id": "uav-blue", "color": "blue", "machine": "sar", "home": [41.7, -86.24],
         "route": [[41.7018, -86.24]], "launch_at_ms": 0}
      ]
    })");
}

agent::MachineSpec random_machine(Rng& rng, std::size_t pool)
{
    static const std::vector<std::string> kEvents{"go", "stop", "next", "back", "alarm"};
    agent::MachineSpec m;
    for (std::size_t i = 0; i < pool; ++i) {
        if (rng.chance(0.5)) {
            m.states.push_back("s" + std::to_string(i));
        }
    }
    if (m.states.empty()) {
        m.states.push_back("s0");
    }
    m.initial = m.states[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m.states.size()) - 1))];
    std::set<std::pair<std::string, std::string>> used;
    const auto last = static_cast<std::int64_t>(m.states.size()) - 1;
    const auto n = rng.uniform_int(0, 2 * static_cast<std::int64_t>(m.states.size()));
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& from = m.states[static_cast<std::size_t>(rng.uniform_int(0, last))];
        const auto& to = m.states[static_cast<std::size_t>(rng.uniform_int(0, last))];
        const auto& ev = kEvents[static_cast<std::size_t>(rng.uniform_int(0, 4))];
        if (used.insert({from, ev}).second) {
            m.transitions.push_back({from, ev, to});
        }
    }
    return m;
}

} // namespace hmt::fixture
