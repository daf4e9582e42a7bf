// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/harness/harness.hpp"

#include "hmt/common/rng.hpp"

#include <set>
#include <sstream>

namespace hmt::harness {

using nlohmann::json;

json to_json(const RunMetrics& m)
{
    json alerts = json::object();
    for (const auto& [view, c] : m.alerts) {
        alerts[view] = {{"displayed", c.displayed}, {"suppressed", c.suppressed}};
    }
    return {
        {"detections", {{"true", m.detections_true}, {"false", m.detections_false}}},
        {"sessions",
         {{"opened", m.sessions_opened},
          {"confirmed", m.sessions_confirmed},
          {"refuted", m.sessions_refuted},
          {"timed_out", m.sessions_timed_out}}},
        {"mean_response_ms", m.mean_response_ms ? json(*m.mean_response_ms) : json()},
        {"alerts", alerts},
        {"adaptations", m.adaptations},
        {"explanations", m.explanations},
        {"tug_of_war_conflicts", m.tug_of_war_conflicts},
        {"human_failures", m.human_failures},
        {"reverted_decisions", m.reverted_decisions},
        {"machine_rule_changes", m.machine_rule_changes},
        {"stale_commands", m.stale_commands},
        {"final_states", m.final_states},
        {"duration_ms", m.duration_ms},
        {"outcome", m.outcome},
        {"incomplete", m.incomplete},
    };
}

RunMetrics compute_metrics(const gcs::EventLog& log)
{
    RunMetrics m;
    std::map<std::string, bool> victims;
    const auto& mission = log.header.at("mission");
    if (mission.contains("scene") && mission.at("scene").contains("targets")) {
        for (const auto& t : mission.at("scene").at("targets")) {
            victims[t.at("id").get<std::string>()] = t.value("victim", true);
        }
    }
    // UAVs that never report a transition stay in their machine's initial state.
    if (mission.contains("uavs") && mission.contains("machines")) {
        for (const auto& u : mission.at("uavs")) {
            const auto& machine = mission.at("machines").at(u.at("machine").get<std::string>());
            m.final_states[u.at("id").get<std::string>()] = machine.at("initial").get<std::string>();
        }
    }
    std::map<std::string, std::set<msg::AlertId>> displayed;
    std::map<std::string, std::set<msg::AlertId>> suppressed;
    double response_total = 0.0;
    std::uint64_t responses = 0;

    for (const auto& rec : log.records) {
        const auto& p = rec.envelope.payload;
        if (const auto* r = std::get_if<msg::DetectionReport>(&p)) {
            if (r->reverted) {
                ++m.reverted_decisions;
                continue;
            }
            const auto it = victims.find(r->detection.target_id);
            if (it != victims.end() && it->second) {
                ++m.detections_true;
            } else {
                ++m.detections_false;
            }
        } else if (const auto* c = std::get_if<msg::CoordMessage>(&p)) {
            switch (c->kind) {
            case msg::CoordKind::help_requested: ++m.sessions_opened; break;
            case msg::CoordKind::confirmation: ++m.sessions_confirmed; break;
            case msg::CoordKind::refutation: ++m.sessions_refuted; break;
            case msg::CoordKind::no_response:
                ++m.sessions_timed_out;
                if (c->note == "human failure to respond") {
                    ++m.human_failures;
                }
                break;
            }
            if ((c->kind == msg::CoordKind::confirmation || c->kind == msg::CoordKind::refutation) &&
                c->closed_at) {
                response_total += static_cast<double>(*c->closed_at - c->opened_at);
                ++responses;
            }
        } else if (const auto* t = std::get_if<msg::TriageUpdate>(&p)) {
            auto& d = displayed[t->view];
            auto& s = suppressed[t->view];
            for (const auto& a : t->displayed) {
                d.insert(a.alert.id);
            }
            s.insert(t->suppressed.begin(), t->suppressed.end());
        } else if (std::holds_alternative<msg::AdaptationEvent>(p)) {
            ++m.adaptations;
        } else if (std::holds_alternative<msg::ExplanationMessage>(p)) {
            ++m.explanations;
        } else if (const auto* a = std::get_if<msg::AutonomyMessage>(&p)) {
            if (a->curtailed && a->reason == "tug-of-war") {
                ++m.tug_of_war_conflicts;
            }
        } else if (const auto* rc = std::get_if<msg::RuleChange>(&p)) {
            if (rc->origin == msg::RuleOrigin::machine) {
                ++m.machine_rule_changes;
            }
        } else if (const auto* cr = std::get_if<msg::CommandResult>(&p)) {
            if (cr->stale) {
                ++m.stale_commands;
            }
        } else if (const auto* sc = std::get_if<msg::StateChange>(&p)) {
            m.final_states[sc->uav] = sc->to;
        }
    }
    for (const auto& [view, ids] : displayed) {
        m.alerts[view].displayed = ids.size();
    }
    for (const auto& [view, ids] : suppressed) {
        m.alerts[view].suppressed = ids.size();
    }
    if (responses > 0) {
        m.mean_response_ms = response_total / static_cast<double>(responses);
    }
    m.duration_ms = log.end_at.value_or(0);
    m.outcome = log.outcome;
    m.incomplete = !log.end_at || log.outcome == "incomplete";
    return m;
}

RunResult run_scenario(const gcs::MissionSpec& spec, const std::optional<HumanScript>& script,
                       std::uint64_t seed)
{
    std::ostringstream out;
    gcs::MissionOptions options;
    options.seed = seed;
    options.log = &out;
    gcs::Mission mission(spec, options);
    const ScriptedHuman* human = nullptr;
    if (script) {
        auto h = std::make_unique<ScriptedHuman>(*script, mission.spec(), derive_seed(seed, 1000));
        human = h.get();
        mission.add_actor(std::move(h));
    }
    RunResult r;
    r.outcome = mission.run();
    if (human != nullptr) {
        r.prompts = human->prompts();
    }
    r.final_state = mission.gcs().serialize_state();
    r.conflicts = mission.gcs().conflicts();
    r.log = out.str();
    std::istringstream in(r.log);
    r.metrics = compute_metrics(gcs::parse_event_log(in));
    return r;
}

LogComparison compare_logs(const std::string& a, const std::string& b)
{
    std::istringstream ia(a);
    std::istringstream ib(b);
    std::string la;
    std::string lb;
    LogComparison c;
    std::size_t line = 0;
    while (true) {
        const bool ha = static_cast<bool>(std::getline(ia, la));
        const bool hb = static_cast<bool>(std::getline(ib, lb));
        ++line;
        if (!ha && !hb) {
            return c;
        }
        if (ha && hb && la == lb) {
            continue;
        }
        c.equal = false;
        c.line = line;
        // Line 1 is the header; record n sits on line n + 1.
        c.first_divergent_seq = line - 1;
        return c;
    }
}

} // namespace hmt::harness
