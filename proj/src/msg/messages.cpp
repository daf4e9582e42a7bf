// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/msg/messages.hpp"

#include "hmt/common/error.hpp"

#include <array>
#include <utility>

namespace hmt::msg {

bool opposing(const Direction& a, const Direction& b)
{
    if (a.is_categorical() != b.is_categorical()) {
        return false;
    }
    if (a.is_categorical()) {
        return a.value == b.value && a.set != b.set;
    }
    return a.sign != 0 && a.sign == -b.sign;
}

AdaptationEvent AdaptationEvent::machine(std::string uav, std::string color, Trigger trigger, std::string event,
                                         std::string action, std::string rationale, SimTime at)
{
    AdaptationEvent e;
    e.uav = std::move(uav);
    e.color = std::move(color);
    e.trigger = trigger;
    e.initiator = Initiator::machine;
    e.event_snippet = std::move(event);
    e.action_snippet = std::move(action);
    e.rationale_snippet = std::move(rationale);
    e.at = at;
    return e;
}

AdaptationEvent AdaptationEvent::human(std::string uav, std::string color, Trigger trigger, std::string event,
                                       std::string desired_changes, std::string rationale,
                                       std::optional<std::string> cause, SimTime at)
{
    if (trigger == Trigger::internal && (!cause || cause->empty())) {
        throw StateError("internal human-directed adaptation requires a cause snippet");
    }
    AdaptationEvent e;
    e.uav = std::move(uav);
    e.color = std::move(color);
    e.trigger = trigger;
    e.initiator = Initiator::human;
    e.event_snippet = std::move(event);
    e.desired_changes_snippet = std::move(desired_changes);
    e.rationale_snippet = std::move(rationale);
    e.cause_snippet = std::move(cause);
    e.at = at;
    return e;
}

std::vector<std::string> AdaptationEvent::missing_snippets() const
{
    std::vector<std::string> missing;
    auto absent = [](const std::optional<std::string>& s) { return !s || s->empty(); };
    if (color.empty() && uav.empty()) {
        missing.emplace_back("id/color");
    }
    if (event_snippet.empty()) {
        missing.emplace_back("Event");
    }
    if (initiator == Initiator::machine && absent(action_snippet)) {
        missing.emplace_back("Action - internal changes");
    }
    if (initiator == Initiator::human && absent(desired_changes_snippet)) {
        missing.emplace_back("Desired Changes");
    }
    if (trigger == Trigger::internal && initiator == Initiator::human && absent(cause_snippet)) {
        missing.emplace_back("cause");
    }
    if (rationale_snippet.empty()) {
        missing.emplace_back("Rationale");
    }
    return missing;
}

namespace {

constexpr std::array<std::pair<DirectiveKind, std::string_view>, 8> kDirectiveNames{{
    {DirectiveKind::confirm_detection, "confirm_detection"},
    {DirectiveKind::reject_detection, "reject_detection"},
    {DirectiveKind::return_to_launch, "return_to_launch"},
    {DirectiveKind::altitude_change, "altitude_change"},
    {DirectiveKind::goal_update, "goal_update"},
    {DirectiveKind::manual_override, "manual_override"},
    {DirectiveKind::restore_autonomy, "restore_autonomy"},
    {DirectiveKind::video_request, "video_request"},
}};

} // namespace

std::string_view to_string(DirectiveKind kind)
{
    for (const auto& [k, name] : kDirectiveNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<DirectiveKind> directive_kind_from(std::string_view name)
{
    for (const auto& [k, n] : kDirectiveNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

void validate_params(const HumanDirective& d)
{
    const auto& p = d.params;
    auto fail = [&](std::string_view what) {
        throw ProtocolError(std::string(to_string(d.kind)) + ": " + std::string(what));
    };
    if (d.target.empty()) {
        fail("missing target");
    }
    switch (d.kind) {
    case DirectiveKind::altitude_change:
        if (!p.delta_m) {
            fail("requires delta_m");
        }
        break;
    case DirectiveKind::goal_update:
        if (p.route.empty()) {
            fail("requires a non-empty route");
        }
        break;
    case DirectiveKind::confirm_detection:
    case DirectiveKind::reject_detection:
        if (p.session.empty()) {
            fail("requires session");
        }
        break;
    case DirectiveKind::manual_override:
    case DirectiveKind::return_to_launch:
    case DirectiveKind::restore_autonomy:
    case DirectiveKind::video_request:
        break;
    }
    if (d.kind != DirectiveKind::altitude_change && p.delta_m) {
        fail("delta_m not allowed");
    }
    if (d.kind != DirectiveKind::goal_update && !p.route.empty()) {
        fail("route not allowed");
    }
    if (d.kind != DirectiveKind::manual_override && p.altitude_m) {
        fail("altitude_m not allowed");
    }
}

std::string_view payload_kind(const Payload& p)
{
    static constexpr std::array<std::string_view, std::variant_size_v<Payload>> kNames{
        "telemetry",        "state_change",   "detection",      "adaptation",  "directive_command",
        "response_command", "routed_directive", "directive_ack", "coord",       "autonomy",
        "triage",           "rule_change",    "explanation",    "command_result",
    };
    return kNames[p.index()];
}

std::string_view to_string(Health h)
{
    switch (h) {
    case Health::nominal: return "nominal";
    case Health::degraded: return "degraded";
    case Health::failsafe: return "failsafe";
    }
    return "nominal";
}

std::string_view to_string(DetectionDecision d)
{
    switch (d) {
    case DetectionDecision::act_autonomously: return "act_autonomously";
    case DetectionDecision::continue_search: return "continue_search";
    case DetectionDecision::request_help: return "request_help";
    }
    return "continue_search";
}

std::string_view to_string(Trigger t) { return t == Trigger::external ? "external" : "internal"; }
std::string_view to_string(Initiator i) { return i == Initiator::human ? "human" : "machine"; }
std::string_view to_string(Actor a) { return a == Actor::human ? "human" : "machine"; }
std::string_view to_string(SessionDecision d) { return d == SessionDecision::confirm ? "confirm" : "reject"; }

std::string_view to_string(CoordKind k)
{
    switch (k) {
    case CoordKind::help_requested: return "help_requested";
    case CoordKind::confirmation: return "CONFIRMATION";
    case CoordKind::refutation: return "REFUTATION";
    case CoordKind::no_response: return "NO_RESPONSE";
    }
    return "help_requested";
}

std::string_view to_string(RuleOrigin o)
{
    switch (o) {
    case RuleOrigin::config: return "config";
    case RuleOrigin::human: return "human";
    case RuleOrigin::machine: return "machine";
    }
    return "config";
}

} // namespace hmt::msg
