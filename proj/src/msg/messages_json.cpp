// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/msg/json.hpp"

#include "hmt/common/error.hpp"

#include <string>

namespace hmt {

void to_json(nlohmann::json& j, const LatLon& p) { j = nlohmann::json::array({p.lat, p.lon}); }

void from_json(const nlohmann::json& j, LatLon& p)
{
    if (!j.is_array() || j.size() != 2) {
        throw ProtocolError("position must be [lat, lon]");
    }
    p.lat = j.at(0).get<double>();
    p.lon = j.at(1).get<double>();
}

} // namespace hmt

namespace hmt::msg {

namespace {

template <typename E, std::size_t N>
E enum_from(const json& j, const std::array<E, N>& values, std::string_view what)
{
    const auto name = j.get<std::string>();
    for (E v : values) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw ProtocolError("unknown " + std::string(what) + " '" + name + "'");
}

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& v)
{
    if (v) {
        j[key] = *v;
    }
}

template <typename T>
void get_opt(const json& j, const char* key, std::optional<T>& v)
{
    if (auto it = j.find(key); it != j.end() && !it->is_null()) {
        v = it->get<T>();
    } else {
        v.reset();
    }
}

template <typename T>
void get_or(const json& j, const char* key, T& v, T fallback)
{
    if (auto it = j.find(key); it != j.end()) {
        v = it->get<T>();
    } else {
        v = fallback;
    }
}

} // namespace

void to_json(json& j, const Health& v) { j = to_string(v); }
void from_json(const json& j, Health& v)
{
    v = enum_from(j, std::array{Health::nominal, Health::degraded, Health::failsafe}, "health");
}

void to_json(json& j, const DetectionDecision& v) { j = to_string(v); }
void from_json(const json& j, DetectionDecision& v)
{
    v = enum_from(j,
                  std::array{DetectionDecision::act_autonomously, DetectionDecision::continue_search,
                             DetectionDecision::request_help},
                  "decision");
}

void to_json(json& j, const Trigger& v) { j = to_string(v); }
void from_json(const json& j, Trigger& v) { v = enum_from(j, std::array{Trigger::external, Trigger::internal}, "trigger"); }

void to_json(json& j, const Initiator& v) { j = to_string(v); }
void from_json(const json& j, Initiator& v)
{
    v = enum_from(j, std::array{Initiator::human, Initiator::machine}, "initiator");
}

void to_json(json& j, const Actor& v) { j = to_string(v); }
void from_json(const json& j, Actor& v) { v = enum_from(j, std::array{Actor::human, Actor::machine}, "actor"); }

void to_json(json& j, const DirectiveKind& v) { j = to_string(v); }
void from_json(const json& j, DirectiveKind& v)
{
    auto kind = directive_kind_from(j.get<std::string>());
    if (!kind) {
        throw ProtocolError("unknown directive kind '" + j.get<std::string>() + "'");
    }
    v = *kind;
}

void to_json(json& j, const SessionDecision& v) { j = to_string(v); }
void from_json(const json& j, SessionDecision& v)
{
    v = enum_from(j, std::array{SessionDecision::confirm, SessionDecision::reject}, "decision");
}

void to_json(json& j, const CoordKind& v) { j = to_string(v); }
void from_json(const json& j, CoordKind& v)
{
    v = enum_from(j,
                  std::array{CoordKind::help_requested, CoordKind::confirmation, CoordKind::refutation,
                             CoordKind::no_response},
                  "coordination message");
}

void to_json(json& j, const RuleOrigin& v) { j = to_string(v); }
void from_json(const json& j, RuleOrigin& v)
{
    v = enum_from(j, std::array{RuleOrigin::config, RuleOrigin::human, RuleOrigin::machine}, "rule origin");
}

void to_json(json& j, const Telemetry& v)
{
    j = json{{"uav", v.uav},         {"state", v.state},   {"position", v.position},
             {"altitude_m", v.altitude_m}, {"battery_pct", v.battery_pct}, {"health", v.health},
             {"trust_score", v.trust_score}, {"at", v.at}};
}
void from_json(const json& j, Telemetry& v)
{
    j.at("uav").get_to(v.uav);
    j.at("state").get_to(v.state);
    j.at("position").get_to(v.position);
    j.at("altitude_m").get_to(v.altitude_m);
    j.at("battery_pct").get_to(v.battery_pct);
    j.at("health").get_to(v.health);
    j.at("trust_score").get_to(v.trust_score);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const StateChange& v)
{
    j = json{{"uav", v.uav}, {"from", v.from}, {"event", v.event}, {"to", v.to}, {"at", v.at}};
}
void from_json(const json& j, StateChange& v)
{
    j.at("uav").get_to(v.uav);
    j.at("from").get_to(v.from);
    j.at("event").get_to(v.event);
    j.at("to").get_to(v.to);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const DetectionEvent& v)
{
    j = json{{"uav", v.uav},           {"object_class", v.object_class}, {"confidence", v.confidence},
             {"reliability", v.reliability}, {"location", v.location},     {"frame", v.frame},
             {"target_id", v.target_id}, {"at", v.at}};
}
void from_json(const json& j, DetectionEvent& v)
{
    j.at("uav").get_to(v.uav);
    j.at("object_class").get_to(v.object_class);
    j.at("confidence").get_to(v.confidence);
    j.at("reliability").get_to(v.reliability);
    j.at("location").get_to(v.location);
    j.at("frame").get_to(v.frame);
    get_or<std::string>(j, "target_id", v.target_id, "");
    j.at("at").get_to(v.at);
}

void to_json(json& j, const DetectionReport& v)
{
    j = json{{"detection", v.detection}, {"decision", v.decision}, {"reverted", v.reverted}};
}
void from_json(const json& j, DetectionReport& v)
{
    j.at("detection").get_to(v.detection);
    j.at("decision").get_to(v.decision);
    get_or(j, "reverted", v.reverted, false);
}

void to_json(json& j, const Direction& v)
{
    if (v.is_categorical()) {
        j = json{{"value", v.value}, {"set", v.set}};
    } else {
        j = json{{"sign", v.sign}};
    }
}
void from_json(const json& j, Direction& v)
{
    if (j.contains("value")) {
        v = Direction::categorical(j.at("value").get<std::string>(), j.at("set").get<bool>());
    } else {
        v = Direction::numeric(j.at("sign").get<int>());
    }
}

void to_json(json& j, const ControlAction& v)
{
    j = json{{"dimension", v.dimension}, {"direction", v.direction}, {"failsafe", v.failsafe}};
}
void from_json(const json& j, ControlAction& v)
{
    j.at("dimension").get_to(v.dimension);
    j.at("direction").get_to(v.direction);
    get_or(j, "failsafe", v.failsafe, false);
}

void to_json(json& j, const AdaptationEvent& v)
{
    j = json{{"uav", v.uav},         {"color", v.color},  {"trigger", v.trigger}, {"initiator", v.initiator},
             {"event", v.event_snippet}, {"rationale", v.rationale_snippet}, {"at", v.at}};
    put_opt(j, "action", v.action_snippet);
    put_opt(j, "desired_changes", v.desired_changes_snippet);
    put_opt(j, "cause", v.cause_snippet);
    put_opt(j, "control", v.control);
}
void from_json(const json& j, AdaptationEvent& v)
{
    j.at("uav").get_to(v.uav);
    get_or<std::string>(j, "color", v.color, "");
    j.at("trigger").get_to(v.trigger);
    j.at("initiator").get_to(v.initiator);
    get_or<std::string>(j, "event", v.event_snippet, "");
    get_or<std::string>(j, "rationale", v.rationale_snippet, "");
    get_opt(j, "action", v.action_snippet);
    get_opt(j, "desired_changes", v.desired_changes_snippet);
    get_opt(j, "cause", v.cause_snippet);
    get_opt(j, "control", v.control);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const DirectiveParams& v)
{
    j = json::object();
    put_opt(j, "delta_m", v.delta_m);
    put_opt(j, "altitude_m", v.altitude_m);
    if (!v.route.empty()) {
        j["route"] = v.route;
    }
    if (!v.session.empty()) {
        j["session"] = v.session;
    }
}
void from_json(const json& j, DirectiveParams& v)
{
    if (!j.is_object()) {
        throw ProtocolError("directive params must be an object");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "delta_m" && key != "altitude_m" && key != "route" && key != "session") {
            throw ProtocolError("unknown directive parameter '" + key + "'");
        }
    }
    get_opt(j, "delta_m", v.delta_m);
    get_opt(j, "altitude_m", v.altitude_m);
    v.route.clear();
    if (j.contains("route")) {
        j.at("route").get_to(v.route);
    }
    get_or<std::string>(j, "session", v.session, "");
}

void to_json(json& j, const HumanDirective& v)
{
    j = json{{"kind", v.kind}, {"target", v.target}, {"params", v.params}, {"issued_at", v.issued_at}};
}
void from_json(const json& j, HumanDirective& v)
{
    j.at("kind").get_to(v.kind);
    j.at("target").get_to(v.target);
    if (j.contains("params")) {
        j.at("params").get_to(v.params);
    } else {
        v.params = {};
    }
    get_or<SimTime>(j, "issued_at", v.issued_at, 0);
}

void to_json(json& j, const DirectiveCommand& v)
{
    j = json{{"id", v.id}, {"version", v.version}, {"directive", v.directive}, {"rc", v.rc}, {"abort", v.abort}};
}
void from_json(const json& j, DirectiveCommand& v)
{
    j.at("id").get_to(v.id);
    j.at("version").get_to(v.version);
    get_or(j, "rc", v.rc, false);
    get_or(j, "abort", v.abort, false);
    if (j.contains("directive")) {
        j.at("directive").get_to(v.directive);
    } else if (!v.abort) {
        throw ProtocolError("directive command without directive");
    }
}

void to_json(json& j, const ResponseCommand& v)
{
    j = json{{"id", v.id}, {"version", v.version}, {"session", v.session}, {"decision", v.decision}};
}
void from_json(const json& j, ResponseCommand& v)
{
    j.at("id").get_to(v.id);
    j.at("version").get_to(v.version);
    j.at("session").get_to(v.session);
    j.at("decision").get_to(v.decision);
}

void to_json(json& j, const RoutedDirective& v)
{
    j = json{{"command_id", v.command_id}, {"directive", v.directive}, {"rc", v.rc}};
}
void from_json(const json& j, RoutedDirective& v)
{
    j.at("command_id").get_to(v.command_id);
    j.at("directive").get_to(v.directive);
    get_or(j, "rc", v.rc, false);
}

void to_json(json& j, const DirectiveAck& v)
{
    j = json{{"uav", v.uav}, {"command_id", v.command_id}, {"kind", v.kind},
             {"ack", v.ack}, {"reason", v.reason},         {"at", v.at}};
}
void from_json(const json& j, DirectiveAck& v)
{
    j.at("uav").get_to(v.uav);
    j.at("command_id").get_to(v.command_id);
    j.at("kind").get_to(v.kind);
    j.at("ack").get_to(v.ack);
    get_or<std::string>(j, "reason", v.reason, "");
    j.at("at").get_to(v.at);
}

void to_json(json& j, const CoordMessage& v)
{
    j = json{{"session", v.session},     {"uav", v.uav},   {"kind", v.kind},
             {"detection", v.detection}, {"waiting_period", v.waiting_period},
             {"opened_at", v.opened_at}, {"note", v.note}};
    put_opt(j, "closed_at", v.closed_at);
}
void from_json(const json& j, CoordMessage& v)
{
    j.at("session").get_to(v.session);
    j.at("uav").get_to(v.uav);
    j.at("kind").get_to(v.kind);
    j.at("detection").get_to(v.detection);
    j.at("waiting_period").get_to(v.waiting_period);
    j.at("opened_at").get_to(v.opened_at);
    get_opt(j, "closed_at", v.closed_at);
    get_or<std::string>(j, "note", v.note, "");
}

void to_json(json& j, const AutonomyMessage& v)
{
    j = json{{"uav", v.uav},         {"dimension", v.dimension}, {"curtailed", v.curtailed},
             {"reason", v.reason},   {"actor", v.actor},         {"at", v.at}};
}
void from_json(const json& j, AutonomyMessage& v)
{
    j.at("uav").get_to(v.uav);
    j.at("dimension").get_to(v.dimension);
    j.at("curtailed").get_to(v.curtailed);
    get_or<std::string>(j, "reason", v.reason, "");
    j.at("actor").get_to(v.actor);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const Alert& v)
{
    j = json{{"id", v.id},           {"alert_type", v.alert_type}, {"source", v.source},
             {"message", v.message}, {"raised_at", v.raised_at},   {"force_essential", v.force_essential}};
    put_opt(j, "expires_at", v.expires_at);
}
void from_json(const json& j, Alert& v)
{
    j.at("id").get_to(v.id);
    j.at("alert_type").get_to(v.alert_type);
    j.at("source").get_to(v.source);
    get_or<std::string>(j, "message", v.message, "");
    j.at("raised_at").get_to(v.raised_at);
    get_opt(j, "expires_at", v.expires_at);
    get_or(j, "force_essential", v.force_essential, false);
}

void to_json(json& j, const RuleEntry& v)
{
    if (v.essential) {
        j = json{{"essential", true}};
    } else {
        j = json{{"priority", v.priority}};
    }
}
void from_json(const json& j, RuleEntry& v)
{
    const bool essential = j.value("essential", false);
    const bool has_priority = j.contains("priority");
    if (essential == has_priority) {
        throw ProtocolError("rule entry needs exactly one of essential:true or priority");
    }
    if (essential) {
        v = RuleEntry::make_essential();
    } else {
        v = RuleEntry::with_priority(j.at("priority").get<int>());
    }
}

void to_json(json& j, const DisplayedAlert& v)
{
    j = json{{"alert", v.alert}, {"essential", v.essential}, {"priority", v.priority}};
}
void from_json(const json& j, DisplayedAlert& v)
{
    j.at("alert").get_to(v.alert);
    j.at("essential").get_to(v.essential);
    j.at("priority").get_to(v.priority);
}

void to_json(json& j, const TriageUpdate& v)
{
    j = json{{"view", v.view}, {"displayed", v.displayed}, {"suppressed", v.suppressed}, {"at", v.at}};
}
void from_json(const json& j, TriageUpdate& v)
{
    j.at("view").get_to(v.view);
    j.at("displayed").get_to(v.displayed);
    j.at("suppressed").get_to(v.suppressed);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const RuleChange& v)
{
    j = json{{"alert_type", v.alert_type}, {"view", v.view},     {"before", v.before},
             {"after", v.after},           {"origin", v.origin}, {"at", v.at}};
}
void from_json(const json& j, RuleChange& v)
{
    j.at("alert_type").get_to(v.alert_type);
    j.at("view").get_to(v.view);
    j.at("before").get_to(v.before);
    j.at("after").get_to(v.after);
    j.at("origin").get_to(v.origin);
    j.at("at").get_to(v.at);
}

void to_json(json& j, const ExplanationMessage& v)
{
    j = json{{"uav", v.uav},           {"text", v.text},          {"human_directed", v.human_directed},
             {"event_at", v.event_at}, {"rendered_at", v.rendered_at}};
}
void from_json(const json& j, ExplanationMessage& v)
{
    j.at("uav").get_to(v.uav);
    j.at("text").get_to(v.text);
    j.at("human_directed").get_to(v.human_directed);
    j.at("event_at").get_to(v.event_at);
    j.at("rendered_at").get_to(v.rendered_at);
}

void to_json(json& j, const CommandResult& v)
{
    j = json{{"command_id", v.command_id}, {"accepted", v.accepted}, {"stale", v.stale},
             {"reason", v.reason},         {"at", v.at}};
}
void from_json(const json& j, CommandResult& v)
{
    j.at("command_id").get_to(v.command_id);
    j.at("accepted").get_to(v.accepted);
    j.at("stale").get_to(v.stale);
    get_or<std::string>(j, "reason", v.reason, "");
    j.at("at").get_to(v.at);
}

json payload_to_json(const Payload& p)
{
    json j = std::visit([](const auto& body) { return json(body); }, p);
    j["type"] = payload_kind(p);
    return j;
}

namespace {

template <std::size_t I = 0>
Payload decode_alternative(std::string_view kind, const json& j)
{
    if constexpr (I == std::variant_size_v<Payload>) {
        throw ProtocolError("unknown payload kind '" + std::string(kind) + "'");
    } else {
        using T = std::variant_alternative_t<I, Payload>;
        if (payload_kind(Payload(std::in_place_index<I>)) == kind) {
            return Payload(std::in_place_index<I>, j.get<T>());
        }
        return decode_alternative<I + 1>(kind, j);
    }
}

} // namespace

Payload payload_from_json(const json& j)
{
    try {
        const auto kind = j.at("type").get<std::string>();
        return decode_alternative(kind, j);
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed payload: ") + e.what());
    }
}

} // namespace hmt::msg
