// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Message bodies exchanged over the bus. Every type here has a JSON form
// (see messages_json.cpp) which is what the event log stores.

#include "hmt/common/geo.hpp"
#include "hmt/common/time.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hmt::msg {

enum class Health { nominal, degraded, failsafe };

struct Telemetry
{
    std::string uav;
    std::string state;
    LatLon position;
    double altitude_m = 0.0;
    double battery_pct = 100.0;
    Health health = Health::nominal;
    double trust_score = 0.0;
    SimTime at = 0;

    friend bool operator==(const Telemetry&, const Telemetry&) = default;
};

struct StateChange
{
    std::string uav;
    std::string from;
    std::string event;
    std::string to;
    SimTime at = 0;

    friend bool operator==(const StateChange&, const StateChange&) = default;
};

struct DetectionEvent
{
    std::string uav;
    std::string object_class;
    double confidence = 0.0;
    double reliability = 0.0;
    LatLon location;
    std::uint64_t frame = 0;
    /// Ground-truth object that produced the detection. Simulation only;
    /// scripted humans and metrics read it, the autonomy does not.
    std::string target_id;
    SimTime at = 0;

    friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

enum class DetectionDecision { act_autonomously, continue_search, request_help };

struct DetectionReport
{
    DetectionEvent detection;
    DetectionDecision decision = DetectionDecision::continue_search;
    /// Decision re-taken after the human failed to respond.
    bool reverted = false;

    friend bool operator==(const DetectionReport&, const DetectionReport&) = default;
};

enum class Trigger { external, internal };
enum class Initiator { human, machine };
enum class Actor { human, machine };

/// Sense of a control action. Numeric axes carry a sign; categorical axes
/// carry a value that is being set or unset.
struct Direction
{
    int sign = 0;
    std::string value;
    bool set = false;

    static Direction numeric(int s) { return {s > 0 ? 1 : (s < 0 ? -1 : 0), {}, false}; }
    static Direction categorical(std::string v, bool is_set) { return {0, std::move(v), is_set}; }

    [[nodiscard]] bool is_categorical() const { return !value.empty(); }

    friend bool operator==(const Direction&, const Direction&) = default;
};

/// Two directions oppose if they push the same axis opposite ways.
bool opposing(const Direction& a, const Direction& b);

struct ControlAction
{
    std::string dimension;
    Direction direction;
    bool failsafe = false;

    friend bool operator==(const ControlAction&, const ControlAction&) = default;
};

/// Record of one self-adaptation, carrying the explanation snippets for
/// its (trigger, initiator) class.
struct AdaptationEvent
{
    std::string uav;
    std::string color;
    Trigger trigger = Trigger::external;
    Initiator initiator = Initiator::machine;
    std::string event_snippet;
    std::optional<std::string> action_snippet;
    std::optional<std::string> desired_changes_snippet;
    std::string rationale_snippet;
    std::optional<std::string> cause_snippet;
    std::optional<ControlAction> control;
    SimTime at = 0;

    /// Machine-initiated adaptation. Internal machine events need no cause.
    static AdaptationEvent machine(std::string uav, std::string color, Trigger trigger, std::string event,
                                   std::string action, std::string rationale, SimTime at);

    /// Adaptation that needs the human. Internal ones must name a cause.
    static AdaptationEvent human(std::string uav, std::string color, Trigger trigger, std::string event,
                                 std::string desired_changes, std::string rationale,
                                 std::optional<std::string> cause, SimTime at);

    /// Names of snippets the event's template class requires but lacks.
    [[nodiscard]] std::vector<std::string> missing_snippets() const;

    friend bool operator==(const AdaptationEvent&, const AdaptationEvent&) = default;
};

enum class DirectiveKind {
    confirm_detection,
    reject_detection,
    return_to_launch,
    altitude_change,
    goal_update,
    manual_override,
    restore_autonomy,
    video_request,
};

inline constexpr DirectiveKind kAllDirectiveKinds[] = {
    DirectiveKind::confirm_detection, DirectiveKind::reject_detection, DirectiveKind::return_to_launch,
    DirectiveKind::altitude_change,   DirectiveKind::goal_update,      DirectiveKind::manual_override,
    DirectiveKind::restore_autonomy,  DirectiveKind::video_request,
};

std::string_view to_string(DirectiveKind kind);
std::optional<DirectiveKind> directive_kind_from(std::string_view name);

/// Kind-specific directive parameters. Which fields are required is fixed
/// per kind; see validate_params().
struct DirectiveParams
{
    std::optional<double> delta_m;     // altitude_change
    std::vector<LatLon> route;         // goal_update
    std::optional<double> altitude_m;  // manual_override
    std::string session;               // confirm_detection / reject_detection

    friend bool operator==(const DirectiveParams&, const DirectiveParams&) = default;
};

struct HumanDirective
{
    DirectiveKind kind = DirectiveKind::video_request;
    std::string target;
    DirectiveParams params;
    SimTime issued_at = 0;

    friend bool operator==(const HumanDirective&, const HumanDirective&) = default;
};

/// Throws ProtocolError if params do not fit the directive kind.
void validate_params(const HumanDirective& d);

/// Operator directive entering the GCS on `human/directive`.
struct DirectiveCommand
{
    std::string id;
    std::uint64_t version = 0;
    HumanDirective directive;
    /// Hand-held radio controller channel.
    bool rc = false;
    /// Mission-wide abort: return every UAV to launch.
    bool abort = false;

    friend bool operator==(const DirectiveCommand&, const DirectiveCommand&) = default;
};

enum class SessionDecision { confirm, reject };

/// Operator answer to a help request, on `human/response`.
struct ResponseCommand
{
    std::string id;
    std::uint64_t version = 0;
    std::string session;
    SessionDecision decision = SessionDecision::confirm;

    friend bool operator==(const ResponseCommand&, const ResponseCommand&) = default;
};

/// Validated directive forwarded by the GCS on `uav/<id>/directive`.
struct RoutedDirective
{
    std::string command_id;
    HumanDirective directive;
    bool rc = false;

    friend bool operator==(const RoutedDirective&, const RoutedDirective&) = default;
};

struct DirectiveAck
{
    std::string uav;
    std::string command_id;
    DirectiveKind kind = DirectiveKind::video_request;
    bool ack = false;
    std::string reason;
    SimTime at = 0;

    friend bool operator==(const DirectiveAck&, const DirectiveAck&) = default;
};

enum class CoordKind { help_requested, confirmation, refutation, no_response };

/// Session lifecycle message on `gcs/coord/<session>`.
struct CoordMessage
{
    std::string session;
    std::string uav;
    CoordKind kind = CoordKind::help_requested;
    DetectionEvent detection;
    SimTime waiting_period = 0;
    SimTime opened_at = 0;
    std::optional<SimTime> closed_at;
    std::string note;

    friend bool operator==(const CoordMessage&, const CoordMessage&) = default;
};

/// Autonomy curtailment or restoration on `gcs/autonomy/<uav>`.
struct AutonomyMessage
{
    std::string uav;
    std::string dimension;
    bool curtailed = false;
    std::string reason;
    Actor actor = Actor::machine;
    SimTime at = 0;

    friend bool operator==(const AutonomyMessage&, const AutonomyMessage&) = default;
};

using AlertId = std::uint64_t;

struct Alert
{
    AlertId id = 0;
    std::string alert_type;
    std::string source;
    std::string message;
    SimTime raised_at = 0;
    std::optional<SimTime> expires_at;
    /// Displayed regardless of the rule table (help requests, model drift).
    bool force_essential = false;

    friend bool operator==(const Alert&, const Alert&) = default;
};

/// Either essential (always displayed) or a priority in [1, 5], 1 highest.
struct RuleEntry
{
    bool essential = false;
    int priority = 3;

    static RuleEntry make_essential() { return {true, 0}; }
    static RuleEntry with_priority(int p) { return {false, p}; }

    friend bool operator==(const RuleEntry&, const RuleEntry&) = default;
};

enum class RuleOrigin { config, human, machine };

struct DisplayedAlert
{
    Alert alert;
    bool essential = false;
    int priority = 0;

    friend bool operator==(const DisplayedAlert&, const DisplayedAlert&) = default;
};

/// Per-view triage decision set on `gcs/alerts/<view>`.
struct TriageUpdate
{
    std::string view;
    std::vector<DisplayedAlert> displayed;
    std::vector<AlertId> suppressed;
    SimTime at = 0;

    friend bool operator==(const TriageUpdate&, const TriageUpdate&) = default;
};

/// Rule-table edit on `gcs/alerts/rules`.
struct RuleChange
{
    std::string alert_type;
    std::string view;
    RuleEntry before;
    RuleEntry after;
    RuleOrigin origin = RuleOrigin::config;
    SimTime at = 0;

    friend bool operator==(const RuleChange&, const RuleChange&) = default;
};

struct ExplanationMessage
{
    std::string uav;
    std::string text;
    bool human_directed = false;
    SimTime event_at = 0;
    SimTime rendered_at = 0;

    friend bool operator==(const ExplanationMessage&, const ExplanationMessage&) = default;
};

/// Outcome of an operator command, on `gcs/commands`.
struct CommandResult
{
    std::string command_id;
    bool accepted = false;
    bool stale = false;
    std::string reason;
    SimTime at = 0;

    friend bool operator==(const CommandResult&, const CommandResult&) = default;
};

using Payload = std::variant<Telemetry, StateChange, DetectionReport, AdaptationEvent, DirectiveCommand,
                             ResponseCommand, RoutedDirective, DirectiveAck, CoordMessage, AutonomyMessage,
                             TriageUpdate, RuleChange, ExplanationMessage, CommandResult>;

/// Stable tag naming the payload alternative in JSON.
std::string_view payload_kind(const Payload& p);

std::string_view to_string(Health h);
std::string_view to_string(DetectionDecision d);
std::string_view to_string(Trigger t);
std::string_view to_string(Initiator i);
std::string_view to_string(Actor a);
std::string_view to_string(SessionDecision d);
std::string_view to_string(CoordKind k);
std::string_view to_string(RuleOrigin o);

} // namespace hmt::msg
