// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/msg/messages.hpp"

#include <nlohmann/json.hpp>

namespace hmt {

void to_json(nlohmann::json& j, const LatLon& p);
void from_json(const nlohmann::json& j, LatLon& p);

} // namespace hmt

namespace hmt::msg {

using nlohmann::json;

#define HMT_MSG_JSON(T)                  \
    void to_json(json& j, const T& v);   \
    void from_json(const json& j, T& v);

HMT_MSG_JSON(Health)
HMT_MSG_JSON(DetectionDecision)
HMT_MSG_JSON(Trigger)
HMT_MSG_JSON(Initiator)
HMT_MSG_JSON(Actor)
HMT_MSG_JSON(DirectiveKind)
HMT_MSG_JSON(SessionDecision)
HMT_MSG_JSON(CoordKind)
HMT_MSG_JSON(RuleOrigin)
HMT_MSG_JSON(Telemetry)
HMT_MSG_JSON(StateChange)
HMT_MSG_JSON(DetectionEvent)
HMT_MSG_JSON(DetectionReport)
HMT_MSG_JSON(Direction)
HMT_MSG_JSON(ControlAction)
HMT_MSG_JSON(AdaptationEvent)
HMT_MSG_JSON(DirectiveParams)
HMT_MSG_JSON(HumanDirective)
HMT_MSG_JSON(DirectiveCommand)
HMT_MSG_JSON(ResponseCommand)
HMT_MSG_JSON(RoutedDirective)
HMT_MSG_JSON(DirectiveAck)
HMT_MSG_JSON(CoordMessage)
HMT_MSG_JSON(AutonomyMessage)
HMT_MSG_JSON(Alert)
HMT_MSG_JSON(RuleEntry)
HMT_MSG_JSON(DisplayedAlert)
HMT_MSG_JSON(TriageUpdate)
HMT_MSG_JSON(RuleChange)
HMT_MSG_JSON(ExplanationMessage)
HMT_MSG_JSON(CommandResult)

#undef HMT_MSG_JSON

/// {"type": <tag>, ...fields}
json payload_to_json(const Payload& p);
/// Throws ProtocolError on unknown kinds or malformed bodies.
Payload payload_from_json(const json& j);

} // namespace hmt::msg
