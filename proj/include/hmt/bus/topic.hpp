// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace hmt::bus {

/// Concrete topic: non-empty '/'-separated levels, no wildcards.
bool valid_topic(std::string_view topic);

/// Subscription pattern: like a topic, but a level may be exactly "+".
bool valid_pattern(std::string_view pattern);

/// "+" matches exactly one level.
bool topic_matches(std::string_view pattern, std::string_view topic);

namespace topics {

std::string uav_telemetry(std::string_view uav);
std::string uav_state(std::string_view uav);
std::string uav_adaptation(std::string_view uav);
std::string uav_detection(std::string_view uav);
std::string uav_directive(std::string_view uav);
std::string uav_ack(std::string_view uav);
std::string gcs_alerts(std::string_view view);
std::string gcs_coord(std::string_view session);
std::string gcs_autonomy(std::string_view uav);

inline constexpr std::string_view kHumanDirective = "human/directive";
inline constexpr std::string_view kHumanResponse = "human/response";
inline constexpr std::string_view kExplanations = "gcs/alerts/explanations";
inline constexpr std::string_view kRules = "gcs/alerts/rules";
inline constexpr std::string_view kCommands = "gcs/commands";

/// Second level of `uav/<id>/...`, or empty.
std::string_view uav_of(std::string_view topic);

} // namespace topics

} // namespace hmt::bus
