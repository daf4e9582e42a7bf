// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/affordances.hpp"

#include <array>

namespace hmt::coord {

using msg::DirectiveKind;

AffordanceTable AffordanceTable::standard()
{
    const AffordanceSet flying{DirectiveKind::altitude_change, DirectiveKind::return_to_launch,
                               DirectiveKind::manual_override};
    auto with = [](AffordanceSet s, std::initializer_list<DirectiveKind> extra) {
        s.insert(extra);
        return s;
    };
    return AffordanceTable({
        {"standby", {DirectiveKind::goal_update, DirectiveKind::manual_override}},
        {"takeoff", flying},
        {"searching", with(flying, {DirectiveKind::goal_update, DirectiveKind::video_request})},
        {"surveillance", with(flying, {DirectiveKind::goal_update, DirectiveKind::video_request})},
        {"victim_detected", with(flying, {DirectiveKind::video_request})},
        {"tracking", with(flying, {DirectiveKind::goal_update, DirectiveKind::video_request})},
        {"delivery", {DirectiveKind::return_to_launch, DirectiveKind::manual_override, DirectiveKind::video_request}},
        {"rtl", {DirectiveKind::altitude_change, DirectiveKind::manual_override}},
        {"land", {DirectiveKind::manual_override}},
    });
}

bool AffordanceTable::knows(std::string_view state) const { return base_.find(state) != base_.end(); }

AffordanceResult AffordanceTable::compute(const AffordanceQuery& q) const
{
    AffordanceResult out;
    const auto it = base_.find(q.state);
    if (it == base_.end()) {
        out.known_state = false;
        return out;
    }
    out.allowed = it->second;
    if (!camera_on(q.state)) {
        out.allowed.erase(DirectiveKind::video_request);
    }
    if (q.open_session) {
        out.allowed.insert(DirectiveKind::confirm_detection);
        out.allowed.insert(DirectiveKind::reject_detection);
    } else {
        out.allowed.erase(DirectiveKind::confirm_detection);
        out.allowed.erase(DirectiveKind::reject_detection);
    }
    if (q.curtailed) {
        out.allowed.insert(DirectiveKind::restore_autonomy);
        out.allowed.erase(DirectiveKind::goal_update);
    } else {
        out.allowed.erase(DirectiveKind::restore_autonomy);
    }
    return out;
}

bool AffordanceTable::camera_on(std::string_view state)
{
    static constexpr std::array<std::string_view, 5> kCamera{"searching", "surveillance", "victim_detected",
                                                             "tracking", "delivery"};
    for (auto s : kCamera) {
        if (s == state) {
            return true;
        }
    }
    return false;
}

} // namespace hmt::coord
