// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/bus/topic.hpp"

#include <vector>

namespace hmt::bus {

namespace {

std::vector<std::string_view> levels(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto slash = s.find('/', start);
        if (slash == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, slash - start));
        start = slash + 1;
    }
}

bool valid_level(std::string_view level, bool allow_plus)
{
    if (level.empty()) {
        return false;
    }
    if (level == "+") {
        return allow_plus;
    }
    for (char c : level) {
        if (c == '+' || c == '#' || c == ' ' || static_cast<unsigned char>(c) < 0x20) {
            return false;
        }
    }
    return true;
}

bool valid_levels(std::string_view s, bool allow_plus)
{
    if (s.empty()) {
        return false;
    }
    for (auto level : levels(s)) {
        if (!valid_level(level, allow_plus)) {
            return false;
        }
    }
    return true;
}

} // namespace

bool valid_topic(std::string_view topic) { return valid_levels(topic, false); }

bool valid_pattern(std::string_view pattern) { return valid_levels(pattern, true); }

bool topic_matches(std::string_view pattern, std::string_view topic)
{
    const auto p = levels(pattern);
    const auto t = levels(topic);
    if (p.size() != t.size()) {
        return false;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != "+" && p[i] != t[i]) {
            return false;
        }
    }
    return true;
}

namespace topics {

namespace {

std::string join3(std::string_view a, std::string_view b, std::string_view c)
{
    std::string out;
    out.reserve(a.size() + b.size() + c.size() + 2);
    out.append(a).append("/").append(b).append("/").append(c);
    return out;
}

} // namespace

std::string uav_telemetry(std::string_view uav) { return join3("uav", uav, "telemetry"); }
std::string uav_state(std::string_view uav) { return join3("uav", uav, "state"); }
std::string uav_adaptation(std::string_view uav) { return join3("uav", uav, "adaptation"); }
std::string uav_detection(std::string_view uav) { return join3("uav", uav, "detection"); }
std::string uav_directive(std::string_view uav) { return join3("uav", uav, "directive"); }
std::string uav_ack(std::string_view uav) { return join3("uav", uav, "ack"); }
std::string gcs_alerts(std::string_view view) { return join3("gcs", "alerts", view); }
std::string gcs_coord(std::string_view session) { return join3("gcs", "coord", session); }
std::string gcs_autonomy(std::string_view uav) { return join3("gcs", "autonomy", uav); }

std::string_view uav_of(std::string_view topic)
{
    const auto l = levels(topic);
    if (l.size() == 3 && l[0] == "uav") {
        return l[1];
    }
    return {};
}

} // namespace topics

} // namespace hmt::bus
