// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/msg/messages.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>

namespace hmt::coord {

using AffordanceSet = std::set<msg::DirectiveKind>;

struct AffordanceQuery
{
    std::string state;
    bool open_session = false;
    bool curtailed = false;
};

struct AffordanceResult
{
    AffordanceSet allowed;
    /// False when the state is not in the table (model drift).
    bool known_state = true;
};

/// State -> directive kinds a human may issue, plus overlays for open help
/// sessions and curtailed autonomy.
class AffordanceTable
{
public:
    /// Table for the reference mission states.
    static AffordanceTable standard();

    explicit AffordanceTable(std::map<std::string, AffordanceSet, std::less<>> base) : base_(std::move(base)) {}

    [[nodiscard]] AffordanceResult compute(const AffordanceQuery& q) const;
    [[nodiscard]] bool knows(std::string_view state) const;

    /// States whose camera is powered; video requests need one.
    static bool camera_on(std::string_view state);

private:
    std::map<std::string, AffordanceSet, std::less<>> base_;
};

} // namespace hmt::coord
