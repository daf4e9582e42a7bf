// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/error.hpp"
#include "hmt/msg/messages.hpp"

#include <map>
#include <string>
#include <vector>

namespace hmt::coord {

struct Curtailment
{
    std::string reason;
    SimTime since = 0;

    friend bool operator==(const Curtailment&, const Curtailment&) = default;
};

/// Per-UAV, per-dimension autonomy status. Anything not listed is full.
class AutonomyRegistry
{
public:
    /// Returns the message to publish, or nothing if already curtailed.
    std::optional<msg::AutonomyMessage> curtail(const std::string& uav, const std::string& dimension,
                                                const std::string& reason, msg::Actor actor, SimTime at);

    /// Restores every curtailed dimension of `uav`. Only a human may do
    /// this; a machine attempt throws StateError.
    std::vector<msg::AutonomyMessage> restore(const std::string& uav, msg::Actor actor, SimTime at);

    [[nodiscard]] bool curtailed(const std::string& uav, const std::string& dimension) const;
    [[nodiscard]] bool curtailed(const std::string& uav) const;
    [[nodiscard]] std::map<std::string, Curtailment> status(const std::string& uav) const;
    [[nodiscard]] const std::map<std::string, std::map<std::string, Curtailment>>& all() const { return status_; }

private:
    std::map<std::string, std::map<std::string, Curtailment>> status_;
};

} // namespace hmt::coord
