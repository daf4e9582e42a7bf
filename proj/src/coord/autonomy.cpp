// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/autonomy.hpp"

namespace hmt::coord {

std::optional<msg::AutonomyMessage> AutonomyRegistry::curtail(const std::string& uav, const std::string& dimension,
                                                              const std::string& reason, msg::Actor actor,
                                                              SimTime at)
{
    auto& dims = status_[uav];
    if (!dims.emplace(dimension, Curtailment{reason, at}).second) {
        return std::nullopt;
    }
    return msg::AutonomyMessage{uav, dimension, true, reason, actor, at};
}

std::vector<msg::AutonomyMessage> AutonomyRegistry::restore(const std::string& uav, msg::Actor actor, SimTime at)
{
    if (actor != msg::Actor::human) {
        throw StateError("autonomy of " + uav + " can only be restored by the human");
    }
    std::vector<msg::AutonomyMessage> out;
    auto it = status_.find(uav);
    if (it == status_.end()) {
        return out;
    }
    for (const auto& [dim, c] : it->second) {
        out.push_back({uav, dim, false, "restored by operator", actor, at});
    }
    status_.erase(it);
    return out;
}

bool AutonomyRegistry::curtailed(const std::string& uav, const std::string& dimension) const
{
    auto it = status_.find(uav);
    return it != status_.end() && it->second.count(dimension) != 0;
}

bool AutonomyRegistry::curtailed(const std::string& uav) const
{
    auto it = status_.find(uav);
    return it != status_.end() && !it->second.empty();
}

std::map<std::string, Curtailment> AutonomyRegistry::status(const std::string& uav) const
{
    auto it = status_.find(uav);
    return it == status_.end() ? std::map<std::string, Curtailment>{} : it->second;
}

} // namespace hmt::coord
