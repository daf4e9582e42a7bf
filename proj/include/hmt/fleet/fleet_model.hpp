// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/agent/state_machine.hpp"
#include "hmt/common/error.hpp"
#include "hmt/common/time.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hmt::fleet {

/// A report named a state or UAV the merged model does not know.
class ModelDriftError : public Error
{
public:
    using Error::Error;
};

struct EdgeTags
{
    std::set<std::string> uavs;
    /// UAVs that carried the edge but have since left the mission.
    std::set<std::string> inactive;

    friend bool operator==(const EdgeTags&, const EdgeTags&) = default;
};

/// Union of the member machines. Nodes are identified by state name.
struct GlobalStateGraph
{
    std::set<std::string> nodes;
    std::map<agent::Transition, EdgeTags> edges;

    friend bool operator==(const GlobalStateGraph&, const GlobalStateGraph&) = default;
};

struct MemberMachine
{
    std::string uav;
    std::vector<std::string> states;
    std::vector<agent::Transition> transitions;
};

/// Throws StateError on an empty list or a repeated UAV id.
GlobalStateGraph merge(const std::vector<MemberMachine>& machines);

struct Token
{
    std::string node;
    std::string color;

    friend bool operator==(const Token&, const Token&) = default;
};

struct TokenPlacement
{
    std::map<std::string, Token> tokens;
    SimTime as_of = 0;

    friend bool operator==(const TokenPlacement&, const TokenPlacement&) = default;
};

struct Visit
{
    std::string state;
    SimTime entered_at = 0;
    std::optional<SimTime> exited_at;

    friend bool operator==(const Visit&, const Visit&) = default;
};

struct Snapshot
{
    GlobalStateGraph graph;
    TokenPlacement placement;
    std::uint64_t version = 0;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

void to_json(nlohmann::json& j, const Snapshot& s);

/// Merged task-progress model. One writer; snapshot() may be called from
/// any thread and returns an immutable value.
class FleetModel
{
public:
    /// Adds the machine to the graph and places the UAV's token on `initial`.
    void register_uav(const std::string& uav, const std::string& color, const agent::MachineSpec& machine,
                      SimTime at);

    /// Removes the token, closes the last visit and marks the UAV's edges inactive.
    void deregister(const std::string& uav, SimTime at);

    /// Throws ModelDriftError for an unknown UAV or state.
    void update_token(const std::string& uav, const std::string& state, SimTime at);

    [[nodiscard]] std::shared_ptr<const Snapshot> snapshot() const;

    /// Visits overlapping [from, to), clipped to it.
    [[nodiscard]] std::vector<Visit> history(const std::string& uav, SimTime from, SimTime to) const;
    [[nodiscard]] std::vector<Visit> history(const std::string& uav) const;

    [[nodiscard]] bool has_uav(const std::string& uav) const;
    [[nodiscard]] std::optional<std::string> current(const std::string& uav) const;

private:
    void publish(SimTime at);

    GlobalStateGraph graph_;
    TokenPlacement placement_;
    std::map<std::string, std::vector<Visit>> history_;
    std::map<std::string, std::vector<agent::Transition>> member_edges_;
    std::uint64_t version_ = 0;

    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> current_ = std::make_shared<const Snapshot>();
};

} // namespace hmt::fleet
