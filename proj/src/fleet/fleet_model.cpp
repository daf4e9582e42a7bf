// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/fleet/fleet_model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace hmt::fleet {

GlobalStateGraph merge(const std::vector<MemberMachine>& machines)
{
    if (machines.empty()) {
        throw StateError("merge: no machines");
    }
    GlobalStateGraph g;
    std::set<std::string> seen;
    for (const auto& m : machines) {
        if (!seen.insert(m.uav).second) {
            throw StateError("merge: duplicate uav '" + m.uav + "'");
        }
        g.nodes.insert(m.states.begin(), m.states.end());
        for (const auto& t : m.transitions) {
            g.edges[t].uavs.insert(m.uav);
        }
    }
    return g;
}

void to_json(nlohmann::json& j, const Snapshot& s)
{
    auto edges = nlohmann::json::array();
    for (const auto& [t, tags] : s.graph.edges) {
        edges.push_back({{"from", t.from},
                         {"event", t.event},
                         {"to", t.to},
                         {"uavs", tags.uavs},
                         {"inactive", tags.inactive}});
    }
    auto tokens = nlohmann::json::object();
    for (const auto& [uav, tok] : s.placement.tokens) {
        tokens[uav] = {{"node", tok.node}, {"color", tok.color}};
    }
    j = {{"version", s.version},
         {"as_of", s.placement.as_of},
         {"nodes", s.graph.nodes},
         {"node_order", s.graph.nodes},
         {"edges", std::move(edges)},
         {"tokens", std::move(tokens)}};
}

void FleetModel::register_uav(const std::string& uav, const std::string& color,
                              const agent::MachineSpec& machine, SimTime at)
{
    if (placement_.tokens.count(uav) != 0) {
        throw StateError("fleet: uav '" + uav + "' already registered");
    }
    if (std::find(machine.states.begin(), machine.states.end(), machine.initial) == machine.states.end()) {
        throw ModelDriftError("fleet: initial state '" + machine.initial + "' not among states of " + uav);
    }
    graph_.nodes.insert(machine.states.begin(), machine.states.end());
    for (const auto& t : machine.transitions) {
        auto& tags = graph_.edges[t];
        tags.uavs.insert(uav);
        tags.inactive.erase(uav);
    }
    member_edges_[uav] = machine.transitions;
    placement_.tokens[uav] = Token{machine.initial, color};
    auto& h = history_[uav];
    if (!h.empty() && !h.back().exited_at) {
        h.back().exited_at = at;
    }
    h.push_back({machine.initial, at, std::nullopt});
    publish(at);
}

void FleetModel::deregister(const std::string& uav, SimTime at)
{
    if (placement_.tokens.erase(uav) == 0) {
        throw ModelDriftError("fleet: unknown uav '" + uav + "'");
    }
    auto& h = history_[uav];
    if (!h.empty() && !h.back().exited_at) {
        h.back().exited_at = at;
    }
    for (const auto& t : member_edges_[uav]) {
        auto& tags = graph_.edges[t];
        tags.uavs.erase(uav);
        tags.inactive.insert(uav);
    }
    member_edges_.erase(uav);
    publish(at);
}

void FleetModel::update_token(const std::string& uav, const std::string& state, SimTime at)
{
    auto it = placement_.tokens.find(uav);
    if (it == placement_.tokens.end()) {
        throw ModelDriftError("fleet: unknown uav '" + uav + "'");
    }
    if (graph_.nodes.count(state) == 0) {
        throw ModelDriftError("fleet: uav '" + uav + "' reported unknown state '" + state + "'");
    }
    if (it->second.node == state) {
        return;
    }
    it->second.node = state;
    auto& h = history_[uav];
    h.back().exited_at = at;
    h.push_back({state, at, std::nullopt});
    publish(at);
}

void FleetModel::publish(SimTime at)
{
    placement_.as_of = at;
    auto snap = std::make_shared<const Snapshot>(Snapshot{graph_, placement_, ++version_});
    const std::lock_guard lock(mutex_);
    current_ = std::move(snap);
}

std::shared_ptr<const Snapshot> FleetModel::snapshot() const
{
    const std::lock_guard lock(mutex_);
    return current_;
}

std::vector<Visit> FleetModel::history(const std::string& uav) const
{
    auto it = history_.find(uav);
    if (it == history_.end()) {
        throw ModelDriftError("fleet: unknown uav '" + uav + "'");
    }
    return it->second;
}

std::vector<Visit> FleetModel::history(const std::string& uav, SimTime from, SimTime to) const
{
    std::vector<Visit> out;
    for (const auto& v : history(uav)) {
        const bool before = v.exited_at && *v.exited_at <= from;
        if (before || v.entered_at >= to) {
            continue;
        }
        Visit c = v;
        c.entered_at = std::max(c.entered_at, from);
        if (!c.exited_at || *c.exited_at > to) {
            c.exited_at = to;
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool FleetModel::has_uav(const std::string& uav) const { return placement_.tokens.count(uav) != 0; }

std::optional<std::string> FleetModel::current(const std::string& uav) const
{
    auto it = placement_.tokens.find(uav);
    if (it == placement_.tokens.end()) {
        return std::nullopt;
    }
    return it->second.node;
}

} // namespace hmt::fleet
