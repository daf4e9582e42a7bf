// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Brute-force reference implementations. Each one recomputes its answer
// from scratch with the most direct method available, sharing no code
// with the implementation it checks.

#include "hmt/agent/state_machine.hpp"
#include "hmt/agent/trust.hpp"
#include "hmt/coord/tug_of_war.hpp"
#include "hmt/msg/messages.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace hmt::oracle {

/// Alert triage by full sort on every query.
class TriageOracle
{
public:
    struct Expected
    {
        std::vector<msg::AlertId> essential;
        std::vector<msg::AlertId> displayed;  // non-essential shown
        std::vector<msg::AlertId> suppressed;
    };

    void set_rule(const std::string& type, const std::string& view, msg::RuleEntry e) { rules_[{type, view}] = e; }
    void add_view(const std::string& view, std::size_t k) { views_[view] = {k, {}}; }
    void submit(const msg::Alert& a);
    void remove(msg::AlertId id);
    void expire(SimTime now);

    [[nodiscard]] Expected expected(const std::string& view) const;
    [[nodiscard]] bool is_essential(const msg::Alert& a, const std::string& view) const;
    [[nodiscard]] const std::map<msg::AlertId, msg::Alert>& live() const { return live_; }

private:
    struct View
    {
        std::size_t k = 0;
        std::set<msg::AlertId> members;
    };
    [[nodiscard]] msg::RuleEntry entry(const std::string& type, const std::string& view) const;

    std::map<std::pair<std::string, std::string>, msg::RuleEntry> rules_;
    std::map<std::string, View> views_;
    std::map<msg::AlertId, msg::Alert> live_;
};

/// Longest chain of strictly alternating, pairwise-opposing actions, by
/// O(n^2) dynamic programming over all predecessor pairs. Returns the
/// number of alternations (chain length - 1), 0 for an empty log.
std::size_t alternations(std::span<const coord::ActionLogEntry> log);

/// Trust after `history` by the closed form of the EMA recurrence:
/// (1-a)^n * s0 + sum_i a * (1-a)^(n-1-i) * x_i.
double trust_closed_form(double initial, double alpha, std::span<const agent::Agreement> history);

/// Union of machines as plain sets.
struct UnionGraph
{
    std::set<std::string> nodes;
    std::map<std::tuple<std::string, std::string, std::string>, std::set<std::string>> edges;
};

UnionGraph union_of(const std::vector<std::pair<std::string, agent::MachineSpec>>& machines);

} // namespace hmt::oracle
