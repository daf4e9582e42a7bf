// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/state_machine.hpp"

#include "hmt/common/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace hmt::agent {

Instantiation TaskStateMachine::instantiate(const MachineSpec& spec)
{
    std::vector<std::string> issues;
    std::set<std::string> known;
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
        const auto& s = spec.states[i];
        const auto path = "states[" + std::to_string(i) + "]";
        if (s.empty()) {
            issues.push_back(path + ": empty state name");
        } else if (!known.insert(s).second) {
            issues.push_back(path + ": duplicate state '" + s + "'");
        }
    }
    if (spec.initial.empty()) {
        issues.emplace_back("initial: missing");
    } else if (known.count(spec.initial) == 0) {
        issues.push_back("initial: unknown state '" + spec.initial + "'");
    }

    if (spec.transitions.empty()) {
        issues.emplace_back("transitions: empty");
    }
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
        const auto& t = spec.transitions[i];
        const auto path = "transitions[" + std::to_string(i) + "]";
        if (known.count(t.from) == 0) {
            issues.push_back(path + ".from: unknown state '" + t.from + "'");
        }
        if (known.count(t.to) == 0) {
            issues.push_back(path + ".to: unknown state '" + t.to + "'");
        }
        if (t.event.empty()) {
            issues.push_back(path + ".event: empty");
            continue;
        }
        auto [it, fresh] = seen.emplace(std::pair{t.from, t.event}, i);
        if (!fresh) {
            issues.push_back(path + ": event '" + t.event + "' from '" + t.from +
                             "' already defined at transitions[" + std::to_string(it->second) + "]");
        }
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }

    TaskStateMachine m;
    m.initial_ = spec.initial;
    m.current_ = spec.initial;
    m.states_ = spec.states;
    m.transitions_ = spec.transitions;

    Instantiation out{std::move(m), {}};
    const auto reach = out.machine.reachable();
    for (const auto& s : spec.states) {
        if (!std::binary_search(reach.begin(), reach.end(), s)) {
            out.warnings.push_back("state '" + s + "' is unreachable from '" + spec.initial + "'");
        }
    }
    return out;
}

bool TaskStateMachine::has_state(std::string_view s) const
{
    return std::find(states_.begin(), states_.end(), s) != states_.end();
}

bool TaskStateMachine::accepts(std::string_view event) const
{
    return std::any_of(transitions_.begin(), transitions_.end(),
                       [&](const Transition& t) { return t.from == current_ && t.event == event; });
}

std::optional<Transition> TaskStateMachine::fire(std::string_view event)
{
    for (const auto& t : transitions_) {
        if (t.from == current_ && t.event == event) {
            current_ = t.to;
            return t;
        }
    }
    return std::nullopt;
}

std::vector<std::string> TaskStateMachine::reachable() const
{
    std::set<std::string> seen{initial_};
    std::deque<std::string> frontier{initial_};
    while (!frontier.empty()) {
        const auto s = frontier.front();
        frontier.pop_front();
        for (const auto& t : transitions_) {
            if (t.from == s && seen.insert(t.to).second) {
                frontier.push_back(t.to);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace hmt::agent
