// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmt::agent {

struct Transition
{
    std::string from;
    std::string event;
    std::string to;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Per-UAV machine section of a mission file.
struct MachineSpec
{
    std::string initial;
    std::vector<std::string> states;
    std::vector<Transition> transitions;
};

struct Instantiation;

/// Flat onboard task machine driven by named events.
class TaskStateMachine
{
public:
    /// Validates a machine description and returns a machine in its initial state.
    /// Unreachable states are accepted and reported as warnings.
    /// Throws ValidationError listing every offending entry.
    static Instantiation instantiate(const MachineSpec& spec);

    [[nodiscard]] const std::string& current() const { return current_; }
    [[nodiscard]] const std::string& initial() const { return initial_; }
    [[nodiscard]] const std::vector<std::string>& states() const { return states_; }
    [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }

    [[nodiscard]] bool has_state(std::string_view s) const;
    [[nodiscard]] bool accepts(std::string_view event) const;

    /// Takes the transition for `event` out of the current state, if any.
    std::optional<Transition> fire(std::string_view event);

    /// States reachable from the initial state (including it), sorted.
    [[nodiscard]] std::vector<std::string> reachable() const;

    void reset() { current_ = initial_; }

private:
    TaskStateMachine() = default;

    std::string initial_;
    std::string current_;
    std::vector<std::string> states_;
    std::vector<Transition> transitions_;
};

struct Instantiation
{
    TaskStateMachine machine;
    std::vector<std::string> warnings;
};

} // namespace hmt::agent
