// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/msg/messages.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hmt::coord {

struct ActionLogEntry
{
    msg::Actor actor = msg::Actor::machine;
    std::string uav;
    std::string dimension;
    msg::Direction direction;
    SimTime at = 0;
    bool failsafe = false;

    friend bool operator==(const ActionLogEntry&, const ActionLogEntry&) = default;
};

struct Conflict
{
    std::string uav;
    std::string dimension;
    std::size_t alternations = 0;
    SimTime first_at = 0;
    SimTime last_at = 0;
};

/// Longest subsequence in which consecutive entries switch actor and push
/// opposite ways, measured in alternations (length - 1). Entries must share
/// one dimension and be in time order.
std::size_t max_alternations(std::span<const ActionLogEntry> entries);

/// Flags interleaved opposing human and machine actions on one control
/// dimension within a trailing window.
class TugOfWarDetector
{
public:
    struct Config
    {
        std::size_t k = 3;
        SimTime window_ms = 30000;
    };

    explicit TugOfWarDetector(Config config) : config_(config) {}

    void record(ActionLogEntry e);

    /// Checks each dimension of `uav` over [now - window, now]. Reports the
    /// first dimension (by name) with at least k alternations.
    [[nodiscard]] std::optional<Conflict> detect(const std::string& uav, SimTime now) const;

    /// Forget a dimension's history (after curtailment or restore).
    void clear(const std::string& uav, const std::string& dimension);
    void clear(const std::string& uav);

    [[nodiscard]] const Config& config() const { return config_; }
    [[nodiscard]] std::vector<ActionLogEntry> entries(const std::string& uav, const std::string& dimension) const;

private:
    Config config_;
    std::map<std::pair<std::string, std::string>, std::vector<ActionLogEntry>> log_;
};

} // namespace hmt::coord
