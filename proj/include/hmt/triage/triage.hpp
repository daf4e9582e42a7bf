// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/error.hpp"
#include "hmt/msg/messages.hpp"

#include <nlohmann/json_fwd.hpp>

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace hmt::triage {

inline constexpr int kDefaultPriority = 3;
inline constexpr int kLowestPriority = 5;

struct RuleSpec
{
    std::string alert_type;
    std::string view;
    msg::RuleEntry entry;
};

struct RuleState
{
    msg::RuleEntry entry;
    msg::RuleOrigin origin = msg::RuleOrigin::config;
    /// Level frequency adaptation restores toward: config or last human edit.
    msg::RuleEntry baseline;
};

struct ViewState
{
    std::string view;
    std::size_t max_threshold = 0;
    /// Essentials first (raised_at, id), then the ranked non-essentials.
    std::vector<msg::DisplayedAlert> displayed;
    /// Ranked best first.
    std::vector<msg::AlertId> suppressed;

    friend bool operator==(const ViewState&, const ViewState&) = default;
};

/// Per-view alert triage under display thresholds. Non-essential alerts
/// are ranked by (priority, raised_at, id); the first `max_threshold` are
/// displayed. Essential alerts are always displayed and do not count
/// against the threshold.
class TriageEngine
{
public:
    explicit TriageEngine(std::vector<RuleSpec> rules = {});

    /// A new view starts empty; only alerts submitted afterwards reach it.
    void register_view(const std::string& view, std::size_t max_threshold);
    void deregister_view(const std::string& view);
    [[nodiscard]] bool has_view(const std::string& view) const { return views_.count(view) != 0; }
    [[nodiscard]] std::vector<std::string> views() const;

    /// Returns, per view, whether the alert is displayed.
    std::map<std::string, bool> submit_alert(const msg::Alert& a);

    /// Removes a live alert (resolved condition). False if not live.
    bool retract(msg::AlertId id);

    /// Removes alerts with expires_at <= now. Returns their ids ascending.
    std::vector<msg::AlertId> expire(SimTime now);

    /// Sets one rule entry. Human edits also move the baseline. Returns the
    /// change, or nothing if the entry was already in place.
    std::optional<msg::RuleChange> update_rule(const std::string& alert_type, const std::string& view,
                                               msg::RuleEntry entry, msg::RuleOrigin origin, SimTime at);

    [[nodiscard]] RuleState rule(const std::string& alert_type, const std::string& view) const;
    [[nodiscard]] const std::map<std::pair<std::string, std::string>, RuleState>& rules() const { return rules_; }

    [[nodiscard]] ViewState state(const std::string& view) const;
    [[nodiscard]] const std::map<msg::AlertId, msg::Alert>& live() const { return live_; }
    [[nodiscard]] bool displayed(const std::string& view, msg::AlertId id) const;

    /// Every non-essential rule one priority step in `direction` (+1 demote,
    /// -1 restore toward baseline), tagged machine. Returns the changes.
    std::vector<msg::RuleChange> shift_rules(int direction, SimTime at);

private:
    using Key = std::tuple<int, SimTime, msg::AlertId>;  // priority, raised_at, id

    struct View
    {
        std::size_t max_threshold = 0;
        std::set<Key> ranked;
        std::set<std::pair<SimTime, msg::AlertId>> essential;
        std::set<msg::AlertId> members;
    };

    [[nodiscard]] msg::RuleEntry entry_for(const msg::Alert& a, const std::string& view) const;
    void place(View& v, const std::string& view, const msg::Alert& a);
    void unplace(View& v, const std::string& view, const msg::Alert& a);
    void ensure_rule(const std::string& alert_type, const std::string& view);

    std::map<std::pair<std::string, std::string>, RuleState> rules_;
    std::map<std::string, View> views_;
    std::map<msg::AlertId, msg::Alert> live_;
    std::set<msg::AlertId> ever_seen_;
    std::multimap<SimTime, msg::AlertId> expiries_;
};

void to_json(nlohmann::json& j, const ViewState& v);

struct ResponsivenessMetric
{
    /// Mean latency over answered prompts; empty if none were answered.
    std::optional<double> mean_response_ms;
    double availability = 1.0;
    std::size_t samples = 0;
};

/// Rolling window of (prompt, response) latencies.
class ResponsivenessTracker
{
public:
    struct Config
    {
        std::size_t window = 10;
        SimTime lag_ms = 5000;
        SimTime recovery_ms = 2000;
    };

    explicit ResponsivenessTracker(Config config) : config_(config) {}

    void record_answered(SimTime latency_ms);
    void record_unanswered();

    [[nodiscard]] ResponsivenessMetric metric() const;
    [[nodiscard]] const Config& config() const { return config_; }

    /// Starts a fresh window, so one window never drives two adjustments.
    void reset() { samples_.clear(); }

private:
    Config config_;
    std::deque<std::optional<SimTime>> samples_;
};

/// +1 when the human lags (or answers nothing), -1 when responses are fast,
/// 0 otherwise or on an empty window.
int frequency_step(const ResponsivenessMetric& m, const ResponsivenessTracker::Config& c);

/// Applies frequency_step to the engine's rules.
std::vector<msg::RuleChange> adapt_frequency(TriageEngine& engine, const ResponsivenessMetric& m,
                                             const ResponsivenessTracker::Config& c, SimTime at);

} // namespace hmt::triage
