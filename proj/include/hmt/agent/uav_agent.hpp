// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/agent/policy.hpp"
#include "hmt/agent/scene.hpp"
#include "hmt/agent/state_machine.hpp"
#include "hmt/agent/trust.hpp"
#include "hmt/bus/bus.hpp"
#include "hmt/coord/affordances.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hmt::agent {

struct Kinematics
{
    double cruise_altitude_m = 30.0;
    double speed_mps = 10.0;
    double climb_mps = 3.0;
    double min_altitude_m = 5.0;
    double max_altitude_m = 120.0;
    /// Camera footprint radius per meter of altitude.
    double footprint_ratio = 0.8;
};

struct BatteryModel
{
    double start_pct = 100.0;
    double drain_pct_per_s = 0.1;
    double degraded_pct = 30.0;
    double failsafe_pct = 20.0;
};

struct TaskTimers
{
    SimTime tracking_ms = 20000;
    SimTime delivery_ms = 10000;
    std::optional<SimTime> surveillance_ms;
};

/// One UAV's section of the mission, in mission-local meters.
struct UavConfig
{
    std::string id;
    std::string color;
    MachineSpec machine;
    Vec2 home;
    std::vector<Vec2> route;
    std::optional<SimTime> launch_at;
    Kinematics kinematics;
    BatteryModel battery;
    TaskTimers timers;
    ThresholdPolicy thresholds;
    double trust_initial = 0.5;
    double trust_alpha = 0.2;
    SimTime step_period_ms = 100;
    double mist_altitude_drop_m = 8.0;
};

/// Analysed situation that calls for a self-adaptation.
struct Condition
{
    enum class Kind {
        mist_entered,
        mist_cleared,
        reflection_disturbance,
        battery_degraded,
        battery_failsafe,
        victim_sighted,
        help_needed,
        human_confirmed,
        human_refuted,
        responsibility_reverted,
        human_goal,
    };

    Kind kind = Kind::mist_entered;
    double amount = 0.0;                      // meters, percent or waypoint count
    bool acted = false;                       // responsibility_reverted: tracked or resumed
    std::optional<msg::DetectionEvent> detection;
};

struct Outbound
{
    std::string topic;
    std::string qos;
    msg::Payload payload;
};

struct DirectiveOutcome
{
    bool ack = false;
    std::string reason;
};

/// Simulated UAV running one monitor/analyze/plan/execute pass per step
/// over its task machine. All interaction goes through the bus.
class UavAgent
{
public:
    UavAgent(UavConfig config, std::shared_ptr<const Scene> scene, std::uint64_t seed);

    [[nodiscard]] const std::string& id() const { return config_.id; }
    [[nodiscard]] const std::string& color() const { return config_.color; }
    [[nodiscard]] const UavConfig& config() const { return config_; }

    /// Patterns this agent listens on.
    [[nodiscard]] std::vector<std::string> subscriptions() const;

    /// Queue an inbound envelope for the next step's monitor phase.
    void receive(const bus::Envelope& env);

    [[nodiscard]] bool due(SimTime now) const { return now % config_.step_period_ms == 0; }

    /// One loop iteration; returns envelopes to publish in order.
    std::vector<Outbound> step(SimTime now);

    /// Affordance-gated directive. RC manual overrides skip the gate except
    /// in hard-safety states.
    DirectiveOutcome apply_directive(const msg::HumanDirective& d, bool rc, SimTime now);

    /// Camera pass: nearest unhandled target inside the footprint, scored by
    /// the local noise profile.
    std::optional<msg::DetectionEvent> detect(SimTime now);

    /// Snippets and control action for a condition. Pure.
    [[nodiscard]] msg::AdaptationEvent self_adapt(const Condition& c, SimTime now) const;

    const CalibratedTrust& update_trust(Agreement outcome);

    [[nodiscard]] coord::AffordanceSet affordances() const;

    [[nodiscard]] const TaskStateMachine& machine() const { return machine_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }
    [[nodiscard]] Vec2 position() const { return position_; }
    [[nodiscard]] double altitude() const { return altitude_; }
    [[nodiscard]] double altitude_setpoint() const { return altitude_setpoint_; }
    [[nodiscard]] double battery() const { return battery_; }
    [[nodiscard]] msg::Health health() const;
    [[nodiscard]] const CalibratedTrust& trust() const { return trust_; }
    [[nodiscard]] bool awaiting_help() const { return pending_help_.has_value(); }
    [[nodiscard]] const std::set<std::string>& curtailed_dimensions() const { return curtailed_; }
    [[nodiscard]] bool manual_hold() const { return manual_hold_; }
    /// On the ground with nothing left to do.
    [[nodiscard]] bool finished() const;
    [[nodiscard]] msg::Telemetry telemetry(SimTime now) const;

private:
    struct PendingHelp
    {
        msg::DetectionEvent detection;
        std::string session;
    };

    void monitor_inbox(SimTime now);
    void handle_coord(const msg::CoordMessage& m, SimTime now);
    void handle_autonomy(const msg::AutonomyMessage& m);
    void move(double dt_s);
    void analyze(SimTime now, double prev_battery);
    void adapt(const Condition& c, SimTime now);
    void fire(std::string_view event, SimTime now);
    void on_enter(const std::string& state, SimTime now);
    void resolve_help(const msg::CoordMessage& m, SimTime now);
    void handle_detection(SimTime now);

    [[nodiscard]] bool airborne() const;
    [[nodiscard]] bool scanning() const;
    [[nodiscard]] bool curtailed(std::string_view dimension) const;
    [[nodiscard]] bool can_adjust_altitude() const;
    void set_altitude_setpoint(double meters);
    void emit(std::string topic, std::string_view qos, msg::Payload payload);

    UavConfig config_;
    std::shared_ptr<const Scene> scene_;
    Rng rng_;
    // Filled while machine_ is built, so it must be constructed first.
    std::vector<std::string> warnings_;
    TaskStateMachine machine_;
    CalibratedTrust trust_;

    Vec2 position_;
    double altitude_ = 0.0;
    double altitude_setpoint_ = 0.0;
    double battery_ = 100.0;
    SimTime powered_ms_ = 0;
    std::size_t waypoint_ = 0;
    std::vector<Vec2> route_;
    std::optional<Vec2> track_point_;
    std::uint64_t frame_ = 0;
    std::optional<SimTime> last_step_;
    SimTime state_since_ = 0;
    bool launched_ = false;
    bool in_mist_ = false;
    std::optional<SimTime> last_disturbance_;
    bool manual_hold_ = false;
    std::set<std::string> curtailed_;
    std::set<std::string> handled_targets_;
    std::optional<PendingHelp> pending_help_;

    std::vector<bus::Envelope> inbox_;
    std::vector<Outbound> out_;
};

} // namespace hmt::agent
