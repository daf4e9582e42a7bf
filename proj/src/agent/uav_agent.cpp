// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/uav_agent.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hmt::agent {

namespace {

using msg::DirectiveKind;

std::string meters(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

bool is_flight_state(std::string_view s)
{
    return s != "standby" && s != "takeoff" && s != "land";
}

} // namespace

UavAgent::UavAgent(UavConfig config, std::shared_ptr<const Scene> scene, std::uint64_t seed)
    : config_(std::move(config)),
      scene_(std::move(scene)),
      rng_(seed),
      machine_([this] {
          auto inst = TaskStateMachine::instantiate(config_.machine);
          warnings_ = std::move(inst.warnings);
          return std::move(inst.machine);
      }()),
      trust_(CalibratedTrust::make("person-detection", config_.trust_initial, config_.trust_alpha)),
      position_(config_.home),
      battery_(config_.battery.start_pct),
      route_(config_.route)
{
    if (!scene_) {
        throw StateError("agent " + config_.id + ": no scene");
    }
    if (config_.step_period_ms <= 0) {
        throw ValidationError({"uavs." + config_.id + ".step_period_ms: must be positive"});
    }
}

std::vector<std::string> UavAgent::subscriptions() const
{
    return {bus::topics::uav_directive(config_.id), bus::topics::gcs_coord("+"),
            bus::topics::gcs_autonomy(config_.id)};
}

void UavAgent::receive(const bus::Envelope& env) { inbox_.push_back(env); }

msg::Health UavAgent::health() const
{
    if (battery_ <= config_.battery.failsafe_pct) {
        return msg::Health::failsafe;
    }
    if (battery_ <= config_.battery.degraded_pct) {
        return msg::Health::degraded;
    }
    return msg::Health::nominal;
}

bool UavAgent::finished() const
{
    if (machine_.current() == "land" && altitude_ <= 0.0) {
        return true;
    }
    return !launched_ && !config_.launch_at && machine_.current() == machine_.initial();
}

msg::Telemetry UavAgent::telemetry(SimTime now) const
{
    msg::Telemetry t;
    t.uav = config_.id;
    t.state = machine_.current();
    t.position = scene_->frame.to_geo(position_);
    t.altitude_m = altitude_;
    t.battery_pct = battery_;
    t.health = health();
    t.trust_score = trust_.score;
    t.at = now;
    return t;
}

bool UavAgent::airborne() const
{
    const auto& s = machine_.current();
    return s != "standby" && !(s == "land" && altitude_ <= 0.0);
}

bool UavAgent::scanning() const
{
    const auto& s = machine_.current();
    return s == "searching" || s == "surveillance";
}

bool UavAgent::curtailed(std::string_view dimension) const
{
    return curtailed_.find(std::string(dimension)) != curtailed_.end();
}

bool UavAgent::can_adjust_altitude() const { return !manual_hold_ && !curtailed("altitude"); }

void UavAgent::set_altitude_setpoint(double m)
{
    altitude_setpoint_ = std::clamp(m, config_.kinematics.min_altitude_m, config_.kinematics.max_altitude_m);
}

coord::AffordanceSet UavAgent::affordances() const
{
    static const auto table = coord::AffordanceTable::standard();
    const bool session = pending_help_ && !pending_help_->session.empty();
    return table.compute({machine_.current(), session, !curtailed_.empty() || manual_hold_}).allowed;
}

const CalibratedTrust& UavAgent::update_trust(Agreement outcome)
{
    trust_ = trust_.updated(outcome);
    return trust_;
}

void UavAgent::emit(std::string topic, std::string_view qos, msg::Payload payload)
{
    out_.push_back({std::move(topic), std::string(qos), std::move(payload)});
}

void UavAgent::fire(std::string_view event, SimTime now)
{
    auto t = machine_.fire(event);
    if (!t) {
        return;
    }
    emit(bus::topics::uav_state(config_.id), bus::kCritical,
         msg::StateChange{config_.id, t->from, t->event, t->to, now});
    on_enter(t->to, now);
}

void UavAgent::on_enter(const std::string& state, SimTime now)
{
    state_since_ = now;
    if (state == "takeoff") {
        set_altitude_setpoint(config_.kinematics.cruise_altitude_m);
    } else if (state == "land") {
        altitude_setpoint_ = 0.0;
    }
    if (state == "searching" || state == "surveillance" || state == "rtl") {
        track_point_.reset();
    }
}

std::vector<Outbound> UavAgent::step(SimTime now)
{
    out_.clear();
    const SimTime dt_ms = last_step_ ? now - *last_step_ : 0;
    last_step_ = now;

    // Monitor
    if (airborne()) {
        powered_ms_ += dt_ms;
    }
    const double prev_battery = battery_;
    battery_ = std::max(0.0, config_.battery.start_pct -
                                 config_.battery.drain_pct_per_s * static_cast<double>(powered_ms_) / 1000.0);
    monitor_inbox(now);

    if (!launched_ && config_.launch_at && now >= *config_.launch_at &&
        machine_.current() == machine_.initial()) {
        launched_ = true;
        fire("launch", now);
    }

    move(static_cast<double>(dt_ms) / 1000.0);

    // Analyze, plan and execute
    analyze(now, prev_battery);

    emit(bus::topics::uav_telemetry(config_.id), bus::kStandard, telemetry(now));
    return std::move(out_);
}

void UavAgent::monitor_inbox(SimTime now)
{
    auto inbox = std::move(inbox_);
    inbox_.clear();
    for (const auto& env : inbox) {
        if (const auto* coord = std::get_if<msg::CoordMessage>(&env.payload)) {
            handle_coord(*coord, now);
        } else if (const auto* autonomy = std::get_if<msg::AutonomyMessage>(&env.payload)) {
            handle_autonomy(*autonomy);
        } else if (const auto* routed = std::get_if<msg::RoutedDirective>(&env.payload)) {
            const auto outcome = apply_directive(routed->directive, routed->rc, now);
            emit(bus::topics::uav_ack(config_.id), bus::kCritical,
                 msg::DirectiveAck{config_.id, routed->command_id, routed->directive.kind, outcome.ack,
                                   outcome.reason, now});
        }
    }
}

void UavAgent::handle_coord(const msg::CoordMessage& m, SimTime now)
{
    if (m.uav != config_.id || !pending_help_) {
        return;
    }
    if (m.kind == msg::CoordKind::help_requested) {
        if (m.detection.frame == pending_help_->detection.frame) {
            pending_help_->session = m.session;
        }
        return;
    }
    if (m.session != pending_help_->session && m.detection.frame != pending_help_->detection.frame) {
        return;
    }
    resolve_help(m, now);
}

void UavAgent::resolve_help(const msg::CoordMessage& m, SimTime now)
{
    const auto pending = *pending_help_;
    pending_help_.reset();
    const auto* target = scene_->find_target(pending.detection.target_id);
    const auto target_point = target != nullptr ? target->position : position_;

    switch (m.kind) {
    case msg::CoordKind::confirmation:
        update_trust(Agreement::confirmed);
        track_point_ = target_point;
        fire("track", now);
        adapt({Condition::Kind::human_confirmed, 0.0, true, pending.detection}, now);
        break;
    case msg::CoordKind::refutation:
        update_trust(Agreement::refuted);
        fire("resume_search", now);
        adapt({Condition::Kind::human_refuted, 0.0, false, pending.detection}, now);
        break;
    case msg::CoordKind::no_response: {
        const auto decision = decide_detection(pending.detection, config_.thresholds, trust_.score, true);
        const bool act = decision == msg::DetectionDecision::act_autonomously;
        emit(bus::topics::uav_detection(config_.id), bus::kCritical,
             msg::DetectionReport{pending.detection,
                                  act ? decision : msg::DetectionDecision::continue_search, true});
        if (act) {
            track_point_ = target_point;
            fire("track", now);
        } else {
            fire("resume_search", now);
        }
        adapt({Condition::Kind::responsibility_reverted, 0.0, act, pending.detection}, now);
        break;
    }
    case msg::CoordKind::help_requested:
        break;
    }
}

void UavAgent::handle_autonomy(const msg::AutonomyMessage& m)
{
    if (m.uav != config_.id) {
        return;
    }
    if (m.curtailed) {
        curtailed_.insert(m.dimension);
    } else {
        curtailed_.erase(m.dimension);
        if (m.dimension == "mode") {
            manual_hold_ = false;
        }
    }
}

DirectiveOutcome UavAgent::apply_directive(const msg::HumanDirective& d, bool rc, SimTime now)
{
    const auto& state = machine_.current();
    const auto kind_name = std::string(to_string(d.kind));
    try {
        msg::validate_params(d);
    } catch (const ProtocolError& e) {
        return {false, e.what()};
    }

    const bool rc_override = rc && d.kind == DirectiveKind::manual_override;
    if (rc_override) {
        if (state == "land" || health() == msg::Health::failsafe) {
            return {false, "hard-safety state '" + state + "' locks out manual override"};
        }
    } else if (affordances().count(d.kind) == 0) {
        if ((d.kind == DirectiveKind::confirm_detection || d.kind == DirectiveKind::reject_detection) &&
            !(pending_help_ && !pending_help_->session.empty())) {
            return {false, kind_name + " needs an open help session"};
        }
        if (d.kind == DirectiveKind::video_request && !coord::AffordanceTable::camera_on(state)) {
            return {false, "camera is off in state '" + state + "'"};
        }
        if (d.kind == DirectiveKind::restore_autonomy) {
            return {false, "autonomy is not curtailed"};
        }
        return {false, kind_name + " is not available in state '" + state + "'"};
    }

    Condition human{Condition::Kind::human_goal, 0.0, false, std::nullopt};
    switch (d.kind) {
    case DirectiveKind::confirm_detection:
    case DirectiveKind::reject_detection:
    case DirectiveKind::video_request:
        return {true, {}};
    case DirectiveKind::return_to_launch:
        fire("return", now);
        break;
    case DirectiveKind::altitude_change:
        set_altitude_setpoint(altitude_setpoint_ + *d.params.delta_m);
        break;
    case DirectiveKind::goal_update:
        route_.clear();
        for (const auto& p : d.params.route) {
            route_.push_back(scene_->frame.to_local(p));
        }
        waypoint_ = 0;
        human.amount = static_cast<double>(route_.size());
        adapt(human, now);
        break;
    case DirectiveKind::manual_override:
        manual_hold_ = true;
        if (d.params.altitude_m) {
            set_altitude_setpoint(*d.params.altitude_m);
        }
        break;
    case DirectiveKind::restore_autonomy:
        curtailed_.clear();
        manual_hold_ = false;
        break;
    }
    return {true, {}};
}

void UavAgent::move(double dt_s)
{
    if (dt_s <= 0.0) {
        return;
    }
    const auto& k = config_.kinematics;
    const double climb = k.climb_mps * dt_s;
    if (altitude_ < altitude_setpoint_) {
        altitude_ = std::min(altitude_setpoint_, altitude_ + climb);
    } else if (altitude_ > altitude_setpoint_) {
        altitude_ = std::max(altitude_setpoint_, altitude_ - climb);
    }

    const auto& s = machine_.current();
    if (manual_hold_ || !is_flight_state(s)) {
        return;
    }
    std::optional<Vec2> goal;
    if (s == "rtl") {
        goal = config_.home;
    } else if (track_point_) {
        goal = track_point_;
    } else if (scanning() && waypoint_ < route_.size()) {
        goal = route_[waypoint_];
    }
    if (!goal) {
        return;
    }
    const double reach = k.speed_mps * dt_s;
    const Vec2 delta = *goal - position_;
    const double dist = delta.norm();
    if (dist <= reach) {
        position_ = *goal;
        if (scanning() && !track_point_ && waypoint_ < route_.size()) {
            ++waypoint_;
        }
    } else {
        position_ = position_ + delta * (reach / dist);
    }
}

void UavAgent::analyze(SimTime now, double prev_battery)
{
    const auto& b = config_.battery;
    const bool flying = airborne() && is_flight_state(machine_.current());

    if (airborne() && prev_battery > b.failsafe_pct && battery_ <= b.failsafe_pct) {
        if (machine_.accepts("battery_low")) {
            fire("battery_low", now);
        }
        adapt({Condition::Kind::battery_failsafe, battery_, false, std::nullopt}, now);
    } else if (airborne() && prev_battery > b.degraded_pct && battery_ <= b.degraded_pct) {
        adapt({Condition::Kind::battery_degraded, battery_, false, std::nullopt}, now);
    }

    if (machine_.current() == "takeoff" && altitude_ >= altitude_setpoint_) {
        fire("altitude_reached", now);
    }

    if (flying) {
        const bool misty = scene_->zone_at(ZoneKind::mist, position_) != nullptr;
        if (misty != in_mist_) {
            in_mist_ = misty;
            const double drop = config_.mist_altitude_drop_m;
            if (can_adjust_altitude()) {
                set_altitude_setpoint(altitude_setpoint_ + (misty ? -drop : drop));
                adapt({misty ? Condition::Kind::mist_entered : Condition::Kind::mist_cleared, drop, true,
                       std::nullopt},
                      now);
            } else {
                adapt({misty ? Condition::Kind::mist_entered : Condition::Kind::mist_cleared, drop, false,
                       std::nullopt},
                      now);
            }
        }
        if (const auto* z = scene_->zone_at(ZoneKind::reflection, position_)) {
            if (!last_disturbance_ || now - *last_disturbance_ >= z->period_ms) {
                last_disturbance_ = now;
                if (can_adjust_altitude()) {
                    set_altitude_setpoint(altitude_setpoint_ - z->descend_m);
                    adapt({Condition::Kind::reflection_disturbance, z->descend_m, true, std::nullopt}, now);
                }
            }
        } else {
            last_disturbance_.reset();
        }
    }

    const auto& s = machine_.current();
    const auto& timers = config_.timers;
    if (s == "searching" && !track_point_ && waypoint_ >= route_.size()) {
        fire("route_complete", now);
    } else if (s == "surveillance" && timers.surveillance_ms && now - state_since_ >= *timers.surveillance_ms) {
        fire("surveillance_complete", now);
    } else if (s == "tracking" && now - state_since_ >= timers.tracking_ms) {
        fire("track_complete", now);
    } else if (s == "delivery" && now - state_since_ >= timers.delivery_ms) {
        fire("delivered", now);
    } else if (s == "rtl" && distance(position_, config_.home) < 1e-9) {
        fire("home_reached", now);
    }

    handle_detection(now);
}

void UavAgent::handle_detection(SimTime now)
{
    if (pending_help_ || manual_hold_) {
        return;
    }
    auto d = detect(now);
    if (!d) {
        return;
    }
    handled_targets_.insert(d->target_id);
    const auto decision = decide_detection(*d, config_.thresholds, trust_.score);
    emit(bus::topics::uav_detection(config_.id), bus::kCritical, msg::DetectionReport{*d, decision, false});
    if (decision == msg::DetectionDecision::act_autonomously) {
        if (const auto* t = scene_->find_target(d->target_id)) {
            track_point_ = t->position;
        }
        fire("track", now);
        adapt({Condition::Kind::victim_sighted, 0.0, true, d}, now);
    } else if (decision == msg::DetectionDecision::request_help) {
        pending_help_ = PendingHelp{*d, {}};
        fire("help_requested", now);
        adapt({Condition::Kind::help_needed, 0.0, false, d}, now);
    }
}

std::optional<msg::DetectionEvent> UavAgent::detect(SimTime now)
{
    if (!scanning() || !airborne()) {
        return std::nullopt;
    }
    ++frame_;
    const double radius = altitude_ * config_.kinematics.footprint_ratio;
    const Target* best = nullptr;
    double best_dist = 0.0;
    for (const auto& t : scene_->targets) {
        if (handled_targets_.count(t.id) != 0) {
            continue;
        }
        const double dist = distance(t.position, position_);
        if (dist <= radius && (best == nullptr || dist < best_dist)) {
            best = &t;
            best_dist = dist;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    const auto scores = draw_scores(scene_->profile_at(position_), best->confidence_offset, rng_);
    msg::DetectionEvent d;
    d.uav = config_.id;
    d.object_class = best->object_class;
    d.confidence = scores.confidence;
    d.reliability = scores.reliability;
    d.location = scene_->frame.to_geo(best->position);
    d.frame = frame_;
    d.target_id = best->id;
    d.at = now;
    return d;
}

void UavAgent::adapt(const Condition& c, SimTime now)
{
    emit(bus::topics::uav_adaptation(config_.id), bus::kStandard, self_adapt(c, now));
}

msg::AdaptationEvent UavAgent::self_adapt(const Condition& c, SimTime now) const
{
    using msg::AdaptationEvent;
    using msg::Trigger;
    using K = Condition::Kind;
    const auto& id = config_.id;
    const auto& color = config_.color;
    const auto altitude = [](int sign) {
        return msg::ControlAction{"altitude", msg::Direction::numeric(sign), false};
    };

    AdaptationEvent e;
    switch (c.kind) {
    case K::mist_entered:
        if (c.acted) {
            e = AdaptationEvent::machine(id, color, Trigger::external, "misty weather conditions",
                                         "reduced altitude by " + meters(c.amount) + " m", "limited visibility",
                                         now);
            e.control = altitude(-1);
        } else {
            e = AdaptationEvent::machine(id, color, Trigger::external, "misty weather conditions",
                                         "kept the operator-set altitude", "respect curtailed autonomy", now);
        }
        break;
    case K::mist_cleared:
        if (c.acted) {
            e = AdaptationEvent::machine(id, color, Trigger::external, "clearing weather",
                                         "restored altitude by " + meters(c.amount) + " m",
                                         "regain camera coverage", now);
            e.control = altitude(1);
        } else {
            e = AdaptationEvent::machine(id, color, Trigger::external, "clearing weather",
                                         "kept the operator-set altitude", "respect curtailed autonomy", now);
        }
        break;
    case K::reflection_disturbance:
        e = AdaptationEvent::machine(id, color, Trigger::internal, "altitude sensor fluctuations",
                                     "descending " + meters(c.amount) + " m", "keep a safe altitude margin", now);
        e.control = altitude(-1);
        break;
    case K::battery_degraded:
        e = AdaptationEvent::human(id, color, Trigger::internal,
                                   "battery at " + meters(std::round(c.amount)) + "%",
                                   "an operator decision on the remaining search", "keep enough charge to return",
                                   "sustained power draw", now);
        break;
    case K::battery_failsafe:
        e = AdaptationEvent::machine(id, color, Trigger::internal, "battery below failsafe floor",
                                     "returning to launch", "preserve remaining power", now);
        e.control = msg::ControlAction{"mode", msg::Direction::categorical("rtl", true), true};
        break;
    case K::victim_sighted:
        e = AdaptationEvent::machine(id, color, Trigger::external, "victim detected", "switched to tracking mode",
                                     "high confidence in victim sighting", now);
        break;
    case K::help_needed: {
        const bool unreliable = c.detection && c.detection->reliability < config_.thresholds.reliability_act;
        e = AdaptationEvent::human(id, color, Trigger::external, "possible victim",
                                   "human confirmation of the sighting",
                                   unreliable ? "resolve low detection reliability" : "compensate for low trust",
                                   std::nullopt, now);
        break;
    }
    case K::human_confirmed:
        e = AdaptationEvent::machine(id, color, Trigger::external, "victim confirmed by the operator",
                                     "switched to tracking mode", "act on the confirmed sighting", now);
        break;
    case K::human_refuted:
        e = AdaptationEvent::machine(id, color, Trigger::external, "sighting rejected by the operator",
                                     "resumed search", "avoid pursuing a false detection", now);
        break;
    case K::responsibility_reverted:
        e = AdaptationEvent::machine(id, color, Trigger::internal, "no operator response within the waiting period",
                                     c.acted ? "switched to tracking mode" : "resumed search",
                                     "keep the mission moving", now);
        break;
    case K::human_goal:
        e = AdaptationEvent::human(id, color, Trigger::external, "a new search goal",
                                   "to fly the updated route of " + meters(c.amount) + " waypoints",
                                   "cover the operator's chosen area", std::nullopt, now);
        break;
    }
    return e;
}

} // namespace hmt::agent
