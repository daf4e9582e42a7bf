// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/mission.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/common/error.hpp"

#include <chrono>
#include <thread>

namespace hmt::gcs {

std::string_view to_string(Lifecycle l)
{
    switch (l) {
    case Lifecycle::idle: return "idle";
    case Lifecycle::running: return "running";
    case Lifecycle::paused: return "paused";
    case Lifecycle::completed: return "completed";
    case Lifecycle::aborted: return "aborted";
    case Lifecycle::incomplete: return "incomplete";
    }
    return "?";
}

class Mission::BusPublisher : public Publisher
{
public:
    explicit BusPublisher(bus::Bus& b) : bus_(b) {}
    void publish(bus::Envelope env) override { bus_.publish(std::move(env)); }

private:
    bus::Bus& bus_;
};

namespace {

std::uint64_t resolve_seed(const MissionSpec& spec, const MissionOptions& o)
{
    if (o.seed) {
        return *o.seed;
    }
    if (spec.seed) {
        return *spec.seed;
    }
    if (o.clock == bus::ClockMode::lockstep) {
        throw ValidationError({"seed: required for lockstep runs"});
    }
    return 0;
}

} // namespace

Mission::Mission(MissionSpec spec, MissionOptions options)
    : spec_(std::move(spec)),
      options_(options),
      seed_(resolve_seed(spec_, options_)),
      bus_(make_bus_config(spec_, options_.clock, seed_))
{
    publisher_ = std::make_unique<BusPublisher>(bus_);
    gcs_ = std::make_unique<Gcs>(spec_, *publisher_);
    const auto scene = make_scene(spec_);
    for (std::size_t i = 0; i < spec_.uavs.size(); ++i) {
        agents_.push_back(std::make_unique<agent::UavAgent>(make_uav_config(spec_, spec_.uavs[i]), scene,
                                                            derive_seed(seed_, 1 + i)));
    }
    if (options_.log != nullptr) {
        log_ = std::make_unique<EventLogWriter>(*options_.log);
    }
}

Mission::~Mission() = default;

void Mission::add_actor(std::unique_ptr<Actor> actor)
{
    if (lifecycle_ != Lifecycle::idle) {
        throw StateError("actors must be added before start");
    }
    actors_.push_back(std::move(actor));
}

const agent::UavAgent* Mission::agent(const std::string& id) const
{
    for (const auto& a : agents_) {
        if (a->id() == id) {
            return a.get();
        }
    }
    return nullptr;
}

void Mission::start()
{
    if (lifecycle_ != Lifecycle::idle) {
        throw StateError("mission already started (" + std::string(to_string(lifecycle_.load())) + ")");
    }
    if (log_) {
        log_->header(spec_, seed_, options_.clock);
        bus_.set_delivery_observer([this](const bus::Envelope& env, SimTime at) { log_->record(env, at); });
    }
    for (const auto& p : Gcs::subscriptions()) {
        bus_.subscribe(p, kGcsActor);
    }
    for (const auto& a : agents_) {
        for (const auto& p : a->subscriptions()) {
            bus_.subscribe(p, a->id());
        }
    }
    for (const auto& a : actors_) {
        for (const auto& p : a->subscriptions()) {
            bus_.subscribe(p, a->name());
        }
    }
    bus_.subscribe(std::string(bus::topics::kCommands), kConsoleActor);
    lifecycle_ = Lifecycle::running;
    const auto now = bus_.now();
    stage(now, true);
    next_agent_step_ = now + spec_.step_period_ms;
    check_end(now);
}

void Mission::pause()
{
    auto expected = Lifecycle::running;
    if (lifecycle_.compare_exchange_strong(expected, Lifecycle::paused)) {
        bus_.pause();
    }
}

void Mission::resume()
{
    auto expected = Lifecycle::paused;
    if (lifecycle_.compare_exchange_strong(expected, Lifecycle::running)) {
        bus_.resume();
    }
}

void Mission::abort()
{
    const auto l = lifecycle_.load();
    if (l != Lifecycle::running && l != Lifecycle::paused) {
        throw StateError("abort: mission not running");
    }
    msg::DirectiveCommand c;
    c.id = "abort-" + std::to_string(++abort_count_);
    c.abort = true;
    c.directive.issued_at = bus_.now();
    submit(std::string(bus::topics::kHumanDirective), c, kOperatorActor);
}

void Mission::submit(const std::string& topic, msg::Payload payload, const std::string& sender)
{
    bus::Envelope env;
    env.topic = topic;
    env.sender = sender;
    env.qos = std::string(bus::kCritical);
    env.payload = std::move(payload);
    bus_.publish(std::move(env));
}

void Mission::publish_all(const std::string& sender, std::vector<agent::Outbound> out, SimTime now)
{
    for (auto& o : out) {
        bus::Envelope env;
        env.topic = std::move(o.topic);
        env.sender = sender;
        env.sent_at = now;
        env.qos = std::move(o.qos);
        env.payload = std::move(o.payload);
        bus_.publish(std::move(env));
    }
}

void Mission::dispatch(const std::vector<bus::Delivery>& deliveries)
{
    for (const auto& d : deliveries) {
        if (d.subscriber == kGcsActor) {
            gcs_->on_envelope(*d.envelope, d.at);
            continue;
        }
        if (d.subscriber == kConsoleActor) {
            if (console_sink_) {
                console_sink_(*d.envelope);
            }
            continue;
        }
        bool handled = false;
        for (auto& a : agents_) {
            if (a->id() == d.subscriber) {
                a->receive(*d.envelope);
                handled = true;
                break;
            }
        }
        if (handled) {
            continue;
        }
        for (auto& a : actors_) {
            if (a->name() == d.subscriber) {
                a->receive(*d.envelope, d.at);
                break;
            }
        }
    }
}

void Mission::stage(SimTime now, bool agents_due)
{
    if (agents_due) {
        for (auto& a : agents_) {
            publish_all(a->id(), a->step(now), now);
        }
    }
    for (auto& a : actors_) {
        publish_all(a->name(), a->step(now, *gcs_), now);
    }
    gcs_->tick(now);
}

void Mission::step()
{
    if (lifecycle_ != Lifecycle::running) {
        return;
    }
    auto deliveries = bus_.advance(1);
    const auto now = bus_.now();
    dispatch(deliveries);
    stage(now, now % spec_.step_period_ms == 0);
    check_end(now);
}

void Mission::check_end(SimTime now)
{
    bool done = true;
    for (const auto& a : agents_) {
        done = done && a->finished();
    }
    if (done) {
        finish(gcs_->abort_requested() ? Lifecycle::aborted : Lifecycle::completed, now);
    } else if (now >= spec_.time_cap_ms) {
        finish(Lifecycle::incomplete, now);
    }
}

SimTime Mission::drain(SimTime now)
{
    // Traffic still in flight at the end is delivered so that every
    // adaptation reaches the GCS and every explanation reaches the log.
    // UAVs and actors are no longer stepped.
    const bool lockstep = options_.clock == bus::ClockMode::lockstep;
    const SimTime limit = now + kDrainLimitMs;
    while (bus_.pending() > 0 && now < limit) {
        std::vector<bus::Delivery> deliveries;
        if (lockstep) {
            deliveries = bus_.advance(1);
        } else {
            std::this_thread::sleep_for(std::chrono::milliseconds(spec_.bus_tick_ms));
            deliveries = bus_.poll();
        }
        now = bus_.now();
        for (const auto& d : deliveries) {
            if (d.subscriber == kGcsActor) {
                gcs_->on_envelope(*d.envelope, d.at);
            } else if (d.subscriber == kConsoleActor && console_sink_) {
                console_sink_(*d.envelope);
            }
        }
        gcs_->tick(now);
    }
    return now;
}

void Mission::finish(Lifecycle final_state, SimTime now)
{
    now = drain(now);
    lifecycle_ = final_state;
    if (log_) {
        log_->footer(now, std::string(to_string(final_state)));
    }
}

Lifecycle Mission::run()
{
    if (options_.clock != bus::ClockMode::lockstep) {
        throw StateError("run() drives lockstep missions; use run_realtime()");
    }
    if (lifecycle_ == Lifecycle::idle) {
        start();
    }
    while (lifecycle_ == Lifecycle::running) {
        step();
    }
    return lifecycle_;
}

Lifecycle Mission::run_realtime(const std::atomic<bool>& stop, RealtimeHooks hooks)
{
    if (options_.clock != bus::ClockMode::realtime) {
        throw StateError("run_realtime() needs a realtime clock");
    }
    console_sink_ = hooks.on_console;
    if (lifecycle_ == Lifecycle::idle) {
        start();
    }
    const auto pace = std::chrono::milliseconds(hooks.pace_ms > 0 ? hooks.pace_ms : spec_.bus_tick_ms);
    std::uint64_t sent_version = 0;
    auto wake = std::chrono::steady_clock::now();
    while (!stop.load()) {
        const auto l = lifecycle_.load();
        if (l != Lifecycle::running && l != Lifecycle::paused) {
            break;
        }
        wake += pace;
        std::this_thread::sleep_until(wake);
        if (l == Lifecycle::paused) {
            continue;
        }
        auto deliveries = bus_.poll();
        const auto now = bus_.now();
        dispatch(deliveries);
        const bool due = now >= next_agent_step_;
        if (due) {
            while (next_agent_step_ <= now) {
                next_agent_step_ += spec_.step_period_ms;
            }
        }
        stage(now, due);
        if (hooks.on_frame && gcs_->frame_version() != sent_version) {
            sent_version = gcs_->frame_version();
            hooks.on_frame(gcs_->frame_ptr());
        }
        check_end(now);
    }
    if (lifecycle_ == Lifecycle::running || lifecycle_ == Lifecycle::paused) {
        finish(Lifecycle::incomplete, bus_.now());
    }
    return lifecycle_;
}

} // namespace hmt::gcs
