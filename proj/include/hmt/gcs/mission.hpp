// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/agent/uav_agent.hpp"
#include "hmt/bus/bus.hpp"
#include "hmt/gcs/event_log.hpp"
#include "hmt/gcs/gcs.hpp"
#include "hmt/gcs/mission_spec.hpp"

#include <atomic>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hmt::gcs {

/// Non-UAV participant on the bus (a scripted human, a test probe).
class Actor
{
public:
    virtual ~Actor() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual std::vector<std::string> subscriptions() const = 0;
    virtual void receive(const bus::Envelope& env, SimTime at) = 0;
    /// Called once per bus tick after the UAVs, before the GCS.
    virtual std::vector<agent::Outbound> step(SimTime now, const Gcs& gcs) = 0;
};

enum class Lifecycle { idle, running, paused, completed, aborted, incomplete };

std::string_view to_string(Lifecycle l);

struct MissionOptions
{
    bus::ClockMode clock = bus::ClockMode::lockstep;
    /// Overrides the mission's seed.
    std::optional<std::uint64_t> seed;
    /// Event log destination; none disables logging.
    std::ostream* log = nullptr;
};

/// Hooks for a realtime run with a console attached.
struct RealtimeHooks
{
    std::function<void(std::shared_ptr<const Frame>)> on_frame;
    /// Deliveries addressed to the "console" subscriber.
    std::function<void(const bus::Envelope&)> on_console;
    SimTime pace_ms = 0;  // wall-clock wait per loop; defaults to the bus tick
};

inline constexpr const char* kConsoleActor = "console";
inline constexpr const char* kOperatorActor = "operator";

/// Wires agents, actors, GCS, bus and event log into one mission and
/// drives it. Lockstep: step() advances one bus tick. Realtime:
/// run_realtime() paces against the wall clock.
class Mission
{
public:
    Mission(MissionSpec spec, MissionOptions options);
    ~Mission();

    Mission(const Mission&) = delete;
    Mission& operator=(const Mission&) = delete;

    /// Before start().
    void add_actor(std::unique_ptr<Actor> actor);

    /// Throws StateError unless idle.
    void start();
    void pause();
    void resume();
    /// Sends a mission-wide return-to-launch through the GCS.
    void abort();

    /// Lockstep: one tick. No-op unless running.
    void step();
    /// Lockstep: step until the mission ends. Returns the final lifecycle.
    Lifecycle run();

    /// Realtime loop until the mission ends or `stop` is set.
    Lifecycle run_realtime(const std::atomic<bool>& stop, RealtimeHooks hooks);

    /// Thread-safe entry for console traffic.
    void submit(const std::string& topic, msg::Payload payload, const std::string& sender);

    [[nodiscard]] Lifecycle lifecycle() const { return lifecycle_.load(); }
    [[nodiscard]] SimTime now() const { return bus_.now(); }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] const MissionSpec& spec() const { return spec_; }
    [[nodiscard]] const Gcs& gcs() const { return *gcs_; }
    [[nodiscard]] bus::Bus& bus() { return bus_; }
    [[nodiscard]] const std::vector<std::unique_ptr<agent::UavAgent>>& agents() const { return agents_; }
    [[nodiscard]] const agent::UavAgent* agent(const std::string& id) const;

private:
    class BusPublisher;

    void stage(SimTime now, bool agents_due);
    void dispatch(const std::vector<bus::Delivery>& deliveries);
    void publish_all(const std::string& sender, std::vector<agent::Outbound> out, SimTime now);
    void check_end(SimTime now);
    void finish(Lifecycle final_state, SimTime now);
    SimTime drain(SimTime now);

    static constexpr SimTime kDrainLimitMs = 10'000;

    MissionSpec spec_;
    MissionOptions options_;
    std::uint64_t seed_;
    bus::Bus bus_;
    std::unique_ptr<BusPublisher> publisher_;
    std::unique_ptr<Gcs> gcs_;
    std::vector<std::unique_ptr<agent::UavAgent>> agents_;
    std::vector<std::unique_ptr<Actor>> actors_;
    std::unique_ptr<EventLogWriter> log_;
    std::function<void(const bus::Envelope&)> console_sink_;
    std::atomic<Lifecycle> lifecycle_{Lifecycle::idle};
    std::uint64_t abort_count_ = 0;
    SimTime next_agent_step_ = 0;
};

} // namespace hmt::gcs
