// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/rng.hpp"
#include "hmt/common/time.hpp"
#include "hmt/msg/messages.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hmt::bus {

/// Delivery guarantee: an envelope published at t is delivered no later
/// than t + max_latency (simulated).
struct ServiceClass
{
    std::string name;
    SimTime max_latency = 0;

    friend bool operator==(const ServiceClass&, const ServiceClass&) = default;
};

inline constexpr std::string_view kCritical = "critical";
inline constexpr std::string_view kStandard = "standard";

std::vector<ServiceClass> default_service_classes();

enum class ClockMode { lockstep, realtime };

std::string_view to_string(ClockMode m);
std::optional<ClockMode> clock_mode_from(std::string_view s);

/// Simulated clock. Lockstep time moves only through advance(); realtime
/// time follows the steady clock, minus any paused spans.
class Clock
{
public:
    Clock(ClockMode mode, SimTime tick);

    [[nodiscard]] ClockMode mode() const { return mode_; }
    [[nodiscard]] SimTime tick() const { return tick_; }
    [[nodiscard]] SimTime now() const;

    /// Lockstep only.
    SimTime advance(std::size_t steps);

    void pause();
    void resume();
    [[nodiscard]] bool paused() const { return paused_at_.has_value(); }

private:
    using steady = std::chrono::steady_clock;

    ClockMode mode_;
    SimTime tick_;
    SimTime now_ = 0;
    steady::time_point epoch_;
    std::optional<steady::time_point> paused_at_;
};

struct Envelope
{
    std::string topic;
    std::string sender;
    std::uint64_t seq = 0;
    SimTime sent_at = 0;
    std::string qos{kStandard};
    msg::Payload payload;

    friend bool operator==(const Envelope&, const Envelope&) = default;
};

struct Receipt
{
    std::uint64_t seq = 0;
    SimTime sent_at = 0;
    /// Upper bound on delivery time.
    SimTime deliver_by = 0;
};

using SubscriptionHandle = std::uint64_t;

struct Delivery
{
    std::shared_ptr<const Envelope> envelope;
    std::string subscriber;
    SimTime at = 0;
};

class BusError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// In-process topic broker with service classes and seeded latency.
///
/// Envelopes are delivered in (deadline, sender, seq) order. Latency is
/// uniform in [1, max_latency]; per (sender, topic) delivery stays FIFO.
/// All public members lock, so realtime actors may call from any thread.
class Bus
{
public:
    struct Config
    {
        ClockMode mode = ClockMode::lockstep;
        SimTime tick = 10;
        std::vector<ServiceClass> classes = default_service_classes();
        std::size_t max_payload_bytes = 64 * 1024;
        std::uint64_t seed = 0;
    };

    explicit Bus(Config config);

    /// Stamps sender seq and sent_at, queues for every matching subscriber.
    Receipt publish(Envelope env);

    /// Identical (pattern, subscriber) pairs return the existing handle.
    SubscriptionHandle subscribe(const std::string& pattern, const std::string& subscriber);
    void unsubscribe(SubscriptionHandle handle);

    /// Lockstep: advance `steps` ticks, returning deliveries in order.
    std::vector<Delivery> advance(std::size_t steps);

    /// Realtime: deliver everything due at the current clock reading.
    std::vector<Delivery> poll();

    /// Called once per envelope as it becomes due, whether or not anyone
    /// subscribed, in delivery order.
    void set_delivery_observer(std::function<void(const Envelope&, SimTime)> observer);

    [[nodiscard]] SimTime now() const;
    [[nodiscard]] const Config& config() const { return config_; }
    [[nodiscard]] std::size_t pending() const;

    void pause();
    void resume();

private:
    using Key = std::tuple<SimTime, std::string, std::uint64_t>;  // deadline, sender, seq

    struct Pending
    {
        std::shared_ptr<const Envelope> envelope;
        std::vector<std::string> recipients;
    };

    struct Subscription
    {
        std::string pattern;
        std::string subscriber;
    };

    std::vector<Delivery> deliver_due(SimTime now);
    const ServiceClass* find_class(std::string_view name) const;

    mutable std::mutex mutex_;
    Config config_;
    Clock clock_;
    Rng rng_;
    std::map<SubscriptionHandle, Subscription> subscriptions_;
    SubscriptionHandle next_handle_ = 1;
    std::map<std::string, std::uint64_t> last_seq_;
    std::map<Key, Pending> queue_;
    // Pending deadlines per (sender, topic), ascending by seq.
    std::map<std::pair<std::string, std::string>, std::vector<Key>> lanes_;
    std::function<void(const Envelope&, SimTime)> observer_;
};

} // namespace hmt::bus
