// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/bus/bus.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/msg/json.hpp"

#include <algorithm>
#include <set>

namespace hmt::bus {

std::vector<ServiceClass> default_service_classes()
{
    return {{std::string(kCritical), 50}, {std::string(kStandard), 250}};
}

std::string_view to_string(ClockMode m) { return m == ClockMode::lockstep ? "lockstep" : "realtime"; }

std::optional<ClockMode> clock_mode_from(std::string_view s)
{
    if (s == "lockstep") {
        return ClockMode::lockstep;
    }
    if (s == "realtime") {
        return ClockMode::realtime;
    }
    return std::nullopt;
}

Clock::Clock(ClockMode mode, SimTime tick) : mode_(mode), tick_(tick), epoch_(steady::now())
{
    if (tick <= 0) {
        throw BusError("clock tick must be positive");
    }
}

SimTime Clock::now() const
{
    if (mode_ == ClockMode::lockstep) {
        return now_;
    }
    const auto reading = paused_at_.value_or(steady::now());
    return std::chrono::duration_cast<std::chrono::milliseconds>(reading - epoch_).count();
}

SimTime Clock::advance(std::size_t steps)
{
    if (mode_ != ClockMode::lockstep) {
        throw BusError("advance() requires lockstep mode");
    }
    now_ += static_cast<SimTime>(steps) * tick_;
    return now_;
}

void Clock::pause()
{
    if (mode_ == ClockMode::realtime && !paused_at_) {
        paused_at_ = steady::now();
    }
}

void Clock::resume()
{
    if (paused_at_) {
        epoch_ += steady::now() - *paused_at_;
        paused_at_.reset();
    }
}

Bus::Bus(Config config) : config_(std::move(config)), clock_(config_.mode, config_.tick), rng_(config_.seed)
{
    if (config_.classes.empty()) {
        throw BusError("at least one service class is required");
    }
    std::set<std::string> names;
    for (const auto& c : config_.classes) {
        if (c.max_latency <= 0) {
            throw BusError("service class '" + c.name + "' needs a positive max latency");
        }
        if (!names.insert(c.name).second) {
            throw BusError("duplicate service class '" + c.name + "'");
        }
        if (config_.mode == ClockMode::lockstep && c.max_latency % config_.tick != 0) {
            throw BusError("service class '" + c.name + "' latency must be a multiple of the tick");
        }
    }
    const auto* critical = find_class(kCritical);
    const auto* standard = find_class(kStandard);
    if (critical && standard && critical->max_latency >= standard->max_latency) {
        throw BusError("critical latency bound must be below the standard bound");
    }
}

const ServiceClass* Bus::find_class(std::string_view name) const
{
    for (const auto& c : config_.classes) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

Receipt Bus::publish(Envelope env)
{
    std::lock_guard lock(mutex_);
    if (!valid_topic(env.topic)) {
        throw BusError("invalid topic '" + env.topic + "'");
    }
    if (env.sender.empty()) {
        throw BusError("envelope without sender");
    }
    const ServiceClass* qos = find_class(env.qos);
    if (qos == nullptr) {
        throw BusError("unknown service class '" + env.qos + "'");
    }
    const auto size = msg::payload_to_json(env.payload).dump().size();
    if (size > config_.max_payload_bytes) {
        throw BusError("payload of " + std::to_string(size) + " bytes exceeds cap on " + env.topic);
    }

    env.seq = ++last_seq_[env.sender];
    env.sent_at = clock_.now();

    const SimTime bound = env.sent_at + qos->max_latency;
    SimTime deadline = env.sent_at + rng_.uniform_int(1, qos->max_latency);
    auto& lane = lanes_[{env.sender, env.topic}];
    if (!lane.empty()) {
        deadline = std::min(std::max(deadline, std::get<0>(lane.back())), bound);
    }
    // A tighter class may not wait behind earlier traffic on the same lane,
    // so pull that traffic forward instead of reordering.
    for (auto& key : lane) {
        if (std::get<0>(key) > deadline) {
            auto node = queue_.extract(key);
            std::get<0>(key) = deadline;
            node.key() = key;
            queue_.insert(std::move(node));
        }
    }

    Pending pending;
    std::set<std::string> seen;
    for (const auto& [handle, sub] : subscriptions_) {
        if (topic_matches(sub.pattern, env.topic) && seen.insert(sub.subscriber).second) {
            pending.recipients.push_back(sub.subscriber);
        }
    }
    Key key{deadline, env.sender, env.seq};
    Receipt receipt{env.seq, env.sent_at, deadline};
    pending.envelope = std::make_shared<const Envelope>(std::move(env));
    queue_.emplace(key, std::move(pending));
    lane.push_back(key);
    return receipt;
}

SubscriptionHandle Bus::subscribe(const std::string& pattern, const std::string& subscriber)
{
    std::lock_guard lock(mutex_);
    if (!valid_pattern(pattern)) {
        throw BusError("invalid subscription pattern '" + pattern + "'");
    }
    for (const auto& [handle, sub] : subscriptions_) {
        if (sub.pattern == pattern && sub.subscriber == subscriber) {
            return handle;
        }
    }
    const auto handle = next_handle_++;
    subscriptions_.emplace(handle, Subscription{pattern, subscriber});
    return handle;
}

void Bus::unsubscribe(SubscriptionHandle handle)
{
    std::lock_guard lock(mutex_);
    subscriptions_.erase(handle);
}

std::vector<Delivery> Bus::advance(std::size_t steps)
{
    std::lock_guard lock(mutex_);
    if (config_.mode != ClockMode::lockstep) {
        throw BusError("advance() requires lockstep mode");
    }
    std::vector<Delivery> out;
    for (std::size_t i = 0; i < steps; ++i) {
        const SimTime now = clock_.advance(1);
        auto batch = deliver_due(now);
        out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
    }
    return out;
}

std::vector<Delivery> Bus::poll()
{
    std::lock_guard lock(mutex_);
    return deliver_due(clock_.now());
}

std::vector<Delivery> Bus::deliver_due(SimTime now)
{
    std::vector<Delivery> out;
    while (!queue_.empty() && std::get<0>(queue_.begin()->first) <= now) {
        auto node = queue_.extract(queue_.begin());
        const auto& env = *node.mapped().envelope;
        auto lane_it = lanes_.find({env.sender, env.topic});
        if (lane_it != lanes_.end()) {
            auto& lane = lane_it->second;
            lane.erase(std::find(lane.begin(), lane.end(), node.key()));
            if (lane.empty()) {
                lanes_.erase(lane_it);
            }
        }
        if (observer_) {
            observer_(env, now);
        }
        for (auto& recipient : node.mapped().recipients) {
            out.push_back(Delivery{node.mapped().envelope, std::move(recipient), now});
        }
    }
    return out;
}

void Bus::set_delivery_observer(std::function<void(const Envelope&, SimTime)> observer)
{
    std::lock_guard lock(mutex_);
    observer_ = std::move(observer);
}

SimTime Bus::now() const
{
    std::lock_guard lock(mutex_);
    return clock_.now();
}

std::size_t Bus::pending() const
{
    std::lock_guard lock(mutex_);
    return queue_.size();
}

void Bus::pause()
{
    std::lock_guard lock(mutex_);
    clock_.pause();
}

void Bus::resume()
{
    std::lock_guard lock(mutex_);
    clock_.resume();
}

} // namespace hmt::bus
