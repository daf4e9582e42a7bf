// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/tug_of_war.hpp"

#include <algorithm>

namespace hmt::coord {

namespace {

struct Klass
{
    msg::Actor actor;
    msg::Direction direction;

    bool operator==(const Klass& o) const { return actor == o.actor && direction == o.direction; }
};

Klass partner(const Klass& c)
{
    Klass p = c;
    p.actor = c.actor == msg::Actor::human ? msg::Actor::machine : msg::Actor::human;
    if (c.direction.is_categorical()) {
        p.direction.set = !c.direction.set;
    } else {
        p.direction.sign = -c.direction.sign;
    }
    return p;
}

} // namespace

std::size_t max_alternations(std::span<const ActionLogEntry> entries)
{
    // A valid chain only ever uses one class and its partner, so for each
    // candidate pair the answer is the number of runs in the filtered log.
    std::size_t best = 0;
    std::vector<Klass> tried;
    for (const auto& seed : entries) {
        const Klass a{seed.actor, seed.direction};
        if (!opposing(a.direction, partner(a).direction)) {
            continue;
        }
        if (std::find(tried.begin(), tried.end(), a) != tried.end()) {
            continue;
        }
        const Klass b = partner(a);
        tried.push_back(a);
        tried.push_back(b);
        std::size_t runs = 0;
        std::optional<bool> last;  // true: class a
        for (const auto& e : entries) {
            const Klass c{e.actor, e.direction};
            const bool is_a = c == a;
            if (!is_a && !(c == b)) {
                continue;
            }
            if (!last || *last != is_a) {
                ++runs;
                last = is_a;
            }
        }
        if (runs > 0) {
            best = std::max(best, runs - 1);
        }
    }
    return best;
}

void TugOfWarDetector::record(ActionLogEntry e)
{
    auto& v = log_[{e.uav, e.dimension}];
    const auto at = e.at;
    v.push_back(std::move(e));
    // Keep only what a detect() at `at` could still see.
    const auto cutoff = at - config_.window_ms;
    v.erase(v.begin(), std::find_if(v.begin(), v.end(), [&](const auto& x) { return x.at >= cutoff; }));
}

std::optional<Conflict> TugOfWarDetector::detect(const std::string& uav, SimTime now) const
{
    for (auto it = log_.lower_bound({uav, ""}); it != log_.end() && it->first.first == uav; ++it) {
        const auto& all = it->second;
        const auto first = std::find_if(all.begin(), all.end(),
                                        [&](const auto& e) { return e.at >= now - config_.window_ms; });
        if (first == all.end()) {
            continue;
        }
        const std::span<const ActionLogEntry> window(all.data() + (first - all.begin()),
                                                     static_cast<std::size_t>(all.end() - first));
        const auto n = max_alternations(window);
        if (n >= config_.k) {
            return Conflict{uav, it->first.second, n, window.front().at, window.back().at};
        }
    }
    return std::nullopt;
}

void TugOfWarDetector::clear(const std::string& uav, const std::string& dimension)
{
    log_.erase({uav, dimension});
}

void TugOfWarDetector::clear(const std::string& uav)
{
    for (auto it = log_.lower_bound({uav, ""}); it != log_.end() && it->first.first == uav;) {
        it = log_.erase(it);
    }
}

std::vector<ActionLogEntry> TugOfWarDetector::entries(const std::string& uav, const std::string& dimension) const
{
    auto it = log_.find({uav, dimension});
    return it == log_.end() ? std::vector<ActionLogEntry>{} : it->second;
}

} // namespace hmt::coord
