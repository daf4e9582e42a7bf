// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/scene.hpp"

#include <algorithm>

namespace hmt::agent {

double ScoreDistribution::floor() const { return std::clamp(mean - spread, 0.0, 1.0); }
double ScoreDistribution::ceiling() const { return std::clamp(mean + spread, 0.0, 1.0); }

std::map<std::string, NoiseProfile> default_noise_profiles()
{
    return {
        {kClearProfile, {{0.90, 0.05}, {0.90, 0.05}}},
        {kMistyProfile, {{0.88, 0.05}, {0.60, 0.10}}},
    };
}

const Zone* Scene::zone_at(ZoneKind kind, Vec2 p) const
{
    for (const auto& z : zones) {
        if (z.kind == kind && distance(z.center, p) <= z.radius_m) {
            return &z;
        }
    }
    return nullptr;
}

const NoiseProfile& Scene::profile_at(Vec2 p) const
{
    const char* name = zone_at(ZoneKind::mist, p) != nullptr ? kMistyProfile : kClearProfile;
    if (auto it = profiles.find(name); it != profiles.end()) {
        return it->second;
    }
    static const auto fallback = default_noise_profiles();
    return fallback.at(name);
}

const Target* Scene::find_target(const std::string& id) const
{
    for (const auto& t : targets) {
        if (t.id == id) {
            return &t;
        }
    }
    return nullptr;
}

Scores draw_scores(const NoiseProfile& profile, double confidence_offset, Rng& rng)
{
    const auto draw = [&rng](const ScoreDistribution& d, double offset) {
        const double v = rng.uniform(d.mean - d.spread, d.mean + d.spread) + offset;
        return std::clamp(v, 0.0, 1.0);
    };
    Scores s;
    s.confidence = draw(profile.confidence, confidence_offset);
    s.reliability = draw(profile.reliability, 0.0);
    return s;
}

} // namespace hmt::agent
