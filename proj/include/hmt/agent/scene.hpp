// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/geo.hpp"
#include "hmt/common/rng.hpp"
#include "hmt/common/time.hpp"

#include <map>
#include <string>
#include <vector>

namespace hmt::agent {

/// Uniform in [mean - spread, mean + spread], clamped to [0, 1].
struct ScoreDistribution
{
    double mean = 0.9;
    double spread = 0.05;

    [[nodiscard]] double floor() const;
    [[nodiscard]] double ceiling() const;
};

struct NoiseProfile
{
    ScoreDistribution confidence;
    ScoreDistribution reliability;
};

inline constexpr const char* kClearProfile = "clear";
inline constexpr const char* kMistyProfile = "misty";

std::map<std::string, NoiseProfile> default_noise_profiles();

/// Ground-truth object the simulated camera can pick up.
struct Target
{
    std::string id;
    std::string object_class = "person";
    bool is_victim = true;
    Vec2 position;
    double confidence_offset = 0.0;
};

enum class ZoneKind { mist, reflection };

/// Circular weather or terrain feature.
struct Zone
{
    ZoneKind kind = ZoneKind::mist;
    Vec2 center;
    double radius_m = 0.0;
    /// Reflection zones: interval between sensor disturbances and the
    /// descent each one provokes.
    SimTime period_ms = 3000;
    double descend_m = 4.0;
};

struct Scene
{
    LocalFrame frame;
    std::map<std::string, NoiseProfile> profiles = default_noise_profiles();
    std::vector<Target> targets;
    std::vector<Zone> zones;

    [[nodiscard]] const Zone* zone_at(ZoneKind kind, Vec2 p) const;
    /// Misty inside a mist zone, clear elsewhere.
    [[nodiscard]] const NoiseProfile& profile_at(Vec2 p) const;
    [[nodiscard]] const Target* find_target(const std::string& id) const;
};

struct Scores
{
    double confidence = 0.0;
    double reliability = 0.0;
};

Scores draw_scores(const NoiseProfile& profile, double confidence_offset, Rng& rng);

} // namespace hmt::agent
