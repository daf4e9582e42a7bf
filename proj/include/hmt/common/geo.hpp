// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hmt {

struct LatLon
{
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const LatLon&, const LatLon&) = default;
};

/// Planar east/north offset in meters.
struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Equirectangular projection around a mission origin. Accurate to well
/// under a meter over the few kilometers a search area spans.
class LocalFrame
{
public:
    LocalFrame() = default;
    explicit LocalFrame(LatLon origin);

    [[nodiscard]] Vec2 to_local(LatLon p) const;
    [[nodiscard]] LatLon to_geo(Vec2 p) const;
    [[nodiscard]] LatLon origin() const { return origin_; }

private:
    LatLon origin_{};
    double meters_per_deg_lat_ = 0.0;
    double meters_per_deg_lon_ = 0.0;
};

/// True if the closed polygon has two non-adjacent edges that touch.
bool polygon_self_intersects(std::span<const Vec2> ring);

} // namespace hmt
