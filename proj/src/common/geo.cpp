// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/common/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hmt {

namespace {

constexpr double kEarthRadiusM = 6371000.0;

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Vec2 p, Vec2 q, Vec2 r)
{
    return std::min(p.x, r.x) <= q.x && q.x <= std::max(p.x, r.x) && std::min(p.y, r.y) <= q.y &&
           q.y <= std::max(p.y, r.y);
}

int orientation(Vec2 p, Vec2 q, Vec2 r)
{
    const double v = cross(p, q, r);
    if (std::abs(v) < 1e-9) {
        return 0;
    }
    return v > 0 ? 1 : 2;
}

bool segments_intersect(Vec2 p1, Vec2 q1, Vec2 p2, Vec2 q2)
{
    const int o1 = orientation(p1, q1, p2);
    const int o2 = orientation(p1, q1, q2);
    const int o3 = orientation(p2, q2, p1);
    const int o4 = orientation(p2, q2, q1);
    if (o1 != o2 && o3 != o4) {
        return true;
    }
    return (o1 == 0 && on_segment(p1, p2, q1)) || (o2 == 0 && on_segment(p1, q2, q1)) ||
           (o3 == 0 && on_segment(p2, p1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

} // namespace

LocalFrame::LocalFrame(LatLon origin) : origin_(origin)
{
    constexpr double deg = std::numbers::pi / 180.0;
    meters_per_deg_lat_ = kEarthRadiusM * deg;
    meters_per_deg_lon_ = kEarthRadiusM * deg * std::cos(origin.lat * deg);
}

Vec2 LocalFrame::to_local(LatLon p) const
{
    return {(p.lon - origin_.lon) * meters_per_deg_lon_, (p.lat - origin_.lat) * meters_per_deg_lat_};
}

LatLon LocalFrame::to_geo(Vec2 p) const
{
    return {origin_.lat + p.y / meters_per_deg_lat_, origin_.lon + p.x / meters_per_deg_lon_};
}

bool polygon_self_intersects(std::span<const Vec2> ring)
{
    const std::size_t n = ring.size();
    if (n < 4) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a1 = ring[i];
        const Vec2 a2 = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) {
                continue;
            }
            if (segments_intersect(a1, a2, ring[j], ring[(j + 1) % n])) {
                return true;
            }
        }
    }
    return false;
}

} // namespace hmt
