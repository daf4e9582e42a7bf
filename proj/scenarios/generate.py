#!/usr/bin/env python3
# Copyright 2026 hmtloop Authors
# SPDX-License-Identifier: Apache-2.0
"""Writes the bundled mission files from local east/north layouts in meters."""

import json
import math
import pathlib

ORIGIN = (41.70, -86.24)
EARTH_RADIUS_M = 6371000.0
HERE = pathlib.Path(__file__).resolve().parent


def geo(x, y):
    deg = math.pi / 180.0
    lat = ORIGIN[0] + y / (EARTH_RADIUS_M * deg)
    lon = ORIGIN[1] + x / (EARTH_RADIUS_M * deg * math.cos(ORIGIN[0] * deg))
    return [round(lat, 8), round(lon, 8)]


def path(points):
    return [geo(x, y) for x, y in points]


FLIGHT = ["takeoff", "searching", "victim_detected", "tracking", "delivery"]

SAR = {
    "initial": "standby",
    "states": ["standby", "takeoff", "searching", "victim_detected", "tracking", "delivery", "rtl", "land"],
    "transitions": [
        {"from": "standby", "event": "launch", "to": "takeoff"},
        {"from": "takeoff", "event": "altitude_reached", "to": "searching"},
        {"from": "searching", "event": "help_requested", "to": "victim_detected"},
        {"from": "searching", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "resume_search", "to": "searching"},
        {"from": "tracking", "event": "track_complete", "to": "delivery"},
        {"from": "delivery", "event": "delivered", "to": "rtl"},
        {"from": "searching", "event": "route_complete", "to": "rtl"},
        {"from": "rtl", "event": "home_reached", "to": "land"},
    ]
    + [{"from": s, "event": "return", "to": "rtl"} for s in FLIGHT]
    + [{"from": s, "event": "battery_low", "to": "rtl"} for s in FLIGHT],
}

PATROL = {
    "initial": "standby",
    "states": ["standby", "takeoff", "surveillance", "victim_detected", "tracking", "rtl", "land"],
    "transitions": [
        {"from": "standby", "event": "launch", "to": "takeoff"},
        {"from": "takeoff", "event": "altitude_reached", "to": "surveillance"},
        {"from": "surveillance", "event": "help_requested", "to": "victim_detected"},
        {"from": "surveillance", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "resume_search", "to": "surveillance"},
        {"from": "tracking", "event": "track_complete", "to": "surveillance"},
        {"from": "surveillance", "event": "surveillance_complete", "to": "rtl"},
        {"from": "rtl", "event": "home_reached", "to": "land"},
    ]
    + [{"from": s, "event": "return", "to": "rtl"} for s in ["takeoff", "surveillance", "victim_detected", "tracking"]]
    + [{"from": s, "event": "battery_low", "to": "rtl"} for s in ["takeoff", "surveillance", "victim_detected", "tracking"]],
}

# Search-only loop: a tracked victim hands back to searching, so one UAV
# can meet many victims in a row.
SWEEP = {
    "initial": "standby",
    "states": ["standby", "takeoff", "searching", "victim_detected", "tracking", "rtl", "land"],
    "transitions": [
        {"from": "standby", "event": "launch", "to": "takeoff"},
        {"from": "takeoff", "event": "altitude_reached", "to": "searching"},
        {"from": "searching", "event": "help_requested", "to": "victim_detected"},
        {"from": "searching", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "track", "to": "tracking"},
        {"from": "victim_detected", "event": "resume_search", "to": "searching"},
        {"from": "tracking", "event": "track_complete", "to": "searching"},
        {"from": "searching", "event": "route_complete", "to": "rtl"},
        {"from": "rtl", "event": "home_reached", "to": "land"},
    ]
    + [{"from": s, "event": "return", "to": "rtl"} for s in ["takeoff", "searching", "victim_detected", "tracking"]]
    + [{"from": s, "event": "battery_low", "to": "rtl"} for s in ["takeoff", "searching", "victim_detected", "tracking"]],
}

COMMON = {
    "origin": list(ORIGIN),
    "search_area": path([(-300, -300), (1700, -300), (1700, 1500), (-300, 1500)]),
    "step_period_ms": 100,
    "ui_refresh_ms": 200,
    "alert_ttl_ms": 60000,
    "time_cap_ms": 1800000,
    "bus": {
        "tick_ms": 10,
        "max_payload_bytes": 65536,
        "service_classes": [
            {"name": "critical", "max_latency_ms": 50},
            {"name": "standard", "max_latency_ms": 250},
        ],
    },
    "coordination": {"waiting_period_ms": 10000, "tug_k": 3, "tug_window_ms": 30000},
    "responsiveness": {"window": 10, "lag_ms": 5000, "recovery_ms": 2000},
    "views": [{"name": "map", "max_threshold": 3}, {"name": "tracking", "max_threshold": 5}],
    "alert_rules": [
        {"alert_type": "help_request", "view": "map", "essential": True},
        {"alert_type": "help_request", "view": "tracking", "essential": True},
        {"alert_type": "battery_failsafe", "view": "map", "essential": True},
        {"alert_type": "victim_detected", "view": "map", "priority": 1},
        {"alert_type": "victim_detected", "view": "tracking", "priority": 1},
        {"alert_type": "health_degraded", "view": "map", "priority": 2},
        {"alert_type": "human_no_response", "view": "map", "priority": 2},
        {"alert_type": "responsibility_reverted", "view": "tracking", "priority": 2},
        {"alert_type": "adaptation", "view": "map", "priority": 4},
        {"alert_type": "adaptation", "view": "tracking", "priority": 3},
        {"alert_type": "low_confidence_detection", "view": "map", "priority": 5},
    ],
    "refresh_plan": [
        {
            "attribute": "uav.position",
            "probe": "telemetry",
            "interval_ms": 100,
            "consumers": [
                {"model": "fleet-model", "required_interval_ms": 200},
                {"model": "console-map", "required_interval_ms": 200},
            ],
        },
        {
            "attribute": "uav.state",
            "probe": "state-change",
            "interval_ms": 100,
            "consumers": [{"model": "fleet-model", "required_interval_ms": 100}],
        },
    ],
}


def uav(uid, color, machine, home, route, launch=0, **extra):
    u = {"id": uid, "color": color, "machine": machine, "home": geo(*home), "route": path(route)}
    if launch is not None:
        u["launch_at_ms"] = launch
    u.update(extra)
    return u


def reference():
    m = dict(COMMON)
    m["name"] = "river-search-reference"
    m["seed"] = 42
    m["machines"] = {"sar": SAR, "patrol": PATROL}
    m["uavs"] = [
        uav("uav-blue", "blue", "sar", (0, 0), [(300, 400), (300, 900), (0, 900)]),
        uav(
            "uav-red",
            "red",
            "sar",
            (20, 0),
            [(600, 0), (600, 1200), (900, 1200), (900, 0), (1200, 0), (1200, 1200)],
            battery={"start_pct": 45},
        ),
        uav("uav-orange", "orange", "sar", (40, 0), [(40, 600), (1000, 600), (1000, 300), (1400, 300)]),
        uav(
            "uav-purple",
            "purple",
            "patrol",
            (60, 0),
            [(100, 1000), (500, 1000)],
            timers={"surveillance_ms": 120000},
        ),
        uav("uav-green", "green", "sar", (80, 0), [(80, 500)], launch=None),
    ]
    m["scene"] = {
        "targets": [
            {"id": "victim-river", "class": "person", "victim": True, "position": geo(300, 400)},
            {"id": "victim-bank", "class": "person", "victim": True, "position": geo(1000, 300)},
            {"id": "decoy-log", "class": "person", "victim": False, "position": geo(600, 600),
             "confidence_offset": -0.35},
        ],
        "zones": [{"kind": "mist", "center": geo(300, 400), "radius_m": 150}],
    }
    return m


def tug():
    m = dict(COMMON)
    m["name"] = "river-reflection"
    m["seed"] = 7
    m["machines"] = {"patrol": PATROL}
    m["uavs"] = [
        uav(
            "uav-orange",
            "orange",
            "patrol",
            (0, 0),
            [(200, 0), (200, 40), (0, 40)],
            timers={"surveillance_ms": 45000},
        ),
    ]
    m["scene"] = {
        "targets": [],
        "zones": [{"kind": "reflection", "center": geo(100, 20), "radius_m": 400, "period_ms": 3000, "descend_m": 4}],
    }
    return m


def trust():
    m = dict(COMMON)
    m["name"] = "misty-sweep"
    m["seed"] = 11
    m["machines"] = {"sweep": SWEEP}
    stops = [(100 * (i + 1), 200) for i in range(8)]
    m["uavs"] = [
        uav(
            "uav-blue",
            "blue",
            "sweep",
            (0, 0),
            [(0, 200)] + stops,
            timers={"tracking_ms": 2000, "delivery_ms": 1000},
            trust={"initial": 0.5, "alpha": 0.2},
        ),
    ]
    m["scene"] = {
        "targets": [
            {"id": f"victim-{i + 1}", "class": "person", "victim": True, "position": geo(x, y)}
            for i, (x, y) in enumerate(stops)
        ],
        "zones": [{"kind": "mist", "center": geo(450, 200), "radius_m": 600}],
    }
    return m


HUMANS = {
    "confirm": {"availability": 1.0, "response_delay": {"fixed": 2000}, "decision_policy": "always_confirm"},
    "reject": {"availability": 1.0, "response_delay": {"fixed": 2000}, "decision_policy": "always_reject"},
    "absent": {"availability": 0.0, "decision_policy": "always_confirm"},
    "slow": {"availability": 1.0, "response_delay": {"fixed": 9000}, "decision_policy": "always_confirm"},
    "fast": {"availability": 1.0, "response_delay": {"fixed": 1000}, "decision_policy": "always_confirm"},
    "varied": {"availability": 0.8, "response_delay": {"uniform": [500, 4000]}, "decision_policy": "always_confirm"},
    "oracle": {
        "availability": 1.0,
        "response_delay": {"fixed": 1500},
        "decision_policy": {"ground_truth_oracle": {"accuracy": 1.0}},
    },
    "tug": {
        "availability": 1.0,
        "response_delay": {"fixed": 1000},
        "decision_policy": "always_confirm",
        "directives": [
            {"at_ms": 14500, "kind": "altitude_change", "target": "uav-orange", "delta_m": 4},
            {"at_ms": 17500, "kind": "altitude_change", "target": "uav-orange", "delta_m": 4},
            {"at_ms": 20500, "kind": "altitude_change", "target": "uav-orange", "delta_m": 4},
            {"at_ms": 30000, "kind": "restore_autonomy", "target": "uav-orange"},
        ],
    },
}


def write(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=2) + "\n")


def main():
    write("reference.json", reference())
    write("reflection.json", tug())
    write("sweep.json", trust())
    for name, doc in HUMANS.items():
        write(f"humans/{name}.json", doc)


if __name__ == "__main__":
    main()
