// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/fleet/fleet_model.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace hmt;
using namespace hmt::fleet;

namespace {

agent::MachineSpec patrol()
{
    return {"standby",
            {"standby", "takeoff", "surveillance", "rtl", "land"},
            {{"standby", "launch", "takeoff"},
             {"takeoff", "altitude_reached", "surveillance"},
             {"surveillance", "surveillance_complete", "rtl"},
             {"rtl", "home_reached", "land"}}};
}

agent::MachineSpec sar()
{
    return {"standby",
            {"standby", "takeoff", "searching", "victim_detected", "tracking", "rtl", "land"},
            {{"standby", "launch", "takeoff"},
             {"takeoff", "altitude_reached", "searching"},
             {"searching", "help_requested", "victim_detected"},
             {"victim_detected", "track", "tracking"},
             {"searching", "route_complete", "rtl"},
             {"rtl", "home_reached", "land"}}};
}

bool graph_matches(const GlobalStateGraph& g, const oracle::UnionGraph& u)
{
    if (g.nodes != u.nodes || g.edges.size() != u.edges.size()) {
        return false;
    }
    for (const auto& [t, tags] : g.edges) {
        auto it = u.edges.find({t.from, t.event, t.to});
        if (it == u.edges.end() || it->second != tags.uavs || !tags.inactive.empty()) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("fleet")
{
    TEST_CASE("merge keeps one node per state name and tags shared edges with every owner")
    {
        const auto g = merge({{"uav-a", sar().states, sar().transitions},
                              {"uav-b", patrol().states, patrol().transitions}});
        CHECK(g.nodes.size() == 8);
        const auto& launch = g.edges.at({"standby", "launch", "takeoff"});
        CHECK(launch.uavs == std::set<std::string>{"uav-a", "uav-b"});
        CHECK(g.edges.at({"takeoff", "altitude_reached", "surveillance"}).uavs == std::set<std::string>{"uav-b"});
    }

    TEST_CASE("merge rejects an empty list and repeated ids")
    {
        CHECK_THROWS_AS(merge({}), StateError);
        CHECK_THROWS_AS(merge({{"a", {"x"}, {}}, {"a", {"y"}, {}}}), StateError);
    }

    TEST_CASE("property: the merged graph equals the set union of random machines")
    {
        Rng rng(2026);
        for (int round = 0; round < 300; ++round) {
            const auto n = static_cast<std::size_t>(rng.uniform_int(1, 10));
            std::vector<MemberMachine> members;
            std::vector<std::pair<std::string, agent::MachineSpec>> specs;
            FleetModel model;
            for (std::size_t i = 0; i < n; ++i) {
                const auto m = fixture::random_machine(rng, 20);
                const auto id = "uav-" + std::to_string(i);
                members.push_back({id, m.states, m.transitions});
                specs.emplace_back(id, m);
                model.register_uav(id, "c" + std::to_string(i), m, 0);
            }
            const auto expected = oracle::union_of(specs);
            CAPTURE(round);
            REQUIRE(graph_matches(merge(members), expected));
            const auto snap = model.snapshot();
            REQUIRE(graph_matches(snap->graph, expected));
            REQUIRE(snap->placement.tokens.size() == n);
            for (const auto& [id, m] : specs) {
                REQUIRE(snap->placement.tokens.at(id).node == m.initial);
            }
        }
    }

    TEST_CASE("tokens follow reports, one per active UAV")
    {
        FleetModel m;
        m.register_uav("uav-blue", "blue", sar(), 0);
        m.register_uav("uav-purple", "purple", patrol(), 0);
        m.update_token("uav-blue", "takeoff", 100);
        m.update_token("uav-purple", "takeoff", 200);
        m.update_token("uav-purple", "surveillance", 300);
        auto s = m.snapshot();
        CHECK(s->placement.tokens.size() == 2);
        CHECK(s->placement.tokens.at("uav-blue") == Token{"takeoff", "blue"});
        CHECK(s->placement.tokens.at("uav-purple") == Token{"surveillance", "purple"});
        CHECK(s->placement.as_of == 300);

        m.deregister("uav-purple", 400);
        s = m.snapshot();
        CHECK(s->placement.tokens.size() == 1);
        const auto& tags = s->graph.edges.at({"takeoff", "altitude_reached", "surveillance"});
        CHECK(tags.uavs.empty());
        CHECK(tags.inactive == std::set<std::string>{"uav-purple"});
        CHECK(s->graph.nodes.count("surveillance") == 1);
    }

    TEST_CASE("a repeated report of the same state changes nothing")
    {
        FleetModel m;
        m.register_uav("uav-blue", "blue", sar(), 0);
        const auto v = m.snapshot()->version;
        m.update_token("uav-blue", "standby", 50);
        CHECK(m.snapshot()->version == v);
        CHECK(m.history("uav-blue").size() == 1);
    }

    TEST_CASE("unknown UAVs and states are model drift")
    {
        FleetModel m;
        m.register_uav("uav-blue", "blue", sar(), 0);
        CHECK_THROWS_AS(m.update_token("uav-red", "takeoff", 1), ModelDriftError);
        CHECK_THROWS_AS(m.update_token("uav-blue", "hovering", 1), ModelDriftError);
        CHECK_THROWS_AS(m.deregister("uav-red", 1), ModelDriftError);
        CHECK_THROWS_AS((void)m.history("uav-red"), ModelDriftError);
        CHECK_THROWS_AS(m.register_uav("uav-blue", "blue", sar(), 1), StateError);
        CHECK_THROWS_AS(m.register_uav("uav-x", "x", agent::MachineSpec{"nowhere", {"a"}, {}}, 1), ModelDriftError);
        CHECK(m.current("uav-blue") == "standby");
    }

    TEST_CASE("history records visits and clips them to a window")
    {
        FleetModel m;
        m.register_uav("uav-blue", "blue", sar(), 0);
        m.update_token("uav-blue", "takeoff", 1000);
        m.update_token("uav-blue", "searching", 11000);
        const auto all = m.history("uav-blue");
        REQUIRE(all.size() == 3);
        CHECK(all[0] == Visit{"standby", 0, 1000});
        CHECK(all[1] == Visit{"takeoff", 1000, 11000});
        CHECK(all[2] == Visit{"searching", 11000, std::nullopt});

        const auto window = m.history("uav-blue", 5000, 20000);
        REQUIRE(window.size() == 2);
        CHECK(window[0] == Visit{"takeoff", 5000, 11000});
        CHECK(window[1] == Visit{"searching", 11000, 20000});
        CHECK(m.history("uav-blue", 0, 1000).size() == 1);
    }

    TEST_CASE("snapshots are immutable values")
    {
        FleetModel m;
        m.register_uav("uav-blue", "blue", sar(), 0);
        const auto before = m.snapshot();
        m.update_token("uav-blue", "takeoff", 100);
        CHECK(before->placement.tokens.at("uav-blue").node == "standby");
        CHECK(m.snapshot()->version == before->version + 1);
    }
}
