// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/common/error.hpp"
#include "hmt/msg/json.hpp"
#include "hmt/msg/messages.hpp"

#include <doctest.h>

#include <set>

using namespace hmt;
using namespace hmt::msg;

namespace {

DetectionEvent sample_detection()
{
    DetectionEvent d;
    d.uav = "uav-blue";
    d.object_class = "person";
    d.confidence = 0.91;
    d.reliability = 0.62;
    d.location = {41.7012345, -86.2398765};
    d.frame = 42;
    d.target_id = "victim-river";
    d.at = 58300;
    return d;
}

std::vector<Payload> one_of_each()
{
    std::vector<Payload> v;
    v.emplace_back(Telemetry{"uav-blue", "searching", {41.7, -86.24}, 22.5, 87.25, Health::degraded, 0.6, 100});
    v.emplace_back(StateChange{"uav-blue", "searching", "help_requested", "victim_detected", 58300});
    v.emplace_back(DetectionReport{sample_detection(), DetectionDecision::request_help, false});
    auto adapt = AdaptationEvent::human("uav-red", "red", Trigger::internal, "battery at 30%", "a decision",
                                        "keep charge", std::string("sustained power draw"), 150000);
    adapt.control = ControlAction{"altitude", Direction::numeric(-1), false};
    v.emplace_back(adapt);
    DirectiveCommand dc;
    dc.id = "c1";
    dc.version = 7;
    dc.directive = {DirectiveKind::goal_update, "uav-blue", {}, 10};
    dc.directive.params.route = {{41.7, -86.24}, {41.71, -86.25}};
    v.emplace_back(dc);
    v.emplace_back(ResponseCommand{"c2", 8, "s0001", SessionDecision::reject});
    RoutedDirective rd;
    rd.command_id = "c3";
    rd.directive = {DirectiveKind::altitude_change, "uav-blue", {}, 12};
    rd.directive.params.delta_m = 4.0;
    v.emplace_back(rd);
    v.emplace_back(DirectiveAck{"uav-blue", "c3", DirectiveKind::altitude_change, false, "why", 13});
    CoordMessage cm;
    cm.session = "s0001";
    cm.uav = "uav-blue";
    cm.kind = CoordKind::no_response;
    cm.detection = sample_detection();
    cm.waiting_period = 10000;
    cm.opened_at = 58330;
    cm.closed_at = 68330;
    cm.note = "human failure to respond";
    v.emplace_back(cm);
    v.emplace_back(AutonomyMessage{"uav-orange", "altitude", true, "tug-of-war", Actor::machine, 17540});
    TriageUpdate tu;
    tu.view = "map";
    tu.displayed = {{Alert{1, "help_request", "uav-blue", "m", 5, 60005, true}, true, 0}};
    tu.suppressed = {4, 2};
    tu.at = 9;
    v.emplace_back(tu);
    v.emplace_back(RuleChange{"adaptation", "map", RuleEntry::with_priority(3), RuleEntry::with_priority(4),
                              RuleOrigin::machine, 70000});
    v.emplace_back(ExplanationMessage{"uav-blue", "UAV-Blue ...", true, 1, 2});
    v.emplace_back(CommandResult{"c1", false, true, "stale", 99});
    return v;
}

} // namespace

TEST_SUITE("messages")
{
    TEST_CASE("every payload kind survives a JSON round trip")
    {
        const auto all = one_of_each();
        REQUIRE(all.size() == std::variant_size_v<Payload>);
        for (const auto& p : all) {
            CAPTURE(payload_kind(p));
            const auto j = payload_to_json(p);
            CHECK(j.at("type") == payload_kind(p));
            const auto back = payload_from_json(nlohmann::json::parse(j.dump()));
            CHECK(back == p);
        }
    }

    TEST_CASE("payload tags are distinct")
    {
        std::set<std::string> tags;
        for (const auto& p : one_of_each()) {
            tags.insert(std::string(payload_kind(p)));
        }
        CHECK(tags.size() == std::variant_size_v<Payload>);
    }

    TEST_CASE("unknown or malformed payloads are protocol errors")
    {
        CHECK_THROWS_AS(payload_from_json(nlohmann::json{{"type", "gossip"}}), ProtocolError);
        CHECK_THROWS_AS(payload_from_json(nlohmann::json{{"uav", "x"}}), ProtocolError);
        CHECK_THROWS_AS(payload_from_json(nlohmann::json{{"type", "telemetry"}, {"uav", 3}}), ProtocolError);
    }

    TEST_CASE("directive parameters are fixed per kind")
    {
        HumanDirective d{DirectiveKind::altitude_change, "uav-blue", {}, 0};
        CHECK_THROWS_AS(validate_params(d), ProtocolError);
        d.params.delta_m = 4.0;
        CHECK_NOTHROW(validate_params(d));
        d.params.route = {{1.0, 2.0}};
        CHECK_THROWS_AS(validate_params(d), ProtocolError);

        HumanDirective g{DirectiveKind::goal_update, "uav-blue", {}, 0};
        CHECK_THROWS_AS(validate_params(g), ProtocolError);
        g.params.route = {{1.0, 2.0}};
        CHECK_NOTHROW(validate_params(g));

        HumanDirective c{DirectiveKind::confirm_detection, "uav-blue", {}, 0};
        CHECK_THROWS_AS(validate_params(c), ProtocolError);
        c.params.session = "s0001";
        CHECK_NOTHROW(validate_params(c));

        HumanDirective m{DirectiveKind::manual_override, "", {}, 0};
        CHECK_THROWS_AS(validate_params(m), ProtocolError);
        m.target = "uav-blue";
        m.params.altitude_m = 40.0;
        CHECK_NOTHROW(validate_params(m));
        HumanDirective r{DirectiveKind::return_to_launch, "uav-blue", {}, 0};
        r.params.altitude_m = 40.0;
        CHECK_THROWS_AS(validate_params(r), ProtocolError);
    }

    TEST_CASE("directive kind names round trip")
    {
        for (auto k : kAllDirectiveKinds) {
            CHECK(directive_kind_from(to_string(k)) == k);
        }
        CHECK_FALSE(directive_kind_from("launch_missiles").has_value());
    }

    TEST_CASE("opposing directions")
    {
        CHECK(opposing(Direction::numeric(-1), Direction::numeric(1)));
        CHECK_FALSE(opposing(Direction::numeric(1), Direction::numeric(1)));
        CHECK_FALSE(opposing(Direction::numeric(0), Direction::numeric(0)));
        CHECK(opposing(Direction::categorical("rtl", true), Direction::categorical("rtl", false)));
        CHECK_FALSE(opposing(Direction::categorical("rtl", true), Direction::categorical("hold", false)));
        CHECK_FALSE(opposing(Direction::categorical("rtl", true), Direction::numeric(-1)));
    }

    TEST_CASE("adaptation factories enforce the snippets of their class")
    {
        CHECK_THROWS_AS(AdaptationEvent::human("u", "c", Trigger::internal, "e", "d", "r", std::nullopt, 0),
                        StateError);
        const auto ok = AdaptationEvent::human("u", "c", Trigger::external, "e", "d", "r", std::nullopt, 0);
        CHECK(ok.missing_snippets().empty());
        auto broken = AdaptationEvent::machine("u", "c", Trigger::external, "e", "", "r", 0);
        CHECK(broken.missing_snippets() == std::vector<std::string>{"Action - internal changes"});
    }
}
