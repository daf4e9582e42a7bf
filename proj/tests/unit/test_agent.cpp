// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/uav_agent.hpp"
#include "hmt/bus/topic.hpp"
#include "hmt/gcs/mission_spec.hpp"

#include "fixtures.hpp"

#include <doctest.h>

using namespace hmt;
using namespace hmt::agent;

namespace {

std::shared_ptr<Scene> empty_scene()
{
    auto s = std::make_shared<Scene>();
    s->frame = LocalFrame({41.7, -86.24});
    return s;
}

MachineSpec sar() { return gcs::parse_mission(fixture::minimal_mission()).uavs.at(0).machine; }

struct Rig
{
    explicit Rig(UavConfig cfg, std::shared_ptr<Scene> s = nullptr, std::uint64_t seed = 1)
        : scene(s ? std::move(s) : empty_scene()),
          uav(std::move(cfg), scene, seed)
    {
    }

    void step()
    {
        auto out = uav.step(now);
        all.insert(all.end(), out.begin(), out.end());
        last = std::move(out);
        now += 100;
    }

    template <typename Pred>
    bool run_until(Pred pred, SimTime limit)
    {
        while (now <= limit) {
            step();
            if (pred()) {
                return true;
            }
        }
        return false;
    }

    template <typename T>
    std::vector<T> sent() const
    {
        std::vector<T> v;
        for (const auto& o : all) {
            if (const auto* p = std::get_if<T>(&o.payload)) {
                v.push_back(*p);
            }
        }
        return v;
    }

    void deliver(msg::Payload p, std::string topic = "gcs/coord/s0001")
    {
        bus::Envelope e;
        e.topic = std::move(topic);
        e.sender = "gcs";
        e.payload = std::move(p);
        uav.receive(e);
    }

    std::shared_ptr<const Scene> scene;
    UavAgent uav;
    SimTime now = 0;
    std::vector<Outbound> all;
    std::vector<Outbound> last;
};

UavConfig base_config()
{
    UavConfig c;
    c.id = "uav-blue";
    c.color = "blue";
    c.machine = sar();
    c.home = {0, 0};
    c.route = {{0, 400}};
    c.launch_at = 0;
    return c;
}

/// A UAV flying north into a misty victim at (0, 200).
std::shared_ptr<Scene> misty_victim()
{
    auto s = empty_scene();
    s->targets.push_back({"v1", "person", true, {0, 200}, 0.0});
    s->zones.push_back({ZoneKind::mist, {0, 200}, 100});
    return s;
}

msg::CoordMessage coord_message(msg::CoordKind kind, const msg::DetectionEvent& d)
{
    msg::CoordMessage m;
    m.session = "s0001";
    m.uav = d.uav;
    m.kind = kind;
    m.detection = d;
    m.waiting_period = 10000;
    return m;
}

} // namespace

TEST_SUITE("agent")
{
    TEST_CASE("launch, climb at the configured rate, then search")
    {
        Rig r(base_config());
        CHECK(r.run_until([&] { return r.uav.machine().current() == "searching"; }, 20000));
        // 30 m at 3 m/s, give or take one step of rounding.
        CHECK(r.now - 100 >= 10000);
        CHECK(r.now - 100 <= 10100);
        const auto states = r.sent<msg::StateChange>();
        REQUIRE(states.size() == 2);
        CHECK(states[0].event == "launch");
        CHECK(states[1].event == "altitude_reached");
    }

    TEST_CASE("telemetry goes out on every step, last")
    {
        Rig r(base_config());
        for (int i = 0; i < 20; ++i) {
            r.step();
            REQUIRE_FALSE(r.last.empty());
            CHECK(r.last.back().topic == bus::topics::uav_telemetry("uav-blue"));
            CHECK(std::holds_alternative<msg::Telemetry>(r.last.back().payload));
        }
    }

    TEST_CASE("battery failsafe fires at the exact drain crossing")
    {
        auto c = base_config();
        c.battery.start_pct = 45.0;
        c.route = {{0, 5000}};
        Rig r(c);
        REQUIRE(r.run_until([&] { return r.uav.machine().current() == "rtl"; }, 400000));
        const auto states = r.sent<msg::StateChange>();
        CHECK(states.back().event == "battery_low");
        // 25 % at 0.1 %/s of powered flight.
        CHECK(states.back().at == 250000);
        CHECK(r.uav.health() == msg::Health::failsafe);
        const auto adaptations = r.sent<msg::AdaptationEvent>();
        REQUIRE(adaptations.size() == 2);
        CHECK(adaptations[0].initiator == msg::Initiator::human);
        CHECK(adaptations[0].trigger == msg::Trigger::internal);
        CHECK(adaptations[0].at == 150000);
        CHECK(adaptations[1].control->failsafe);
    }

    TEST_CASE("entering mist lowers the altitude setpoint and explains why")
    {
        auto scene = misty_victim();
        scene->targets.clear();
        Rig r(base_config(), scene);
        REQUIRE(r.run_until([&] { return !r.sent<msg::AdaptationEvent>().empty(); }, 60000));
        const auto e = r.sent<msg::AdaptationEvent>().front();
        CHECK(e.event_snippet == "misty weather conditions");
        CHECK(e.action_snippet == "reduced altitude by 8 m");
        CHECK(e.rationale_snippet == "limited visibility");
        CHECK(r.uav.altitude_setpoint() == doctest::Approx(22.0));
    }

    TEST_CASE("a curtailed altitude dimension keeps the operator's altitude in mist")
    {
        auto scene = misty_victim();
        scene->targets.clear();
        Rig r(base_config(), scene);
        r.deliver(msg::AutonomyMessage{"uav-blue", "altitude", true, "tug-of-war", msg::Actor::machine, 0},
                  "gcs/autonomy/uav-blue");
        REQUIRE(r.run_until([&] { return !r.sent<msg::AdaptationEvent>().empty(); }, 60000));
        const auto e = r.sent<msg::AdaptationEvent>().front();
        CHECK(e.action_snippet == "kept the operator-set altitude");
        CHECK_FALSE(e.control.has_value());
        CHECK(r.uav.altitude_setpoint() == doctest::Approx(30.0));
    }

    TEST_CASE("reflection zones trigger a descent every period unless curtailed")
    {
        auto scene = empty_scene();
        scene->zones.push_back({ZoneKind::reflection, {0, 0}, 1000, 3000, 4.0});
        Rig r(base_config(), scene);
        r.run_until([] { return false; }, 19900);
        auto descents = r.sent<msg::AdaptationEvent>();
        // In flight from 10 000: 10 000, 13 000, 16 000, 19 000.
        REQUIRE(descents.size() == 4);
        CHECK(descents[1].at - descents[0].at == 3000);
        CHECK(descents[0].control->direction.sign == -1);

        r.deliver(msg::AutonomyMessage{"uav-blue", "altitude", true, "tug-of-war", msg::Actor::machine, 0},
                  "gcs/autonomy/uav-blue");
        r.run_until([] { return false; }, 40000);
        CHECK(r.sent<msg::AdaptationEvent>().size() == 4);
    }

    TEST_CASE("low-reliability sighting asks for help, then tracks on confirmation")
    {
        Rig r(base_config(), misty_victim(), 3);
        REQUIRE(r.run_until([&] { return r.uav.awaiting_help(); }, 60000));
        const auto reports = r.sent<msg::DetectionReport>();
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].decision == msg::DetectionDecision::request_help);
        CHECK(r.uav.machine().current() == "victim_detected");
        const auto help = r.sent<msg::AdaptationEvent>().back();
        CHECK(help.initiator == msg::Initiator::human);
        CHECK(help.desired_changes_snippet == "human confirmation of the sighting");

        CHECK_FALSE(r.uav.affordances().count(msg::DirectiveKind::confirm_detection));
        r.deliver(coord_message(msg::CoordKind::help_requested, reports[0].detection));
        r.step();
        CHECK(r.uav.affordances().count(msg::DirectiveKind::confirm_detection));
        const double before = r.uav.trust().score;
        r.deliver(coord_message(msg::CoordKind::confirmation, reports[0].detection));
        r.step();
        CHECK(r.uav.machine().current() == "tracking");
        CHECK(r.uav.trust().score > before);
        CHECK_FALSE(r.uav.awaiting_help());
    }

    TEST_CASE("refutation resumes the search and lowers trust")
    {
        Rig r(base_config(), misty_victim(), 3);
        REQUIRE(r.run_until([&] { return r.uav.awaiting_help(); }, 60000));
        const auto d = r.sent<msg::DetectionReport>().at(0).detection;
        r.deliver(coord_message(msg::CoordKind::refutation, d));
        r.step();
        CHECK(r.uav.machine().current() == "searching");
        CHECK(r.uav.trust().score < 0.5);
    }

    TEST_CASE("no response: the UAV re-decides alone and reports it")
    {
        Rig r(base_config(), misty_victim(), 3);
        REQUIRE(r.run_until([&] { return r.uav.awaiting_help(); }, 60000));
        const auto d = r.sent<msg::DetectionReport>().at(0).detection;
        r.deliver(coord_message(msg::CoordKind::no_response, d));
        r.step();
        const auto reports = r.sent<msg::DetectionReport>();
        REQUIRE(reports.size() == 2);
        CHECK(reports[1].reverted);
        // Misty reliability stays below the gate, so the UAV moves on.
        CHECK(reports[1].decision == msg::DetectionDecision::continue_search);
        CHECK(r.uav.machine().current() == "searching");
        CHECK(r.sent<msg::AdaptationEvent>().back().event_snippet == "no operator response within the waiting period");
        CHECK(r.uav.trust().score == 0.5);
    }

    TEST_CASE("the same target is never reported twice")
    {
        Rig r(base_config(), misty_victim(), 3);
        REQUIRE(r.run_until([&] { return r.uav.awaiting_help(); }, 60000));
        const auto d = r.sent<msg::DetectionReport>().at(0).detection;
        r.deliver(coord_message(msg::CoordKind::refutation, d));
        r.run_until([] { return false; }, 90000);
        CHECK(r.sent<msg::DetectionReport>().size() == 1);
    }

    TEST_CASE("directives are gated by state, sessions and curtailment")
    {
        Rig r(base_config());
        using K = msg::DirectiveKind;
        auto directive = [](K k) { return msg::HumanDirective{k, "uav-blue", {}, 0}; };

        auto confirm = directive(K::confirm_detection);
        confirm.params.session = "s0009";
        CHECK(r.uav.apply_directive(confirm, false, 0).reason.find("needs an open help session") !=
              std::string::npos);
        CHECK(r.uav.apply_directive(directive(K::restore_autonomy), false, 0).reason == "autonomy is not curtailed");
        CHECK(r.uav.apply_directive(directive(K::video_request), false, 0).reason ==
              "camera is off in state 'standby'");

        r.run_until([&] { return r.uav.machine().current() == "searching"; }, 20000);
        auto up = directive(K::altitude_change);
        up.params.delta_m = 6.0;
        CHECK(r.uav.apply_directive(up, false, r.now).ack);
        CHECK(r.uav.altitude_setpoint() == doctest::Approx(36.0));
        CHECK(r.uav.apply_directive(directive(K::return_to_launch), false, r.now).ack);
        CHECK(r.uav.machine().current() == "rtl");
        CHECK(r.uav.apply_directive(directive(K::video_request), false, r.now).reason ==
              "camera is off in state 'rtl'");
    }

    TEST_CASE("an RC manual override bypasses the gate except on the ground")
    {
        Rig r(base_config());
        msg::HumanDirective hold{msg::DirectiveKind::manual_override, "uav-blue", {}, 0};
        hold.params.altitude_m = 50.0;
        r.run_until([&] { return r.uav.machine().current() == "searching"; }, 20000);
        CHECK(r.uav.apply_directive(hold, true, r.now).ack);
        CHECK(r.uav.manual_hold());
        const auto p = r.uav.position();
        r.run_until([] { return false; }, r.now + 2000);
        CHECK(r.uav.position() == p);
        CHECK(r.uav.altitude_setpoint() == doctest::Approx(50.0));
    }

    TEST_CASE("every condition yields an adaptation with all snippets its template needs")
    {
        Rig r(base_config());
        msg::DetectionEvent d;
        d.uav = "uav-blue";
        for (int k = 0; k <= static_cast<int>(Condition::Kind::human_goal); ++k) {
            for (bool acted : {false, true}) {
                Condition c{static_cast<Condition::Kind>(k), 8.0, acted, d};
                const auto e = r.uav.self_adapt(c, 1);
                CAPTURE(k);
                CHECK(e.missing_snippets().empty());
                CHECK(e.uav == "uav-blue");
                CHECK(e.color == "blue");
            }
        }
    }

    TEST_CASE("standby UAVs without a launch time are finished from the start")
    {
        auto c = base_config();
        c.launch_at.reset();
        Rig r(c);
        r.step();
        CHECK(r.uav.finished());
        CHECK(r.uav.machine().current() == "standby");
    }

    TEST_CASE("a full sortie ends on the ground at home")
    {
        Rig r(base_config());
        REQUIRE(r.run_until([&] { return r.uav.finished(); }, 200000));
        CHECK(r.uav.machine().current() == "land");
        CHECK(r.uav.position().x == doctest::Approx(0.0));
        CHECK(r.uav.position().y == doctest::Approx(0.0));
    }
}
