// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/explain/explain.hpp"

#include "hmt/common/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace hmt;
using namespace hmt::explain;
using msg::AdaptationEvent;
using msg::Trigger;

TEST_SUITE("explain")
{
    TEST_CASE("one template per trigger and initiator")
    {
        CHECK(templates().size() == 4);
        for (auto t : {Trigger::external, Trigger::internal}) {
            for (auto i : {msg::Initiator::machine, msg::Initiator::human}) {
                const auto& tmpl = select_template(t, i);
                CHECK(tmpl.trigger == t);
                CHECK(tmpl.initiator == i);
                CHECK(tmpl.slots().front() == "id/color");
            }
        }
        const auto slots = select_template(Trigger::internal, msg::Initiator::human).slots();
        CHECK(std::find(slots.begin(), slots.end(), "cause") != slots.end());
    }

    TEST_CASE("mist adaptation renders word for word")
    {
        const auto e = AdaptationEvent::machine("uav-blue", "blue", Trigger::external, "misty weather conditions",
                                                "reduced altitude by 8 m", "limited visibility", 1200);
        const auto m = render(e, 1300);
        CHECK(m.text ==
              "UAV-Blue identified misty weather conditions in the environment. Therefore, adapting reduced altitude "
              "by 8 m to limited visibility");
        CHECK(m.uav == "uav-blue");
        CHECK_FALSE(m.human_directed);
        CHECK(m.event_at == 1200);
        CHECK(m.rendered_at == 1300);
    }

    TEST_CASE("victim sighting renders word for word")
    {
        const auto e = AdaptationEvent::machine("uav-red", "red", Trigger::external, "victim detected",
                                                "switched to tracking mode", "high confidence in victim sighting", 5);
        CHECK(render(e, 5).text ==
              "UAV-Red identified victim detected in the environment. Therefore, adapting switched to tracking mode "
              "to high confidence in victim sighting");
    }

    TEST_CASE("the other two classes")
    {
        const auto internal = AdaptationEvent::machine("uav-orange", "orange", Trigger::internal,
                                                       "altitude sensor fluctuations", "descending 4 m",
                                                       "keep a safe altitude margin", 0);
        CHECK(render(internal, 0).text ==
              "UAV-Orange observed altitude sensor fluctuations. Therefore, descending 4 m to keep a safe altitude "
              "margin");
        const auto help = AdaptationEvent::human("uav-red", "red", Trigger::internal, "battery at 30%",
                                                 "an operator decision on the remaining search",
                                                 "keep enough charge to return", "sustained power draw", 0);
        const auto m = render(help, 0);
        CHECK(m.text ==
              "UAV-Red observed battery at 30% due to sustained power draw. Therefore, need an operator decision on "
              "the remaining search to keep enough charge to return");
        CHECK(m.human_directed);
    }

    TEST_CASE("the display name falls back to the id")
    {
        auto e = AdaptationEvent::machine("uav-7", "", Trigger::external, "e", "a", "r", 0);
        CHECK(display_name(e) == "Uav-7");
    }

    TEST_CASE("a missing snippet names its slot")
    {
        auto e = AdaptationEvent::human("uav-red", "red", Trigger::internal, "battery at 30%", "a decision", "r",
                                        "drain", 0);
        e.cause_snippet.reset();
        try {
            (void)render(e, 0);
            FAIL("expected RenderError");
        } catch (const RenderError& err) {
            CHECK(err.slot() == "cause");
        }
        e = AdaptationEvent::machine("uav-red", "red", Trigger::external, "e", "a", "", 0);
        CHECK_THROWS_AS((void)render(e, 0), RenderError);
        ExplanationLog log;
        CHECK_THROWS_AS(log.add(e, 0), RenderError);
        CHECK(log.size() == 0);
    }

    TEST_CASE("renders exactly when no snippet is missing")
    {
        Rng rng(11);
        auto maybe = [&](const char* s) -> std::optional<std::string> {
            if (rng.chance(0.2)) {
                return std::nullopt;
            }
            return std::string(s);
        };
        for (int i = 0; i < 500; ++i) {
            AdaptationEvent e;
            e.uav = "uav-x";
            e.color = rng.chance(0.5) ? "x" : "";
            e.trigger = rng.chance(0.5) ? Trigger::external : Trigger::internal;
            e.initiator = rng.chance(0.5) ? msg::Initiator::machine : msg::Initiator::human;
            e.event_snippet = maybe("ev").value_or("");
            e.rationale_snippet = maybe("why").value_or("");
            e.action_snippet = maybe("act");
            e.desired_changes_snippet = maybe("want");
            e.cause_snippet = maybe("because");
            bool rendered = true;
            try {
                const auto m = render(e, 0);
                CHECK(m.text.find('{') == std::string::npos);
            } catch (const RenderError&) {
                rendered = false;
            }
            CHECK(rendered == e.missing_snippets().empty());
        }
    }

    TEST_CASE("the feed filters by half-open window and UAV, stable on ties")
    {
        ExplanationLog log;
        const auto ev = [](const char* uav, const char* what) {
            return AdaptationEvent::machine(uav, "", Trigger::external, what, "a", "r", 0);
        };
        log.add(ev("uav-a", "one"), 100);
        log.add(ev("uav-b", "two"), 50);
        log.add(ev("uav-a", "three"), 100);
        log.add(ev("uav-b", "four"), 200);
        const auto all = log.feed();
        REQUIRE(all.size() == 4);
        CHECK(all[0].text.find("two") != std::string::npos);
        CHECK(all[1].text.find("one") != std::string::npos);
        CHECK(all[2].text.find("three") != std::string::npos);

        const auto window = log.feed({100, 200, std::nullopt});
        CHECK(window.size() == 2);
        const auto b = log.feed({std::nullopt, std::nullopt, std::string("uav-b")});
        CHECK(b.size() == 2);
        CHECK(log.feed({200, std::nullopt, std::string("uav-a")}).empty());
    }
}
