// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/mission.hpp"

#include "hmt/bus/topic.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <sstream>
#include <thread>

using namespace hmt;
using namespace hmt::gcs;

namespace {

class Recorder : public Actor
{
public:
    [[nodiscard]] std::string name() const override { return "recorder"; }
    [[nodiscard]] std::vector<std::string> subscriptions() const override { return {"gcs/alerts/+"}; }
    void receive(const bus::Envelope& env, SimTime at) override
    {
        seen.push_back(env.topic);
        last_at = at;
    }
    std::vector<agent::Outbound> step(SimTime now, const Gcs&) override
    {
        ++steps;
        last_step = now;
        return {};
    }

    std::vector<std::string> seen;
    SimTime last_at = 0;
    SimTime last_step = 0;
    std::size_t steps = 0;
};

MissionSpec minimal() { return parse_mission(fixture::minimal_mission()); }

} // namespace

TEST_SUITE("mission")
{
    TEST_CASE("a lockstep mission runs from idle to completed and closes its log")
    {
        std::ostringstream log;
        Mission m(minimal(), {bus::ClockMode::lockstep, std::nullopt, &log});
        CHECK(m.lifecycle() == Lifecycle::idle);
        m.step();
        CHECK(m.now() == 0);
        CHECK(m.run() == Lifecycle::completed);
        CHECK(m.agent("uav-blue")->finished());
        CHECK(m.agent("uav-red") == nullptr);

        const auto parsed = fixture::parse(log.str());
        CHECK(parsed.outcome == "completed");
        REQUIRE(parsed.end_at);
        CHECK(*parsed.end_at >= m.now());
        CHECK(parsed.header.at("seed") == 1);
        // Every adaptation was explained before the log closed.
        CHECK(fixture::records_of<msg::AdaptationEvent>(parsed).size() ==
              fixture::records_of<msg::ExplanationMessage>(parsed).size());
    }

    TEST_CASE("lifecycle misuse is refused")
    {
        Mission m(minimal(), {});
        m.start();
        CHECK(m.lifecycle() == Lifecycle::running);
        CHECK_THROWS_AS(m.start(), StateError);
        CHECK_THROWS_AS(m.add_actor(std::make_unique<Recorder>()), StateError);
        std::atomic<bool> stop{true};
        CHECK_THROWS_AS(m.run_realtime(stop, {}), StateError);
    }

    TEST_CASE("the seed comes from the options first, then the mission")
    {
        CHECK(Mission(minimal(), {}).seed() == 1);
        CHECK(Mission(minimal(), {bus::ClockMode::lockstep, 77, nullptr}).seed() == 77);
        auto doc = fixture::minimal_mission();
        doc.erase("seed");
        auto spec = parse_mission(doc, bus::ClockMode::realtime);
        CHECK_THROWS_AS(Mission(spec, {}), ValidationError);
        CHECK_NOTHROW(Mission(spec, {bus::ClockMode::realtime, std::nullopt, nullptr}));
    }

    TEST_CASE("pausing freezes the clock; resuming continues")
    {
        Mission m(minimal(), {});
        m.start();
        for (int i = 0; i < 50; ++i) {
            m.step();
        }
        const auto t = m.now();
        m.pause();
        CHECK(m.lifecycle() == Lifecycle::paused);
        for (int i = 0; i < 50; ++i) {
            m.step();
        }
        CHECK(m.now() == t);
        m.resume();
        m.step();
        CHECK(m.now() == t + m.spec().bus_tick_ms);
    }

    TEST_CASE("abort sends everyone home and ends as aborted")
    {
        std::ostringstream log;
        Mission m(minimal(), {bus::ClockMode::lockstep, std::nullopt, &log});
        m.start();
        while (m.agent("uav-blue")->machine().current() != "searching") {
            m.step();
        }
        m.abort();
        CHECK(m.run() == Lifecycle::aborted);
        CHECK(fixture::parse(log.str()).outcome == "aborted");
        bool rtl = false;
        for (const auto& [at, s] : fixture::records_of<msg::StateChange>(fixture::parse(log.str()))) {
            rtl |= s.to == "rtl" && s.event == "return";
        }
        CHECK(rtl);
    }

    TEST_CASE("hitting the time cap leaves the mission incomplete")
    {
        auto doc = fixture::minimal_mission();
        doc["time_cap_ms"] = 5000;
        std::ostringstream log;
        Mission m(parse_mission(doc), {bus::ClockMode::lockstep, std::nullopt, &log});
        CHECK(m.run() == Lifecycle::incomplete);
        CHECK(m.now() >= 5000);
        CHECK(fixture::parse(log.str()).outcome == "incomplete");
    }

    TEST_CASE("actors are stepped every tick and receive their subscriptions")
    {
        Mission m(minimal(), {});
        auto rec = std::make_unique<Recorder>();
        auto* r = rec.get();
        m.add_actor(std::move(rec));
        m.start();
        for (int i = 0; i < 100; ++i) {
            m.step();
        }
        CHECK(r->steps >= 100);
        CHECK(r->last_step == m.now());
        CHECK_FALSE(r->seen.empty());
        for (const auto& t : r->seen) {
            CHECK(bus::topic_matches("gcs/alerts/+", t));
        }
    }

    TEST_CASE("submit injects console traffic under the given sender")
    {
        std::ostringstream log;
        Mission m(minimal(), {bus::ClockMode::lockstep, std::nullopt, &log});
        m.start();
        msg::DirectiveCommand c;
        c.id = "console-1";
        c.version = 999;
        c.directive = {msg::DirectiveKind::return_to_launch, "uav-blue", {}, 0};
        m.submit(std::string(bus::topics::kHumanDirective), c, kConsoleActor);
        m.run();
        const auto parsed = fixture::parse(log.str());
        bool found = false;
        for (const auto& rec : parsed.records) {
            if (const auto* r = std::get_if<msg::CommandResult>(&rec.envelope.payload)) {
                if (r->command_id == "console-1") {
                    found = true;
                    CHECK_FALSE(r->accepted);
                }
            }
        }
        CHECK(found);
        CHECK(m.gcs().counters().rejected_commands >= 1);
    }

    TEST_CASE("realtime: frames flow to the hook until stopped")
    {
        Mission m(minimal(), {bus::ClockMode::realtime, std::nullopt, nullptr});
        std::atomic<bool> stop{false};
        std::atomic<int> frames{0};
        std::uint64_t last_version = 0;
        bool increasing = true;
        RealtimeHooks hooks;
        hooks.on_frame = [&](std::shared_ptr<const Frame> f) {
            increasing = increasing && f->version > last_version;
            last_version = f->version;
            ++frames;
        };
        std::thread stopper([&] {
            std::this_thread::sleep_for(std::chrono::milliseconds(700));
            stop = true;
        });
        const auto end = m.run_realtime(stop, hooks);
        stopper.join();
        // Stopping from outside ends the run unfinished.
        CHECK(end == Lifecycle::incomplete);
        CHECK(frames >= 2);
        CHECK(increasing);
        CHECK(m.now() >= 600);
    }
}
