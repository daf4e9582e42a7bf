// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/sessions.hpp"

#include "hmt/common/rng.hpp"

#include <doctest.h>

using namespace hmt;
using namespace hmt::coord;

namespace {

msg::DetectionEvent detection(const std::string& uav, std::uint64_t frame)
{
    msg::DetectionEvent d;
    d.uav = uav;
    d.frame = frame;
    d.object_class = "person";
    return d;
}

} // namespace

TEST_SUITE("sessions")
{
    TEST_CASE("sessions get sequential ids and start waiting")
    {
        SessionStore s;
        const auto& a = s.open(detection("uav-blue", 1), 10000, 500);
        CHECK(a.id == "s0001");
        CHECK(a.state == SessionState::help_requested);
        CHECK(s.open(detection("uav-red", 1), 10000, 600).id == "s0002");
        CHECK(s.open_for("uav-blue") == "s0001");
        CHECK_FALSE(s.open_for("uav-green"));
    }

    TEST_CASE("one session per detection")
    {
        SessionStore s;
        s.open(detection("uav-blue", 1), 10000, 0);
        CHECK_THROWS_AS(s.open(detection("uav-blue", 1), 10000, 5), StateError);
        CHECK_THROWS_AS(s.open(detection("uav-blue", 2), 0, 5), ValidationError);
    }

    TEST_CASE("an answer one tick before the deadline resolves")
    {
        SessionStore s;
        s.open(detection("uav-blue", 1), 10000, 1000);
        CHECK(s.tick(10990).empty());
        const auto& r = s.resolve("s0001", msg::SessionDecision::confirm, 10990);
        CHECK(r.state == SessionState::confirmed);
        CHECK(r.closed_at == 10990);
        CHECK(s.tick(20000).empty());
    }

    TEST_CASE("the window closes exactly at opened_at + waiting_period")
    {
        SessionStore s;
        s.open(detection("uav-blue", 1), 10000, 1000);
        CHECK(s.tick(10999).empty());
        const auto closed = s.tick(11000);
        REQUIRE(closed.size() == 1);
        CHECK(closed[0].state == SessionState::timed_out);
        CHECK(closed[0].closed_at == 11000);
        CHECK_THROWS_AS(s.resolve("s0001", msg::SessionDecision::confirm, 11000), StaleActionError);
    }

    TEST_CASE("an answer on the deadline wins when it is handled before the tick")
    {
        SessionStore s;
        s.open(detection("uav-blue", 1), 10000, 1000);
        CHECK(s.resolve("s0001", msg::SessionDecision::reject, 11000).state == SessionState::refuted);
        CHECK(s.tick(11000).empty());
    }

    TEST_CASE("late, repeated and unknown answers")
    {
        SessionStore s;
        s.open(detection("uav-blue", 1), 10000, 0);
        CHECK_THROWS_AS(s.resolve("s0001", msg::SessionDecision::confirm, 10001), StaleActionError);
        s.resolve("s0001", msg::SessionDecision::confirm, 10000);
        try {
            s.resolve("s0001", msg::SessionDecision::reject, 10000);
            FAIL("expected StaleActionError");
        } catch (const StaleActionError& e) {
            CHECK(e.session() == "s0001");
        }
        CHECK_THROWS_AS(s.resolve("s0404", msg::SessionDecision::confirm, 0), ProtocolError);
    }

    TEST_CASE("lifecycle messages mirror the session")
    {
        SessionStore s;
        s.open(detection("uav-blue", 7), 10000, 100);
        s.tick(10100);
        const auto m = SessionStore::message(*s.find("s0001"), "human failure to respond");
        CHECK(m.kind == msg::CoordKind::no_response);
        CHECK(m.note == "human failure to respond");
        CHECK(m.detection.frame == 7);
        CHECK(m.opened_at == 100);
        CHECK(m.closed_at == 10100);
    }

    TEST_CASE("property: every session ends in exactly one terminal state")
    {
        Rng rng(99);
        SessionStore s;
        std::map<std::string, int> terminal_events;
        SimTime now = 0;
        std::uint64_t frame = 0;
        for (int i = 0; i < 5000; ++i) {
            now += rng.uniform_int(1, 400);
            if (rng.chance(0.2)) {
                s.open(detection("uav-" + std::to_string(rng.uniform_int(0, 4)), ++frame), rng.uniform_int(500, 5000),
                       now);
            }
            if (!s.sessions().empty() && rng.chance(0.3)) {
                auto it = s.sessions().begin();
                std::advance(it, rng.uniform_int(0, static_cast<std::int64_t>(s.sessions().size()) - 1));
                const auto id = it->first;
                try {
                    s.resolve(id, rng.chance(0.5) ? msg::SessionDecision::confirm : msg::SessionDecision::reject, now);
                    ++terminal_events[id];
                } catch (const StaleActionError&) {
                }
            }
            for (const auto& closed : s.tick(now)) {
                ++terminal_events[closed.id];
            }
        }
        s.tick(now + 10000);
        for (const auto& [id, session] : s.sessions()) {
            CAPTURE(id);
            CHECK(session.terminal());
            REQUIRE(session.closed_at);
            CHECK(*session.closed_at - session.opened_at <= session.waiting_period);
            if (session.state != SessionState::timed_out) {
                CHECK(terminal_events[id] == 1);
            }
        }
    }
}
