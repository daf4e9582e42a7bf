// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/autonomy.hpp"

#include <doctest.h>

using namespace hmt;
using namespace hmt::coord;

TEST_SUITE("autonomy")
{
    TEST_CASE("curtailment is per dimension and idempotent")
    {
        AutonomyRegistry r;
        const auto m = r.curtail("uav-orange", "altitude", "tug-of-war", msg::Actor::machine, 17540);
        REQUIRE(m);
        CHECK(m->curtailed);
        CHECK(m->reason == "tug-of-war");
        CHECK_FALSE(r.curtail("uav-orange", "altitude", "again", msg::Actor::machine, 18000));
        CHECK(r.curtailed("uav-orange", "altitude"));
        CHECK_FALSE(r.curtailed("uav-orange", "mode"));
        CHECK(r.curtailed("uav-orange"));
        CHECK_FALSE(r.curtailed("uav-blue"));
        CHECK(r.status("uav-orange").at("altitude") == Curtailment{"tug-of-war", 17540});
    }

    TEST_CASE("only the human restores")
    {
        AutonomyRegistry r;
        r.curtail("uav-orange", "altitude", "tug-of-war", msg::Actor::machine, 1);
        r.curtail("uav-orange", "mode", "manual override", msg::Actor::human, 2);
        CHECK_THROWS_AS(r.restore("uav-orange", msg::Actor::machine, 3), StateError);
        CHECK(r.curtailed("uav-orange"));
        const auto restored = r.restore("uav-orange", msg::Actor::human, 30000);
        REQUIRE(restored.size() == 2);
        for (const auto& m : restored) {
            CHECK_FALSE(m.curtailed);
            CHECK(m.actor == msg::Actor::human);
        }
        CHECK_FALSE(r.curtailed("uav-orange"));
        CHECK(r.restore("uav-orange", msg::Actor::human, 30001).empty());
    }
}
