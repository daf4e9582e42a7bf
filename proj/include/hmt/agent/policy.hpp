// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/msg/messages.hpp"

namespace hmt::agent {

/// Gates for acting on a detection without the human. Confidence,
/// reliability and trust are independent gates.
struct ThresholdPolicy
{
    double confidence_act = 0.8;
    double reliability_act = 0.8;
    double trust_floor = 0.5;

    friend bool operator==(const ThresholdPolicy&, const ThresholdPolicy&) = default;
};

/// Below the confidence gate the object is ignored. Above it, the UAV acts
/// alone only if reliability and trust also pass; otherwise it asks.
/// `waive_trust_floor` is used once responsibility reverts after a timeout.
msg::DetectionDecision decide_detection(const msg::DetectionEvent& d, const ThresholdPolicy& policy,
                                        double trust_score, bool waive_trust_floor = false);

} // namespace hmt::agent
