// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/policy.hpp"

namespace hmt::agent {

msg::DetectionDecision decide_detection(const msg::DetectionEvent& d, const ThresholdPolicy& policy,
                                        double trust_score, bool waive_trust_floor)
{
    if (d.confidence < policy.confidence_act) {
        return msg::DetectionDecision::continue_search;
    }
    const bool trusted = waive_trust_floor || trust_score >= policy.trust_floor;
    if (d.reliability >= policy.reliability_act && trusted) {
        return msg::DetectionDecision::act_autonomously;
    }
    return msg::DetectionDecision::request_help;
}

} // namespace hmt::agent
