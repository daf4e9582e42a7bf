// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/agent/trust.hpp"

#include "hmt/common/error.hpp"

namespace hmt::agent {

CalibratedTrust CalibratedTrust::make(std::string capability, double initial, double alpha)
{
    if (!(initial >= 0.0 && initial <= 1.0)) {
        throw ValidationError({"trust.initial: must be in [0, 1]"});
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ValidationError({"trust.alpha: must be in (0, 1]"});
    }
    return {std::move(capability), initial, alpha, initial, {}};
}

CalibratedTrust CalibratedTrust::updated(Agreement outcome) const
{
    CalibratedTrust next = *this;
    const double target = outcome == Agreement::confirmed ? 1.0 : 0.0;
    next.score = (1.0 - alpha) * score + alpha * target;
    next.history.push_back(outcome);
    return next;
}

double CalibratedTrust::fold(double initial, double alpha, std::span<const Agreement> history)
{
    double s = initial;
    for (auto a : history) {
        s = (1.0 - alpha) * s + alpha * (a == Agreement::confirmed ? 1.0 : 0.0);
    }
    return s;
}

} // namespace hmt::agent
