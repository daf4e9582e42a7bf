// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

namespace hmt::agent {

enum class Agreement { confirmed, refuted };

/// Running trust in one machine capability, moved by human confirm/refute
/// outcomes as an exponential moving average.
struct CalibratedTrust
{
    std::string capability = "person-detection";
    double initial = 0.5;
    double alpha = 0.2;
    double score = 0.5;
    std::vector<Agreement> history;

    static CalibratedTrust make(std::string capability, double initial, double alpha);

    /// score' = (1 - alpha) * score + alpha * [confirmed]
    [[nodiscard]] CalibratedTrust updated(Agreement outcome) const;

    /// Score implied by folding `history` over `initial`.
    static double fold(double initial, double alpha, std::span<const Agreement> history);

    friend bool operator==(const CalibratedTrust&, const CalibratedTrust&) = default;
};

} // namespace hmt::agent
