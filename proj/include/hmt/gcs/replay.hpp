// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/gcs/event_log.hpp"
#include "hmt/gcs/gcs.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace hmt::gcs {

struct ReplayOptions
{
    /// Stop after feeding this record.
    std::optional<std::uint64_t> upto_seq;
    /// Stop ticking at this time instead of the log's end.
    std::optional<SimTime> until;
};

struct ReplayResult
{
    nlohmann::json state;
    /// Everything the replayed GCS published, in publication order.
    std::vector<bus::Envelope> published;
    SimTime end_at = 0;
    std::uint64_t fed = 0;
};

/// Rebuilds the GCS models from a log alone: the header's mission document
/// configures a fresh service, logged deliveries it subscribes to are fed in
/// log order at their logged times, and ticks run on the bus tick grid.
/// No UAV is simulated and nothing is sent on a bus.
ReplayResult replay(const EventLog& log, const ReplayOptions& options = {});

} // namespace hmt::gcs
