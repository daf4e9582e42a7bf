// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/bus/bus.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace hmt::gcs {

struct MissionSpec;

inline constexpr const char* kLogFormat = "hmt-event-log/1";

nlohmann::json envelope_to_json(const bus::Envelope& env);
/// Throws ProtocolError.
bus::Envelope envelope_from_json(const nlohmann::json& j);

struct LogRecord
{
    std::uint64_t seq = 0;
    SimTime at = 0;
    bus::Envelope envelope;
};

/// Newline-delimited JSON: one header line, one line per delivered
/// envelope (seq dense from 1), one footer line.
class EventLogWriter
{
public:
    explicit EventLogWriter(std::ostream& out) : out_(out) {}

    void header(const MissionSpec& spec, std::uint64_t seed, bus::ClockMode mode);
    std::uint64_t record(const bus::Envelope& env, SimTime at);
    void footer(SimTime end_at, const std::string& outcome);

    [[nodiscard]] std::uint64_t records() const { return seq_; }

private:
    std::ostream& out_;
    std::uint64_t seq_ = 0;
};

struct EventLog
{
    nlohmann::json header;
    std::vector<LogRecord> records;
    std::optional<SimTime> end_at;
    std::string outcome;
};

/// Throws ProtocolError naming the line of the first problem, including a
/// gap or repeat in seq.
EventLog parse_event_log(std::istream& in);
EventLog read_event_log(const std::filesystem::path& path);

} // namespace hmt::gcs
