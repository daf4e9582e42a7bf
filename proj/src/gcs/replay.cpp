// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/replay.hpp"

#include "hmt/common/error.hpp"

namespace hmt::gcs {

namespace {

class CapturePublisher : public Publisher
{
public:
    explicit CapturePublisher(const SimTime& clock) : clock_(clock) {}

    void publish(bus::Envelope env) override
    {
        env.sender = kGcsActor;
        env.seq = ++seq_;
        env.sent_at = clock_;
        out.push_back(std::move(env));
    }

    std::vector<bus::Envelope> out;

private:
    const SimTime& clock_;
    std::uint64_t seq_ = 0;
};

} // namespace

ReplayResult replay(const EventLog& log, const ReplayOptions& options)
{
    const auto& header = log.header;
    if (!header.is_object() || !header.contains("mission") || !header.contains("clock") ||
        !header.at("clock").is_string()) {
        throw ProtocolError("event log header: needs mission and clock");
    }
    const auto mode = bus::clock_mode_from(header.at("clock").get<std::string>());
    if (!mode) {
        throw ProtocolError("event log header: unknown clock");
    }
    auto document = header.at("mission");
    if (header.contains("seed") && !header.at("seed").is_null()) {
        document["seed"] = header.at("seed");
    }
    const MissionSpec spec = parse_mission(document, *mode);
    const SimTime tick = spec.bus_tick_ms;

    SimTime end = log.end_at.value_or(log.records.empty() ? 0 : log.records.back().at);
    std::size_t last = log.records.size();
    if (options.upto_seq) {
        last = 0;
        while (last < log.records.size() && log.records[last].seq <= *options.upto_seq) {
            ++last;
        }
        end = last == 0 ? 0 : log.records[last - 1].at;
    }
    if (options.until) {
        end = *options.until;
    }

    SimTime clock = 0;
    CapturePublisher sink(clock);
    Gcs gcs(spec, sink);
    ReplayResult r;
    std::size_t idx = 0;
    for (SimTime t = 0;; t += tick) {
        // A realtime log is delivered off the tick grid; fold those records
        // into the next grid point.
        const SimTime at = std::min(t, end);
        clock = at;
        while (idx < last && log.records[idx].at <= at) {
            const auto& env = log.records[idx].envelope;
            if (Gcs::wants(env.topic)) {
                gcs.on_envelope(env, log.records[idx].at);
                ++r.fed;
            }
            ++idx;
        }
        gcs.tick(at);
        if (at >= end) {
            break;
        }
    }
    r.state = gcs.serialize_state();
    r.published = std::move(sink.out);
    r.end_at = end;
    return r;
}

} // namespace hmt::gcs
