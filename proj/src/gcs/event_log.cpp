// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/event_log.hpp"

#include "hmt/common/error.hpp"
#include "hmt/gcs/mission_spec.hpp"
#include "hmt/msg/json.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace hmt::gcs {

using nlohmann::json;

json envelope_to_json(const bus::Envelope& env)
{
    return {{"topic", env.topic},   {"sender", env.sender}, {"seq", env.seq},
            {"sent_at", env.sent_at}, {"qos", env.qos},     {"payload", msg::payload_to_json(env.payload)}};
}

bus::Envelope envelope_from_json(const json& j)
{
    try {
        bus::Envelope env;
        env.topic = j.at("topic").get<std::string>();
        env.sender = j.at("sender").get<std::string>();
        env.seq = j.at("seq").get<std::uint64_t>();
        env.sent_at = j.at("sent_at").get<SimTime>();
        env.qos = j.at("qos").get<std::string>();
        env.payload = msg::payload_from_json(j.at("payload"));
        return env;
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("envelope: ") + e.what());
    }
}

void EventLogWriter::header(const MissionSpec& spec, std::uint64_t seed, bus::ClockMode mode)
{
    json thresholds = json::object();
    for (const auto& u : spec.uavs) {
        thresholds[u.id] = {{"confidence_act", u.thresholds.confidence_act},
                            {"reliability_act", u.thresholds.reliability_act},
                            {"trust_floor", u.thresholds.trust_floor},
                            {"trust_initial", u.trust_initial},
                            {"trust_alpha", u.trust_alpha}};
    }
    const json h{{"header",
                  {{"format", kLogFormat},
                   {"clock", std::string(bus::to_string(mode))},
                   {"seed", seed},
                   {"mission", spec.document},
                   {"thresholds", std::move(thresholds)}}}};
    out_ << h.dump() << '\n';
}

std::uint64_t EventLogWriter::record(const bus::Envelope& env, SimTime at)
{
    const json r{{"seq", ++seq_}, {"at", at}, {"envelope", envelope_to_json(env)}};
    out_ << r.dump() << '\n';
    return seq_;
}

void EventLogWriter::footer(SimTime end_at, const std::string& outcome)
{
    const json f{{"footer", {{"end_at", end_at}, {"records", seq_}, {"outcome", outcome}}}};
    out_ << f.dump() << '\n';
    out_.flush();
}

EventLog parse_event_log(std::istream& in)
{
    EventLog log;
    std::string line;
    std::size_t lineno = 0;
    bool seen_header = false;
    bool seen_footer = false;
    std::uint64_t expect = 1;
    SimTime last_at = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto where = "event log line " + std::to_string(lineno) + ": ";
        if (seen_footer) {
            throw ProtocolError(where + "content after footer");
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ProtocolError(where + e.what());
        }
        if (!j.is_object()) {
            throw ProtocolError(where + "expected an object");
        }
        if (auto h = j.find("header"); h != j.end()) {
            if (seen_header || !log.records.empty()) {
                throw ProtocolError(where + "unexpected header");
            }
            if (h->value("format", "") != kLogFormat) {
                throw ProtocolError(where + "unsupported format");
            }
            log.header = *h;
            seen_header = true;
            continue;
        }
        if (auto f = j.find("footer"); f != j.end()) {
            try {
                log.end_at = f->at("end_at").get<SimTime>();
                log.outcome = f->value("outcome", "");
                if (f->at("records").get<std::uint64_t>() != log.records.size()) {
                    throw ProtocolError(where + "footer record count does not match");
                }
            } catch (const json::exception& e) {
                throw ProtocolError(where + e.what());
            }
            seen_footer = true;
            continue;
        }
        if (!seen_header) {
            throw ProtocolError(where + "record before header");
        }
        LogRecord r;
        try {
            r.seq = j.at("seq").get<std::uint64_t>();
            r.at = j.at("at").get<SimTime>();
        } catch (const json::exception& e) {
            throw ProtocolError(where + e.what());
        }
        if (r.seq != expect) {
            throw ProtocolError(where + "gap in seq: expected " + std::to_string(expect) + ", found " +
                                std::to_string(r.seq));
        }
        if (r.at < last_at) {
            throw ProtocolError(where + "time goes backwards");
        }
        try {
            r.envelope = envelope_from_json(j.at("envelope"));
        } catch (const json::exception& e) {
            throw ProtocolError(where + e.what());
        } catch (const ProtocolError& e) {
            throw ProtocolError(where + e.what());
        }
        last_at = r.at;
        ++expect;
        log.records.push_back(std::move(r));
    }
    if (!seen_header) {
        throw ProtocolError("event log: missing header");
    }
    return log;
}

EventLog read_event_log(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ProtocolError("cannot open event log " + path.string());
    }
    return parse_event_log(in);
}

} // namespace hmt::gcs
