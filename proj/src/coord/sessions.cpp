// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/coord/sessions.hpp"

#include <cstdio>

namespace hmt::coord {

std::string_view to_string(SessionState s)
{
    switch (s) {
    case SessionState::help_requested: return "help_requested";
    case SessionState::confirmed: return "confirmed";
    case SessionState::refuted: return "refuted";
    case SessionState::timed_out: return "timed_out";
    }
    return "?";
}

StaleActionError::StaleActionError(std::string session, const std::string& why)
    : Error("stale human action on session " + session + ": " + why), session_(std::move(session))
{
}

const Session& SessionStore::open(const msg::DetectionEvent& d, SimTime waiting_period, SimTime at)
{
    if (waiting_period <= 0) {
        throw ValidationError({"waiting_period: must be positive"});
    }
    const auto key = std::pair{d.uav, d.frame};
    if (auto it = by_detection_.find(key); it != by_detection_.end()) {
        throw StateError("detection " + d.uav + "#" + std::to_string(d.frame) + " already has session " +
                         it->second);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "s%04llu", static_cast<unsigned long long>(next_++));
    Session s;
    s.id = buf;
    s.uav = d.uav;
    s.detection = d;
    s.waiting_period = waiting_period;
    s.opened_at = at;
    by_detection_.emplace(key, s.id);
    return sessions_.emplace(s.id, std::move(s)).first->second;
}

const Session& SessionStore::resolve(const std::string& id, msg::SessionDecision decision, SimTime at)
{
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        throw ProtocolError("unknown session '" + id + "'");
    }
    auto& s = it->second;
    if (s.terminal()) {
        throw StaleActionError(id, "session already " + std::string(to_string(s.state)));
    }
    if (at - s.opened_at > s.waiting_period) {
        throw StaleActionError(id, "answer after the waiting period");
    }
    s.state = decision == msg::SessionDecision::confirm ? SessionState::confirmed : SessionState::refuted;
    s.closed_at = at;
    return s;
}

std::vector<Session> SessionStore::tick(SimTime now)
{
    std::vector<Session> out;
    for (auto& [id, s] : sessions_) {
        if (!s.terminal() && now - s.opened_at >= s.waiting_period) {
            s.state = SessionState::timed_out;
            s.closed_at = s.opened_at + s.waiting_period;
            out.push_back(s);
        }
    }
    return out;
}

const Session* SessionStore::find(const std::string& id) const
{
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : &it->second;
}

std::optional<std::string> SessionStore::open_for(const std::string& uav) const
{
    for (const auto& [id, s] : sessions_) {
        if (s.uav == uav && !s.terminal()) {
            return id;
        }
    }
    return std::nullopt;
}

msg::CoordMessage SessionStore::message(const Session& s, std::string note)
{
    msg::CoordMessage m;
    m.session = s.id;
    m.uav = s.uav;
    switch (s.state) {
    case SessionState::help_requested: m.kind = msg::CoordKind::help_requested; break;
    case SessionState::confirmed: m.kind = msg::CoordKind::confirmation; break;
    case SessionState::refuted: m.kind = msg::CoordKind::refutation; break;
    case SessionState::timed_out: m.kind = msg::CoordKind::no_response; break;
    }
    m.detection = s.detection;
    m.waiting_period = s.waiting_period;
    m.opened_at = s.opened_at;
    m.closed_at = s.closed_at;
    m.note = std::move(note);
    return m;
}

} // namespace hmt::coord
