// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/error.hpp"
#include "hmt/msg/messages.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmt::coord {

enum class SessionState { help_requested, confirmed, refuted, timed_out };

std::string_view to_string(SessionState s);

struct Session
{
    std::string id;
    std::string uav;
    msg::DetectionEvent detection;
    SessionState state = SessionState::help_requested;
    SimTime waiting_period = 0;
    SimTime opened_at = 0;
    std::optional<SimTime> closed_at;

    [[nodiscard]] bool terminal() const { return state != SessionState::help_requested; }

    friend bool operator==(const Session&, const Session&) = default;
};

/// A human answer arrived for a session that is closed or past its window.
class StaleActionError : public Error
{
public:
    StaleActionError(std::string session, const std::string& why);

    [[nodiscard]] const std::string& session() const noexcept { return session_; }

private:
    std::string session_;
};

/// Help-request sessions. Within one instant, resolve() calls are expected
/// before tick(), so a response landing exactly on the deadline wins.
class SessionStore
{
public:
    /// Throws StateError if this detection already has a session.
    const Session& open(const msg::DetectionEvent& d, SimTime waiting_period, SimTime at);

    /// Throws StaleActionError for a terminal session or a late answer,
    /// ProtocolError for an unknown id.
    const Session& resolve(const std::string& id, msg::SessionDecision decision, SimTime at);

    /// Closes every session whose window has run out. Ordered by id.
    std::vector<Session> tick(SimTime now);

    [[nodiscard]] const Session* find(const std::string& id) const;
    [[nodiscard]] std::optional<std::string> open_for(const std::string& uav) const;
    [[nodiscard]] const std::map<std::string, Session>& sessions() const { return sessions_; }

    /// Lifecycle message for a session's current state.
    [[nodiscard]] static msg::CoordMessage message(const Session& s, std::string note = {});

private:
    std::map<std::string, Session> sessions_;
    std::map<std::pair<std::string, std::uint64_t>, std::string> by_detection_;
    std::uint64_t next_ = 1;
};

} // namespace hmt::coord
