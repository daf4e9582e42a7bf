// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/agent/trust.hpp"
#include "hmt/bus/bus.hpp"
#include "hmt/coord/affordances.hpp"
#include "hmt/coord/autonomy.hpp"
#include "hmt/coord/sessions.hpp"
#include "hmt/coord/tug_of_war.hpp"
#include "hmt/explain/explain.hpp"
#include "hmt/fleet/fleet_model.hpp"
#include "hmt/gcs/mission_spec.hpp"
#include "hmt/triage/triage.hpp"

#include <nlohmann/json.hpp>

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace hmt::gcs {

/// Where the GCS sends what it publishes: the bus in a live run, a capture
/// buffer during replay.
class Publisher
{
public:
    virtual ~Publisher() = default;
    virtual void publish(bus::Envelope env) = 0;
};

inline constexpr const char* kGcsActor = "gcs";

/// What a console renders, stamped with a version. Commands carry the
/// version they were issued against.
struct Frame
{
    std::uint64_t version = 0;
    SimTime at = 0;
    std::shared_ptr<const fleet::Snapshot> fleet;
    std::vector<triage::ViewState> views;
    std::vector<coord::Session> open_sessions;
    std::map<std::string, coord::AffordanceSet> affordances;
    std::map<std::string, std::map<std::string, coord::Curtailment>> autonomy;
    std::vector<msg::ExplanationMessage> explanations;
    std::map<std::string, msg::Telemetry> telemetry;
};

nlohmann::json frame_to_json(const Frame& f);

struct GcsCounters
{
    std::uint64_t stale_commands = 0;
    std::uint64_t rejected_commands = 0;
    std::uint64_t render_errors = 0;
    std::uint64_t model_drift = 0;
};

/// Ground-control service: ingests UAV and human traffic, runs the runtime
/// models and publishes their decisions. Single-threaded; the driver feeds
/// it deliveries and ticks, live or from a log.
class Gcs
{
public:
    Gcs(const MissionSpec& spec, Publisher& out);

    [[nodiscard]] static std::vector<std::string> subscriptions();
    [[nodiscard]] static bool wants(const std::string& topic);

    void on_envelope(const bus::Envelope& env, SimTime now);

    /// Timeouts, expiry, triage publication and frame refresh.
    void tick(SimTime now);

    [[nodiscard]] const Frame& frame() const { return *frame_; }
    [[nodiscard]] std::shared_ptr<const Frame> frame_ptr() const { return frame_; }
    [[nodiscard]] std::uint64_t frame_version() const { return frame_->version; }

    [[nodiscard]] bool abort_requested() const { return abort_requested_; }

    /// Final model states: triage, fleet, coordination, trust.
    [[nodiscard]] nlohmann::json serialize_state() const;

    [[nodiscard]] const fleet::FleetModel& fleet() const { return fleet_; }
    [[nodiscard]] const triage::TriageEngine& triage() const { return triage_; }
    [[nodiscard]] const explain::ExplanationLog& explanations() const { return explanations_; }
    [[nodiscard]] const coord::SessionStore& sessions() const { return sessions_; }
    [[nodiscard]] const coord::AutonomyRegistry& autonomy() const { return autonomy_; }
    [[nodiscard]] const coord::TugOfWarDetector& tug_of_war() const { return tug_; }
    [[nodiscard]] const std::map<std::string, agent::CalibratedTrust>& trust() const { return trust_; }
    [[nodiscard]] const triage::ResponsivenessTracker& responsiveness() const { return responsiveness_; }
    [[nodiscard]] const GcsCounters& counters() const { return counters_; }
    [[nodiscard]] const std::vector<coord::Conflict>& conflicts() const { return conflicts_; }

    /// Current directive options for one UAV.
    [[nodiscard]] coord::AffordanceResult affordances(const std::string& uav) const;

private:
    void publish(std::string topic, std::string_view qos, msg::Payload payload, SimTime now);
    msg::AlertId raise(std::string type, std::string source, std::string message, SimTime now,
                       bool force_essential = false);

    void on_telemetry(const msg::Telemetry& t, SimTime now);
    void on_state(const msg::StateChange& s, SimTime now);
    void on_detection(const msg::DetectionReport& r, SimTime now);
    void on_adaptation(const msg::AdaptationEvent& e, SimTime now);
    void on_ack(const msg::DirectiveAck& a, SimTime now);
    void on_directive(const msg::DirectiveCommand& c, SimTime now);
    void on_response(const msg::ResponseCommand& c, SimTime now);

    void resolve_session(const std::string& command_id, const std::string& session, msg::SessionDecision d,
                         SimTime now);
    void close_session(const coord::Session& s, SimTime now);
    void record_action(coord::ActionLogEntry e, SimTime now);
    void route(const std::string& command_id, const msg::HumanDirective& d, bool rc, SimTime now);
    void result(const std::string& command_id, bool accepted, bool stale, std::string reason, SimTime now);
    void adapt_frequency(SimTime now);

    /// Empty if the command may proceed; otherwise the rejection.
    std::optional<std::pair<bool, std::string>> check_version(std::uint64_t version,
                                                              const std::string& uav,
                                                              msg::DirectiveKind kind) const;

    void refresh_frame(SimTime now);

    const MissionSpec& spec_;
    Publisher& out_;

    fleet::FleetModel fleet_;
    triage::TriageEngine triage_;
    explain::ExplanationLog explanations_;
    coord::SessionStore sessions_;
    coord::AffordanceTable table_ = coord::AffordanceTable::standard();
    coord::TugOfWarDetector tug_;
    coord::AutonomyRegistry autonomy_;
    triage::ResponsivenessTracker responsiveness_;
    std::map<std::string, agent::CalibratedTrust> trust_;
    std::map<std::string, msg::Telemetry> telemetry_;
    std::map<std::string, msg::AlertId> session_alerts_;
    std::map<std::string, msg::Health> health_;
    std::map<std::string, triage::ViewState> published_views_;

    std::vector<coord::Conflict> conflicts_;
    msg::AlertId next_alert_ = 1;
    bool abort_requested_ = false;
    GcsCounters counters_;

    std::shared_ptr<const Frame> frame_ = std::make_shared<const Frame>();
    std::deque<std::shared_ptr<const Frame>> history_;
    SimTime next_frame_at_ = 0;
};

} // namespace hmt::gcs
