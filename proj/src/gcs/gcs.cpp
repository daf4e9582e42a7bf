// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/gcs.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/msg/json.hpp"

#include <algorithm>

namespace hmt::gcs {

using nlohmann::json;
namespace topics = bus::topics;

namespace {

constexpr std::size_t kFrameHistory = 64;
constexpr std::size_t kFrameExplanations = 20;

json session_json(const coord::Session& s, SimTime now)
{
    json j{{"id", s.id},
           {"uav", s.uav},
           {"state", std::string(coord::to_string(s.state))},
           {"waiting_period", s.waiting_period},
           {"opened_at", s.opened_at},
           {"detection", s.detection}};
    if (s.closed_at) {
        j["closed_at"] = *s.closed_at;
    } else {
        j["remaining_ms"] = std::max<SimTime>(0, s.opened_at + s.waiting_period - now);
    }
    return j;
}

json autonomy_json(const std::map<std::string, std::map<std::string, coord::Curtailment>>& all)
{
    json j = json::object();
    for (const auto& [uav, dims] : all) {
        for (const auto& [dim, c] : dims) {
            j[uav][dim] = {{"reason", c.reason}, {"since", c.since}};
        }
    }
    return j;
}

json trust_json(const agent::CalibratedTrust& t)
{
    std::vector<std::string> history;
    for (auto a : t.history) {
        history.emplace_back(a == agent::Agreement::confirmed ? "confirmed" : "refuted");
    }
    return {{"capability", t.capability}, {"initial", t.initial}, {"alpha", t.alpha},
            {"score", t.score},           {"history", history}};
}

} // namespace

json frame_to_json(const Frame& f)
{
    json views = json::array();
    for (const auto& v : f.views) {
        views.push_back(v);
    }
    json sessions = json::array();
    for (const auto& s : f.open_sessions) {
        sessions.push_back(session_json(s, f.at));
    }
    json affordances = json::object();
    for (const auto& [uav, set] : f.affordances) {
        json kinds = json::array();
        for (auto k : set) {
            kinds.push_back(k);
        }
        affordances[uav] = std::move(kinds);
    }
    json telemetry = json::object();
    for (const auto& [uav, t] : f.telemetry) {
        telemetry[uav] = t;
    }
    return {{"type", "frame"},
            {"version", f.version},
            {"at", f.at},
            {"fleet", f.fleet ? json(*f.fleet) : json(nullptr)},
            {"views", std::move(views)},
            {"sessions", std::move(sessions)},
            {"affordances", std::move(affordances)},
            {"autonomy", autonomy_json(f.autonomy)},
            {"explanations", f.explanations},
            {"telemetry", std::move(telemetry)}};
}

Gcs::Gcs(const MissionSpec& spec, Publisher& out)
    : spec_(spec),
      out_(out),
      triage_(spec.alert_rules),
      tug_({spec.coordination.tug_k, spec.coordination.tug_window_ms}),
      responsiveness_(spec.responsiveness)
{
    for (const auto& v : spec.views) {
        triage_.register_view(v.name, v.max_threshold);
    }
    for (const auto& u : spec.uavs) {
        fleet_.register_uav(u.id, u.color, u.machine, 0);
        trust_.emplace(u.id, agent::CalibratedTrust::make("person-detection", u.trust_initial, u.trust_alpha));
        health_[u.id] = msg::Health::nominal;
    }
}

std::vector<std::string> Gcs::subscriptions()
{
    return {"uav/+/telemetry", "uav/+/state",       "uav/+/adaptation", "uav/+/detection",
            "uav/+/ack",       std::string(topics::kHumanDirective), std::string(topics::kHumanResponse)};
}

bool Gcs::wants(const std::string& topic)
{
    for (const auto& p : subscriptions()) {
        if (bus::topic_matches(p, topic)) {
            return true;
        }
    }
    return false;
}

void Gcs::publish(std::string topic, std::string_view qos, msg::Payload payload, SimTime now)
{
    bus::Envelope env;
    env.topic = std::move(topic);
    env.sender = kGcsActor;
    env.sent_at = now;
    env.qos = std::string(qos);
    env.payload = std::move(payload);
    out_.publish(std::move(env));
}

msg::AlertId Gcs::raise(std::string type, std::string source, std::string message, SimTime now,
                        bool force_essential)
{
    msg::Alert a;
    a.id = next_alert_++;
    a.alert_type = std::move(type);
    a.source = std::move(source);
    a.message = std::move(message);
    a.raised_at = now;
    a.expires_at = now + spec_.alert_ttl_ms;
    a.force_essential = force_essential;
    triage_.submit_alert(a);
    return a.id;
}

void Gcs::on_envelope(const bus::Envelope& env, SimTime now)
{
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, msg::Telemetry>) {
                on_telemetry(p, now);
            } else if constexpr (std::is_same_v<T, msg::StateChange>) {
                on_state(p, now);
            } else if constexpr (std::is_same_v<T, msg::DetectionReport>) {
                on_detection(p, now);
            } else if constexpr (std::is_same_v<T, msg::AdaptationEvent>) {
                on_adaptation(p, now);
            } else if constexpr (std::is_same_v<T, msg::DirectiveAck>) {
                on_ack(p, now);
            } else if constexpr (std::is_same_v<T, msg::DirectiveCommand>) {
                on_directive(p, now);
            } else if constexpr (std::is_same_v<T, msg::ResponseCommand>) {
                on_response(p, now);
            }
        },
        env.payload);
}

void Gcs::on_telemetry(const msg::Telemetry& t, SimTime now)
{
    if (!fleet_.has_uav(t.uav)) {
        return;
    }
    telemetry_[t.uav] = t;
    auto& h = health_[t.uav];
    if (t.health != h) {
        if (t.health == msg::Health::degraded) {
            raise("health_degraded", t.uav, "UAV " + t.uav + " health degraded", now);
        } else if (t.health == msg::Health::failsafe) {
            raise("battery_failsafe", t.uav, "UAV " + t.uav + " battery at failsafe floor", now);
        }
        h = t.health;
    }
}

void Gcs::on_state(const msg::StateChange& s, SimTime now)
{
    try {
        fleet_.update_token(s.uav, s.to, now);
    } catch (const fleet::ModelDriftError& e) {
        ++counters_.model_drift;
        raise("model_drift", s.uav, e.what(), now, true);
        return;
    }
    if (!table_.knows(s.to)) {
        ++counters_.model_drift;
        raise("model_drift", s.uav, "no affordances known for state '" + s.to + "'", now, true);
    }
}

void Gcs::on_detection(const msg::DetectionReport& r, SimTime now)
{
    const auto& d = r.detection;
    if (r.reverted) {
        raise("responsibility_reverted", d.uav,
              "UAV " + d.uav + " decided alone after no response: " + std::string(to_string(r.decision)), now);
        return;
    }
    switch (r.decision) {
    case msg::DetectionDecision::request_help: {
        try {
            const auto& s = sessions_.open(d, spec_.coordination.waiting_period_ms, now);
            publish(topics::gcs_coord(s.id), bus::kCritical, coord::SessionStore::message(s), now);
            session_alerts_[s.id] =
                raise("help_request", d.uav, "UAV " + d.uav + " requests confirmation of a possible " +
                                                 d.object_class + " (session " + s.id + ")",
                      now, true);
        } catch (const StateError& e) {
            raise("coordination_error", d.uav, e.what(), now);
        }
        break;
    }
    case msg::DetectionDecision::act_autonomously:
        raise("victim_detected", d.uav, "UAV " + d.uav + " detected a " + d.object_class + " and is tracking",
              now);
        break;
    case msg::DetectionDecision::continue_search:
        raise("low_confidence_detection", d.uav, "UAV " + d.uav + " ignored a low-confidence " + d.object_class,
              now);
        break;
    }
}

void Gcs::on_adaptation(const msg::AdaptationEvent& e, SimTime now)
{
    try {
        auto m = explanations_.add(e, now);
        raise("adaptation", e.uav, m.text, now);
        publish(std::string(topics::kExplanations), bus::kStandard, std::move(m), now);
    } catch (const explain::RenderError& err) {
        ++counters_.render_errors;
        raise("explanation_error", e.uav, err.what(), now);
    }
    if (e.control && e.initiator == msg::Initiator::machine) {
        record_action({msg::Actor::machine, e.uav, e.control->dimension, e.control->direction, e.at,
                       e.control->failsafe},
                      now);
    }
}

void Gcs::on_ack(const msg::DirectiveAck& a, SimTime now)
{
    if (!a.ack) {
        raise("directive_nack", a.uav,
              "UAV " + a.uav + " refused " + std::string(to_string(a.kind)) + ": " + a.reason, now);
    }
}

coord::AffordanceResult Gcs::affordances(const std::string& uav) const
{
    const auto state = fleet_.current(uav);
    if (!state) {
        return {{}, false};
    }
    return table_.compute({*state, sessions_.open_for(uav).has_value(), autonomy_.curtailed(uav)});
}

std::optional<std::pair<bool, std::string>> Gcs::check_version(std::uint64_t version, const std::string& uav,
                                                               msg::DirectiveKind kind) const
{
    const auto kind_name = std::string(to_string(kind));
    if (version > frame_->version || version == 0) {
        return std::pair{false, "unknown frame version " + std::to_string(version)};
    }
    const Frame* stamped = nullptr;
    for (const auto& f : history_) {
        if (f->version == version) {
            stamped = f.get();
            break;
        }
    }
    if (stamped == nullptr) {
        return std::pair{true, "frame " + std::to_string(version) + " is too old"};
    }
    auto it = stamped->affordances.find(uav);
    if (it == stamped->affordances.end() || it->second.count(kind) == 0) {
        return std::pair{false, kind_name + " was not offered for " + uav + " in frame " + std::to_string(version)};
    }
    if (affordances(uav).allowed.count(kind) == 0) {
        return std::pair{true, kind_name + " for " + uav + " is no longer available (frame " +
                                   std::to_string(version) + " is stale)"};
    }
    return std::nullopt;
}

void Gcs::result(const std::string& command_id, bool accepted, bool stale, std::string reason, SimTime now)
{
    if (stale) {
        ++counters_.stale_commands;
        raise("stale_action", "gcs", "stale human action: " + reason, now);
    } else if (!accepted) {
        ++counters_.rejected_commands;
    }
    publish(std::string(topics::kCommands), bus::kCritical,
            msg::CommandResult{command_id, accepted, stale, std::move(reason), now}, now);
}

void Gcs::route(const std::string& command_id, const msg::HumanDirective& d, bool rc, SimTime now)
{
    publish(topics::uav_directive(d.target), bus::kCritical, msg::RoutedDirective{command_id, d, rc}, now);
}

void Gcs::on_directive(const msg::DirectiveCommand& c, SimTime now)
{
    using msg::DirectiveKind;
    if (c.abort) {
        abort_requested_ = true;
        for (const auto& u : spec_.uavs) {
            msg::HumanDirective d;
            d.kind = DirectiveKind::return_to_launch;
            d.target = u.id;
            d.issued_at = now;
            route(c.id + "/" + u.id, d, true, now);
        }
        raise("mission_abort", "gcs", "mission aborted by operator", now, true);
        result(c.id, true, false, "abort: return to launch sent to all UAVs", now);
        return;
    }
    const auto& d = c.directive;
    try {
        msg::validate_params(d);
    } catch (const ProtocolError& e) {
        result(c.id, false, false, e.what(), now);
        return;
    }
    if (!fleet_.has_uav(d.target)) {
        result(c.id, false, false, "unknown uav '" + d.target + "'", now);
        return;
    }
    const bool rc_override = c.rc && d.kind == DirectiveKind::manual_override;
    if (!rc_override) {
        if (auto bad = check_version(c.version, d.target, d.kind)) {
            result(c.id, false, bad->first, bad->second, now);
            return;
        }
    }

    switch (d.kind) {
    case DirectiveKind::confirm_detection:
    case DirectiveKind::reject_detection: {
        auto session = d.params.session;
        if (session.empty()) {
            session = sessions_.open_for(d.target).value_or("");
        }
        resolve_session(c.id, session,
                        d.kind == DirectiveKind::confirm_detection ? msg::SessionDecision::confirm
                                                                   : msg::SessionDecision::reject,
                        now);
        return;
    }
    case DirectiveKind::restore_autonomy:
        for (auto& m : autonomy_.restore(d.target, msg::Actor::human, now)) {
            publish(topics::gcs_autonomy(d.target), bus::kCritical, std::move(m), now);
        }
        tug_.clear(d.target);
        break;
    case DirectiveKind::manual_override:
        if (auto m = autonomy_.curtail(d.target, "mode", "manual override", msg::Actor::human, now)) {
            publish(topics::gcs_autonomy(d.target), bus::kCritical, std::move(*m), now);
        }
        break;
    case DirectiveKind::altitude_change:
        record_action({msg::Actor::human, d.target, "altitude", msg::Direction::numeric(*d.params.delta_m > 0 ? 1 : -1),
                       now, false},
                      now);
        break;
    default:
        break;
    }
    route(c.id, d, c.rc, now);
    result(c.id, true, false, {}, now);
}

void Gcs::on_response(const msg::ResponseCommand& c, SimTime now)
{
    const auto* s = sessions_.find(c.session);
    if (s == nullptr) {
        result(c.id, false, false, "unknown session '" + c.session + "'", now);
        return;
    }
    const auto kind = c.decision == msg::SessionDecision::confirm ? msg::DirectiveKind::confirm_detection
                                                                   : msg::DirectiveKind::reject_detection;
    if (auto bad = check_version(c.version, s->uav, kind)) {
        result(c.id, false, bad->first, bad->second, now);
        return;
    }
    resolve_session(c.id, c.session, c.decision, now);
}

void Gcs::resolve_session(const std::string& command_id, const std::string& session, msg::SessionDecision d,
                          SimTime now)
{
    coord::Session closed;
    try {
        closed = sessions_.resolve(session, d, now);
    } catch (const coord::StaleActionError& e) {
        result(command_id, false, true, e.what(), now);
        return;
    } catch (const ProtocolError& e) {
        result(command_id, false, false, e.what(), now);
        return;
    }
    auto& t = trust_.at(closed.uav);
    t = t.updated(d == msg::SessionDecision::confirm ? agent::Agreement::confirmed : agent::Agreement::refuted);
    close_session(closed, now);
    responsiveness_.record_answered(now - closed.opened_at);
    adapt_frequency(now);
    result(command_id, true, false, {}, now);
}

void Gcs::close_session(const coord::Session& s, SimTime now)
{
    const bool timed_out = s.state == coord::SessionState::timed_out;
    publish(topics::gcs_coord(s.id), bus::kCritical,
            coord::SessionStore::message(s, timed_out ? "human failure to respond" : ""), now);
    if (auto it = session_alerts_.find(s.id); it != session_alerts_.end()) {
        triage_.retract(it->second);
        session_alerts_.erase(it);
    }
    if (timed_out) {
        raise("human_no_response", s.uav, "human failure to respond (session " + s.id + ")", now);
    }
}

void Gcs::adapt_frequency(SimTime now)
{
    const auto changes =
        triage::adapt_frequency(triage_, responsiveness_.metric(), responsiveness_.config(), now);
    for (const auto& c : changes) {
        publish(std::string(topics::kRules), bus::kStandard, c, now);
    }
    if (!changes.empty()) {
        responsiveness_.reset();
    }
}

void Gcs::record_action(coord::ActionLogEntry e, SimTime now)
{
    if (e.actor == msg::Actor::machine && !e.failsafe && autonomy_.curtailed(e.uav, e.dimension)) {
        return;
    }
    const auto uav = e.uav;
    tug_.record(std::move(e));
    auto conflict = tug_.detect(uav, now);
    if (!conflict) {
        return;
    }
    conflicts_.push_back(*conflict);
    tug_.clear(uav, conflict->dimension);
    if (auto m = autonomy_.curtail(uav, conflict->dimension, "tug-of-war", msg::Actor::machine, now)) {
        publish(topics::gcs_autonomy(uav), bus::kCritical, std::move(*m), now);
    }
    raise("tug_of_war", uav,
          "tug-of-war on " + conflict->dimension + " with UAV " + uav + " after " +
              std::to_string(conflict->alternations) + " alternations; autonomy curtailed until restored",
          now, true);
}

void Gcs::tick(SimTime now)
{
    for (const auto& s : sessions_.tick(now)) {
        close_session(s, now);
        responsiveness_.record_unanswered();
        adapt_frequency(now);
    }
    triage_.expire(now);
    for (const auto& v : spec_.views) {
        auto st = triage_.state(v.name);
        auto& last = published_views_[v.name];
        if (st != last) {
            publish(topics::gcs_alerts(v.name), bus::kStandard,
                    msg::TriageUpdate{v.name, st.displayed, st.suppressed, now}, now);
            last = std::move(st);
        }
    }
    if (now >= next_frame_at_) {
        refresh_frame(now);
        while (next_frame_at_ <= now) {
            next_frame_at_ += spec_.ui_refresh_ms;
        }
    }
}

void Gcs::refresh_frame(SimTime now)
{
    auto f = std::make_shared<Frame>();
    f->version = frame_->version + 1;
    f->at = now;
    f->fleet = fleet_.snapshot();
    for (const auto& v : spec_.views) {
        f->views.push_back(triage_.state(v.name));
    }
    for (const auto& [id, s] : sessions_.sessions()) {
        if (!s.terminal()) {
            f->open_sessions.push_back(s);
        }
    }
    for (const auto& [uav, tok] : f->fleet->placement.tokens) {
        f->affordances[uav] = affordances(uav).allowed;
    }
    f->autonomy = autonomy_.all();
    auto feed = explanations_.feed();
    const auto skip = feed.size() > kFrameExplanations ? feed.size() - kFrameExplanations : 0;
    f->explanations.assign(feed.begin() + static_cast<std::ptrdiff_t>(skip), feed.end());
    f->telemetry = telemetry_;
    frame_ = f;
    history_.push_back(std::move(f));
    while (history_.size() > kFrameHistory) {
        history_.pop_front();
    }
}

json Gcs::serialize_state() const
{
    json views = json::array();
    for (const auto& v : triage_.views()) {
        views.push_back(triage_.state(v));
    }
    json rules = json::array();
    for (const auto& [key, r] : triage_.rules()) {
        rules.push_back({{"alert_type", key.first},
                         {"view", key.second},
                         {"entry", r.entry},
                         {"baseline", r.baseline},
                         {"origin", r.origin}});
    }
    json live = json::array();
    for (const auto& [id, a] : triage_.live()) {
        live.push_back(a);
    }

    json history = json::object();
    for (const auto& u : spec_.uavs) {
        json visits = json::array();
        for (const auto& v : fleet_.history(u.id)) {
            json jv{{"state", v.state}, {"entered_at", v.entered_at}};
            if (v.exited_at) {
                jv["exited_at"] = *v.exited_at;
            }
            visits.push_back(std::move(jv));
        }
        history[u.id] = std::move(visits);
    }

    json sessions = json::array();
    for (const auto& [id, s] : sessions_.sessions()) {
        sessions.push_back(session_json(s, s.closed_at.value_or(s.opened_at)));
    }
    json conflicts = json::array();
    for (const auto& c : conflicts_) {
        conflicts.push_back({{"uav", c.uav},
                             {"dimension", c.dimension},
                             {"alternations", c.alternations},
                             {"first_at", c.first_at},
                             {"last_at", c.last_at}});
    }
    json trust = json::object();
    for (const auto& [uav, t] : trust_) {
        trust[uav] = trust_json(t);
    }
    const auto m = responsiveness_.metric();
    json resp{{"samples", m.samples}, {"availability", m.availability}};
    if (m.mean_response_ms) {
        resp["mean_response_ms"] = *m.mean_response_ms;
    }

    return {{"triage", {{"views", std::move(views)}, {"rules", std::move(rules)}, {"live", std::move(live)},
                        {"responsiveness", std::move(resp)}}},
            {"fleet", {{"snapshot", *fleet_.snapshot()}, {"history", std::move(history)}}},
            {"coordination",
             {{"sessions", std::move(sessions)},
              {"autonomy", autonomy_json(autonomy_.all())},
              {"conflicts", std::move(conflicts)},
              {"stale_commands", counters_.stale_commands}}},
            {"trust", std::move(trust)},
            {"explanations", explanations_.size()}};
}

} // namespace hmt::gcs
