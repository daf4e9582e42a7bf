// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/harness/human.hpp"

#include "hmt/bus/topic.hpp"
#include "hmt/common/error.hpp"
#include "hmt/msg/json.hpp"

#include <fstream>

namespace hmt::harness {

using nlohmann::json;

namespace {

struct Issues
{
    std::vector<std::string> list;
    void add(const std::string& path, const std::string& what) { list.push_back(path + ": " + what); }
};

std::optional<SimTime> read_ms(const json& v, const std::string& path, Issues& issues)
{
    if (!v.is_number_integer()) {
        issues.add(path, "expected an integer number of ms");
        return std::nullopt;
    }
    const auto ms = v.get<SimTime>();
    if (ms < 0) {
        issues.add(path, "must be >= 0");
        return std::nullopt;
    }
    return ms;
}

DelayModel read_delay(const json& j, Issues& issues)
{
    const std::string path = "response_delay";
    if (!j.is_object() || j.size() != 1) {
        issues.add(path, "expected {\"fixed\": ms} or {\"uniform\": [lo, hi]}");
        return FixedDelay{};
    }
    if (j.contains("fixed")) {
        return FixedDelay{read_ms(j.at("fixed"), path + ".fixed", issues).value_or(0)};
    }
    if (j.contains("uniform")) {
        const auto& u = j.at("uniform");
        if (!u.is_array() || u.size() != 2) {
            issues.add(path + ".uniform", "expected [lo, hi]");
            return FixedDelay{};
        }
        const auto lo = read_ms(u[0], path + ".uniform[0]", issues).value_or(0);
        const auto hi = read_ms(u[1], path + ".uniform[1]", issues).value_or(0);
        if (hi < lo) {
            issues.add(path + ".uniform", "hi must be >= lo");
        }
        return UniformDelay{lo, hi};
    }
    issues.add(path, "unknown distribution '" + j.begin().key() + "'");
    return FixedDelay{};
}

DecisionPolicy read_policy(const json& j, Issues& issues)
{
    const std::string path = "decision_policy";
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "always_confirm") {
            return AlwaysConfirm{};
        }
        if (s == "always_reject") {
            return AlwaysReject{};
        }
        issues.add(path, "unknown policy '" + s + "'");
        return AlwaysConfirm{};
    }
    if (j.is_object() && j.contains("ground_truth_oracle")) {
        const auto& o = j.at("ground_truth_oracle");
        const auto a = o.is_object() ? o.value("accuracy", json(1.0)) : json();
        if (!a.is_number() || a.get<double>() < 0.0 || a.get<double>() > 1.0) {
            issues.add(path + ".ground_truth_oracle.accuracy", "expected a number in [0, 1]");
            return GroundTruthOracle{};
        }
        return GroundTruthOracle{a.get<double>()};
    }
    issues.add(path, "expected a policy name or {\"ground_truth_oracle\": {\"accuracy\": p}}");
    return AlwaysConfirm{};
}

std::optional<ScheduledDirective> read_directive(const json& j, const std::string& path,
                                                 const gcs::MissionSpec& spec, Issues& issues)
{
    if (!j.is_object()) {
        issues.add(path, "expected an object");
        return std::nullopt;
    }
    ScheduledDirective d;
    const auto at = j.contains("at_ms") ? read_ms(j.at("at_ms"), path + ".at_ms", issues) : std::nullopt;
    if (!j.contains("at_ms")) {
        issues.add(path + ".at_ms", "missing");
    }
    d.at = at.value_or(0);
    d.abort = j.value("abort", false);
    d.rc = j.value("rc", false);
    if (d.abort) {
        return d;
    }
    const auto kind = msg::directive_kind_from(j.value("kind", ""));
    if (!kind) {
        issues.add(path + ".kind", "unknown directive kind");
        return std::nullopt;
    }
    d.directive.kind = *kind;
    d.directive.target = j.value("target", "");
    if (spec.find_uav(d.directive.target) == nullptr) {
        issues.add(path + ".target", "unknown UAV '" + d.directive.target + "'");
    }
    try {
        if (j.contains("delta_m")) {
            d.directive.params.delta_m = j.at("delta_m").get<double>();
        }
        if (j.contains("altitude_m")) {
            d.directive.params.altitude_m = j.at("altitude_m").get<double>();
        }
        if (j.contains("route")) {
            d.directive.params.route = j.at("route").get<std::vector<LatLon>>();
        }
        d.directive.params.session = j.value("session", "");
    } catch (const json::exception& e) {
        issues.add(path, e.what());
        return std::nullopt;
    }
    if (d.directive.kind == msg::DirectiveKind::confirm_detection ||
        d.directive.kind == msg::DirectiveKind::reject_detection) {
        if (d.directive.params.session.empty()) {
            issues.add(path + ".session", "required for session decisions");
        }
    }
    return d;
}

} // namespace

HumanScript parse_human_script(const json& j, const gcs::MissionSpec& spec)
{
    Issues issues;
    HumanScript s;
    if (!j.is_object()) {
        throw ValidationError({"human script: expected an object"});
    }
    if (j.contains("availability")) {
        const auto& a = j.at("availability");
        if (!a.is_number() || a.get<double>() < 0.0 || a.get<double>() > 1.0) {
            issues.add("availability", "expected a number in [0, 1]");
        } else {
            s.availability = a.get<double>();
        }
    }
    if (j.contains("response_delay")) {
        s.response_delay = read_delay(j.at("response_delay"), issues);
    }
    if (j.contains("decision_policy")) {
        s.decision_policy = read_policy(j.at("decision_policy"), issues);
    }
    if (j.contains("directives")) {
        const auto& ds = j.at("directives");
        if (!ds.is_array()) {
            issues.add("directives", "expected an array");
        } else {
            for (std::size_t i = 0; i < ds.size(); ++i) {
                if (auto d = read_directive(ds[i], "directives[" + std::to_string(i) + "]", spec, issues)) {
                    s.directives.push_back(std::move(*d));
                }
            }
        }
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "availability" && key != "response_delay" && key != "decision_policy" &&
            key != "directives" && key != "name" && key != "description") {
            issues.add(key, "unknown key");
        }
    }
    if (!issues.list.empty()) {
        throw ValidationError(std::move(issues.list));
    }
    std::stable_sort(s.directives.begin(), s.directives.end(),
                     [](const auto& a, const auto& b) { return a.at < b.at; });
    return s;
}

HumanScript load_human_script(const std::string& path, const gcs::MissionSpec& spec)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError({path + ": cannot open"});
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError({path + ": " + e.what()});
    }
    return parse_human_script(j, spec);
}

ScriptedHuman::ScriptedHuman(HumanScript script, const gcs::MissionSpec& spec, std::uint64_t seed)
    : script_(std::move(script)), rng_(seed)
{
    for (const auto& t : spec.targets) {
        victims_[t.id] = t.victim;
    }
}

std::vector<std::string> ScriptedHuman::subscriptions() const { return {"gcs/coord/+"}; }

void ScriptedHuman::receive(const bus::Envelope& env, SimTime at)
{
    const auto* c = std::get_if<msg::CoordMessage>(&env.payload);
    if (c == nullptr || c->kind != msg::CoordKind::help_requested) {
        return;
    }
    PromptRecord p;
    p.session = c->session;
    p.prompted_at = at;
    p.answered = rng_.chance(script_.availability);
    if (p.answered) {
        if (const auto* f = std::get_if<FixedDelay>(&script_.response_delay)) {
            p.delay = f->ms;
        } else {
            const auto& u = std::get<UniformDelay>(script_.response_delay);
            p.delay = rng_.uniform_int(u.lo, u.hi);
        }
        if (std::holds_alternative<AlwaysReject>(script_.decision_policy)) {
            p.decision = msg::SessionDecision::reject;
        } else if (const auto* o = std::get_if<GroundTruthOracle>(&script_.decision_policy)) {
            const auto it = victims_.find(c->detection.target_id);
            const bool victim = it != victims_.end() && it->second;
            const bool correct = rng_.chance(o->accuracy);
            p.decision = victim == correct ? msg::SessionDecision::confirm : msg::SessionDecision::reject;
        }
    }
    prompts_.push_back(std::move(p));
}

std::vector<agent::Outbound> ScriptedHuman::step(SimTime now, const gcs::Gcs& gcs)
{
    std::vector<agent::Outbound> out;
    for (auto& p : prompts_) {
        if (!p.answered || p.sent_at || p.prompted_at + p.delay > now) {
            continue;
        }
        p.sent_at = now;
        msg::ResponseCommand r;
        r.id = "h" + std::to_string(++commands_);
        r.version = gcs.frame_version();
        r.session = p.session;
        r.decision = p.decision;
        out.push_back({std::string(bus::topics::kHumanResponse), std::string(bus::kCritical), r});
    }
    while (next_directive_ < script_.directives.size() && script_.directives[next_directive_].at <= now) {
        const auto& d = script_.directives[next_directive_++];
        msg::DirectiveCommand c;
        c.id = "h" + std::to_string(++commands_);
        c.version = gcs.frame_version();
        c.directive = d.directive;
        c.directive.issued_at = now;
        c.rc = d.rc;
        c.abort = d.abort;
        out.push_back({std::string(bus::topics::kHumanDirective), std::string(bus::kCritical), c});
    }
    return out;
}

} // namespace hmt::harness
