// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/triage/triage.hpp"

#include "hmt/msg/json.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace hmt::triage {

namespace {

void check_entry(const msg::RuleEntry& e, const std::string& where)
{
    if (!e.essential && (e.priority < 1 || e.priority > kLowestPriority)) {
        throw ValidationError({where + ": priority " + std::to_string(e.priority) + " outside [1, 5]"});
    }
}

} // namespace

TriageEngine::TriageEngine(std::vector<RuleSpec> rules)
{
    std::vector<std::string> issues;
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        const auto path = "alert_rules[" + std::to_string(i) + "]";
        try {
            check_entry(r.entry, path);
        } catch (const ValidationError& e) {
            issues.insert(issues.end(), e.issues().begin(), e.issues().end());
            continue;
        }
        auto [it, fresh] = rules_.emplace(std::pair{r.alert_type, r.view}, RuleState{r.entry, msg::RuleOrigin::config, r.entry});
        if (!fresh) {
            issues.push_back(path + ": duplicate rule for (" + r.alert_type + ", " + r.view + ")");
        }
    }
    if (!issues.empty()) {
        throw ValidationError(std::move(issues));
    }
}

void TriageEngine::register_view(const std::string& view, std::size_t max_threshold)
{
    if (views_.count(view) != 0) {
        throw StateError("triage: view '" + view + "' already registered");
    }
    views_[view].max_threshold = max_threshold;
}

void TriageEngine::deregister_view(const std::string& view)
{
    if (views_.erase(view) == 0) {
        throw StateError("triage: unknown view '" + view + "'");
    }
}

std::vector<std::string> TriageEngine::views() const
{
    std::vector<std::string> out;
    for (const auto& [name, v] : views_) {
        out.push_back(name);
    }
    return out;
}

void TriageEngine::ensure_rule(const std::string& alert_type, const std::string& view)
{
    const auto def = msg::RuleEntry::with_priority(kDefaultPriority);
    rules_.try_emplace(std::pair{alert_type, view}, RuleState{def, msg::RuleOrigin::config, def});
}

RuleState TriageEngine::rule(const std::string& alert_type, const std::string& view) const
{
    if (auto it = rules_.find({alert_type, view}); it != rules_.end()) {
        return it->second;
    }
    const auto def = msg::RuleEntry::with_priority(kDefaultPriority);
    return {def, msg::RuleOrigin::config, def};
}

msg::RuleEntry TriageEngine::entry_for(const msg::Alert& a, const std::string& view) const
{
    if (a.force_essential) {
        return msg::RuleEntry::make_essential();
    }
    return rule(a.alert_type, view).entry;
}

void TriageEngine::place(View& v, const std::string& view, const msg::Alert& a)
{
    v.members.insert(a.id);
    const auto e = entry_for(a, view);
    if (e.essential) {
        v.essential.emplace(a.raised_at, a.id);
    } else {
        v.ranked.emplace(e.priority, a.raised_at, a.id);
    }
}

void TriageEngine::unplace(View& v, const std::string& view, const msg::Alert& a)
{
    if (v.members.erase(a.id) == 0) {
        return;
    }
    const auto e = entry_for(a, view);
    if (e.essential) {
        v.essential.erase({a.raised_at, a.id});
    } else {
        v.ranked.erase({e.priority, a.raised_at, a.id});
    }
}

std::map<std::string, bool> TriageEngine::submit_alert(const msg::Alert& a)
{
    if (!ever_seen_.insert(a.id).second) {
        throw StateError("triage: duplicate alert id " + std::to_string(a.id));
    }
    if (a.expires_at && *a.expires_at < a.raised_at) {
        ever_seen_.erase(a.id);
        throw ValidationError({"alert " + std::to_string(a.id) + ": expires before it is raised"});
    }
    live_.emplace(a.id, a);
    if (a.expires_at) {
        expiries_.emplace(*a.expires_at, a.id);
    }
    std::map<std::string, bool> out;
    for (auto& [name, v] : views_) {
        ensure_rule(a.alert_type, name);
        place(v, name, a);
        out[name] = displayed(name, a.id);
    }
    return out;
}

bool TriageEngine::retract(msg::AlertId id)
{
    auto it = live_.find(id);
    if (it == live_.end()) {
        return false;
    }
    for (auto& [name, v] : views_) {
        unplace(v, name, it->second);
    }
    if (it->second.expires_at) {
        auto [lo, hi] = expiries_.equal_range(*it->second.expires_at);
        for (auto e = lo; e != hi; ++e) {
            if (e->second == id) {
                expiries_.erase(e);
                break;
            }
        }
    }
    live_.erase(it);
    return true;
}

std::vector<msg::AlertId> TriageEngine::expire(SimTime now)
{
    std::vector<msg::AlertId> gone;
    while (!expiries_.empty() && expiries_.begin()->first <= now) {
        gone.push_back(expiries_.begin()->second);
        expiries_.erase(expiries_.begin());
    }
    for (auto id : gone) {
        auto it = live_.find(id);
        for (auto& [name, v] : views_) {
            unplace(v, name, it->second);
        }
        live_.erase(it);
    }
    std::sort(gone.begin(), gone.end());
    return gone;
}

std::optional<msg::RuleChange> TriageEngine::update_rule(const std::string& alert_type, const std::string& view,
                                                         msg::RuleEntry entry, msg::RuleOrigin origin, SimTime at)
{
    check_entry(entry, "rule (" + alert_type + ", " + view + ")");
    if (entry.essential) {
        entry.priority = 0;
    }
    ensure_rule(alert_type, view);
    auto& r = rules_.at({alert_type, view});
    const auto before = r.entry;
    if (origin == msg::RuleOrigin::human || origin == msg::RuleOrigin::config) {
        r.baseline = entry;
    }
    if (before == entry) {
        r.origin = origin;
        return std::nullopt;
    }

    auto vit = views_.find(view);
    std::vector<const msg::Alert*> affected;
    if (vit != views_.end()) {
        for (const auto& [id, a] : live_) {
            if (a.alert_type == alert_type && vit->second.members.count(id) != 0) {
                unplace(vit->second, view, a);
                affected.push_back(&a);
            }
        }
    }
    r.entry = entry;
    r.origin = origin;
    for (const auto* a : affected) {
        place(vit->second, view, *a);
    }
    return msg::RuleChange{alert_type, view, before, entry, origin, at};
}

std::vector<msg::RuleChange> TriageEngine::shift_rules(int direction, SimTime at)
{
    std::vector<std::tuple<std::string, std::string, msg::RuleEntry>> edits;
    for (const auto& [key, r] : rules_) {
        if (r.entry.essential || r.baseline.essential) {
            continue;
        }
        int p = r.entry.priority;
        if (direction > 0) {
            p = std::min(p + 1, kLowestPriority);
        } else if (direction < 0 && p > r.baseline.priority) {
            p = p - 1;
        } else if (direction < 0 && p < r.baseline.priority) {
            p = p + 1;
        }
        if (p != r.entry.priority) {
            edits.emplace_back(key.first, key.second, msg::RuleEntry::with_priority(p));
        }
    }
    std::vector<msg::RuleChange> out;
    for (const auto& [type, view, entry] : edits) {
        if (auto c = update_rule(type, view, entry, msg::RuleOrigin::machine, at)) {
            out.push_back(*c);
        }
    }
    return out;
}

bool TriageEngine::displayed(const std::string& view, msg::AlertId id) const
{
    auto vit = views_.find(view);
    auto ait = live_.find(id);
    if (vit == views_.end() || ait == live_.end()) {
        return false;
    }
    const auto& v = vit->second;
    const auto& a = ait->second;
    if (v.members.count(id) == 0) {
        return false;
    }
    const auto e = entry_for(a, view);
    if (e.essential) {
        return true;
    }
    std::size_t rank = 0;
    for (const auto& k : v.ranked) {
        if (rank++ >= v.max_threshold) {
            return false;
        }
        if (std::get<2>(k) == id) {
            return true;
        }
    }
    return false;
}

ViewState TriageEngine::state(const std::string& view) const
{
    auto vit = views_.find(view);
    if (vit == views_.end()) {
        throw StateError("triage: unknown view '" + view + "'");
    }
    const auto& v = vit->second;
    ViewState s;
    s.view = view;
    s.max_threshold = v.max_threshold;
    for (const auto& [raised, id] : v.essential) {
        s.displayed.push_back({live_.at(id), true, 0});
    }
    std::size_t rank = 0;
    for (const auto& [prio, raised, id] : v.ranked) {
        if (rank++ < v.max_threshold) {
            s.displayed.push_back({live_.at(id), false, prio});
        } else {
            s.suppressed.push_back(id);
        }
    }
    return s;
}

void to_json(nlohmann::json& j, const ViewState& v)
{
    j = {{"view", v.view}, {"max_threshold", v.max_threshold}, {"displayed", v.displayed},
         {"suppressed", v.suppressed}};
}

void ResponsivenessTracker::record_answered(SimTime latency_ms)
{
    samples_.emplace_back(latency_ms);
    while (samples_.size() > config_.window) {
        samples_.pop_front();
    }
}

void ResponsivenessTracker::record_unanswered()
{
    samples_.emplace_back(std::nullopt);
    while (samples_.size() > config_.window) {
        samples_.pop_front();
    }
}

ResponsivenessMetric ResponsivenessTracker::metric() const
{
    ResponsivenessMetric m;
    m.samples = samples_.size();
    std::size_t answered = 0;
    double total = 0.0;
    for (const auto& s : samples_) {
        if (s) {
            ++answered;
            total += static_cast<double>(*s);
        }
    }
    if (answered > 0) {
        m.mean_response_ms = total / static_cast<double>(answered);
    }
    m.availability = samples_.empty() ? 1.0 : static_cast<double>(answered) / static_cast<double>(samples_.size());
    return m;
}

int frequency_step(const ResponsivenessMetric& m, const ResponsivenessTracker::Config& c)
{
    if (m.samples == 0) {
        return 0;
    }
    if (!m.mean_response_ms) {
        return 1;
    }
    if (*m.mean_response_ms > static_cast<double>(c.lag_ms)) {
        return 1;
    }
    if (*m.mean_response_ms < static_cast<double>(c.recovery_ms)) {
        return -1;
    }
    return 0;
}

std::vector<msg::RuleChange> adapt_frequency(TriageEngine& engine, const ResponsivenessMetric& m,
                                             const ResponsivenessTracker::Config& c, SimTime at)
{
    const int step = frequency_step(m, c);
    if (step == 0) {
        return {};
    }
    return engine.shift_rules(step, at);
}

} // namespace hmt::triage
