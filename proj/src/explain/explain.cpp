// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/explain/explain.hpp"

#include <algorithm>
#include <cctype>

namespace hmt::explain {

using msg::Initiator;
using msg::Trigger;

RenderError::RenderError(std::string slot)
    : Error("explanation slot {" + slot + "} has no snippet"), slot_(std::move(slot))
{
}

std::vector<std::string> ExplanationTemplate::slots() const
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = pattern.find('{', pos)) != std::string::npos) {
        const auto end = pattern.find('}', pos);
        out.push_back(pattern.substr(pos + 1, end - pos - 1));
        pos = end + 1;
    }
    return out;
}

const std::vector<ExplanationTemplate>& templates()
{
    static const std::vector<ExplanationTemplate> kTemplates{
        {Trigger::external, Initiator::machine,
         "UAV-{id/color} identified {Event} in the environment. Therefore, adapting {Action - internal changes} to "
         "{Rationale}"},
        {Trigger::external, Initiator::human,
         "UAV-{id/color} identified {Event} in the environment. Therefore, need {Desired Changes} to {Rationale}"},
        {Trigger::internal, Initiator::machine,
         "UAV-{id/color} observed {Event}. Therefore, {Action - internal changes} to {Rationale}"},
        {Trigger::internal, Initiator::human,
         "UAV-{id/color} observed {Event} due to {cause}. Therefore, need {Desired Changes} to {Rationale}"},
    };
    return kTemplates;
}

const ExplanationTemplate& select_template(Trigger trigger, Initiator initiator)
{
    for (const auto& t : templates()) {
        if (t.trigger == trigger && t.initiator == initiator) {
            return t;
        }
    }
    throw Error("no explanation template");  // unreachable: the table covers all four
}

const ExplanationTemplate& select_template(const msg::AdaptationEvent& e)
{
    return select_template(e.trigger, e.initiator);
}

std::string display_name(const msg::AdaptationEvent& e)
{
    std::string name = e.color.empty() ? e.uav : e.color;
    if (!name.empty()) {
        name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    }
    return name;
}

namespace {

const std::string& require(const std::optional<std::string>& v, const char* slot)
{
    if (!v || v->empty()) {
        throw RenderError(slot);
    }
    return *v;
}

const std::string& require(const std::string& v, const char* slot)
{
    if (v.empty()) {
        throw RenderError(slot);
    }
    return v;
}

} // namespace

msg::ExplanationMessage render(const msg::AdaptationEvent& e, SimTime rendered_at)
{
    const auto& tmpl = select_template(e);
    const auto name = display_name(e);
    std::string text;
    std::size_t pos = 0;
    while (pos < tmpl.pattern.size()) {
        const auto open = tmpl.pattern.find('{', pos);
        if (open == std::string::npos) {
            text.append(tmpl.pattern, pos);
            break;
        }
        text.append(tmpl.pattern, pos, open - pos);
        const auto close = tmpl.pattern.find('}', open);
        const auto slot = tmpl.pattern.substr(open + 1, close - open - 1);
        if (slot == "id/color") {
            text += require(name, "id/color");
        } else if (slot == "Event") {
            text += require(e.event_snippet, "Event");
        } else if (slot == "Action - internal changes") {
            text += require(e.action_snippet, "Action - internal changes");
        } else if (slot == "Desired Changes") {
            text += require(e.desired_changes_snippet, "Desired Changes");
        } else if (slot == "Rationale") {
            text += require(e.rationale_snippet, "Rationale");
        } else if (slot == "cause") {
            text += require(e.cause_snippet, "cause");
        }
        pos = close + 1;
    }
    return {e.uav, std::move(text), e.initiator == Initiator::human, e.at, rendered_at};
}

msg::ExplanationMessage ExplanationLog::add(const msg::AdaptationEvent& e, SimTime rendered_at)
{
    auto m = render(e, rendered_at);
    append(m);
    return m;
}

void ExplanationLog::append(msg::ExplanationMessage m)
{
    const std::lock_guard lock(mutex_);
    entries_.push_back(std::move(m));
}

std::vector<msg::ExplanationMessage> ExplanationLog::feed(const FeedFilter& f) const
{
    std::vector<msg::ExplanationMessage> out;
    {
        const std::lock_guard lock(mutex_);
        for (const auto& m : entries_) {
            if ((f.from && m.rendered_at < *f.from) || (f.to && m.rendered_at >= *f.to) ||
                (f.uav && m.uav != *f.uav)) {
                continue;
            }
            out.push_back(m);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.rendered_at < b.rendered_at; });
    return out;
}

std::size_t ExplanationLog::size() const
{
    const std::lock_guard lock(mutex_);
    return entries_.size();
}

} // namespace hmt::explain
