// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/error.hpp"
#include "hmt/msg/messages.hpp"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hmt::explain {

/// An event lacks a snippet its template needs. slot() names it.
class RenderError : public Error
{
public:
    explicit RenderError(std::string slot);

    [[nodiscard]] const std::string& slot() const noexcept { return slot_; }

private:
    std::string slot_;
};

struct ExplanationTemplate
{
    msg::Trigger trigger = msg::Trigger::external;
    msg::Initiator initiator = msg::Initiator::machine;
    std::string pattern;

    /// Slot names in order of appearance, without braces.
    [[nodiscard]] std::vector<std::string> slots() const;
};

/// The four templates, one per (trigger, initiator).
const std::vector<ExplanationTemplate>& templates();

const ExplanationTemplate& select_template(msg::Trigger trigger, msg::Initiator initiator);
const ExplanationTemplate& select_template(const msg::AdaptationEvent& e);

/// "Blue" for color "blue"; the id when no color is set.
std::string display_name(const msg::AdaptationEvent& e);

/// Fills every slot with its snippet verbatim. Throws RenderError.
msg::ExplanationMessage render(const msg::AdaptationEvent& e, SimTime rendered_at);

struct FeedFilter
{
    std::optional<SimTime> from;
    std::optional<SimTime> to;
    std::optional<std::string> uav;
};

/// Append-only explanation log.
class ExplanationLog
{
public:
    /// Renders and appends. Throws RenderError without appending.
    msg::ExplanationMessage add(const msg::AdaptationEvent& e, SimTime rendered_at);
    void append(msg::ExplanationMessage m);

    /// Matching entries ordered by rendered_at, insertion order on ties.
    /// `from` inclusive, `to` exclusive.
    [[nodiscard]] std::vector<msg::ExplanationMessage> feed(const FeedFilter& f = {}) const;
    [[nodiscard]] std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::vector<msg::ExplanationMessage> entries_;
};

} // namespace hmt::explain
