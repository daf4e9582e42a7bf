// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hmt/common/rng.hpp"
#include "hmt/gcs/mission.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hmt::harness {

struct FixedDelay
{
    SimTime ms = 0;
};

struct UniformDelay
{
    SimTime lo = 0;
    SimTime hi = 0;
};

using DelayModel = std::variant<FixedDelay, UniformDelay>;

struct AlwaysConfirm
{
};
struct AlwaysReject
{
};
/// Confirms real victims and rejects decoys with the given accuracy.
struct GroundTruthOracle
{
    double accuracy = 1.0;
};

using DecisionPolicy = std::variant<AlwaysConfirm, AlwaysReject, GroundTruthOracle>;

struct ScheduledDirective
{
    SimTime at = 0;
    msg::HumanDirective directive;
    bool rc = false;
    bool abort = false;
};

struct HumanScript
{
    double availability = 1.0;
    DelayModel response_delay = FixedDelay{1000};
    DecisionPolicy decision_policy = AlwaysConfirm{};
    std::vector<ScheduledDirective> directives;
};

/// Throws ValidationError listing every problem.
HumanScript parse_human_script(const nlohmann::json& j, const gcs::MissionSpec& spec);
HumanScript load_human_script(const std::string& path, const gcs::MissionSpec& spec);

/// One prompt the scripted human saw and what it did about it.
struct PromptRecord
{
    std::string session;
    SimTime prompted_at = 0;
    bool answered = false;
    SimTime delay = 0;
    std::optional<SimTime> sent_at;
    msg::SessionDecision decision = msg::SessionDecision::confirm;
};

/// Scripted operator. Sees help requests on the coordination topics,
/// answers them per the script, and issues timed directives. Every command
/// carries the version of the latest frame the GCS has produced.
class ScriptedHuman : public gcs::Actor
{
public:
    ScriptedHuman(HumanScript script, const gcs::MissionSpec& spec, std::uint64_t seed);

    [[nodiscard]] std::string name() const override { return "human"; }
    [[nodiscard]] std::vector<std::string> subscriptions() const override;
    void receive(const bus::Envelope& env, SimTime at) override;
    std::vector<agent::Outbound> step(SimTime now, const gcs::Gcs& gcs) override;

    [[nodiscard]] const std::vector<PromptRecord>& prompts() const { return prompts_; }

private:
    HumanScript script_;
    std::map<std::string, bool, std::less<>> victims_;
    Rng rng_;
    std::vector<PromptRecord> prompts_;
    std::size_t next_directive_ = 0;
    std::uint64_t commands_ = 0;
};

} // namespace hmt::harness
