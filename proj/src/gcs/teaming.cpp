// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/gcs/teaming.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace hmt::gcs {

const std::vector<TeamingFactor>& teaming_factors()
{
    static const std::vector<TeamingFactor> kFactors{
        {"TF1", "Observability", "the operator can see what each UAV is doing and how far along it is"},
        {"TF2", "Predictability", "upcoming states and intended actions are visible ahead of time"},
        {"TF3", "Directing Attention", "critical problems are pushed to the operator as alerts"},
        {"TF4", "Solution Exploration", "both partners can inspect alternatives, history and multiple views"},
        {"TF5", "Adaptability", "the team reconfigures itself as the situation changes"},
        {"TF6", "Directability", "the operator can redirect a UAV's tasks, resources and priorities"},
        {"TF7", "Calibrated Trust", "machine competence is scored in context and shown to the operator"},
        {"TF8", "Common Ground", "both sides share beliefs about state, intent and reasons"},
    };
    return kFactors;
}

const std::vector<ServiceDeclaration>& service_declarations()
{
    static const std::vector<ServiceDeclaration> kDecls{
        {"fleet-model", {"TF1", "TF2"}},
        {"alert-triage", {"TF3", "TF5"}},
        {"explanation-engine", {"TF2", "TF4", "TF8"}},
        {"coordination-sessions", {"TF6", "TF7"}},
        {"affordances", {"TF6", "TF8"}},
        {"tug-of-war", {"TF5", "TF6"}},
        {"state-stream", {"TF1", "TF4"}},
    };
    return kDecls;
}

std::vector<std::string> traceability_gaps(const std::vector<ServiceDeclaration>& decls)
{
    std::vector<std::string> gaps;
    std::set<std::string> known;
    for (const auto& f : teaming_factors()) {
        known.insert(f.id);
    }
    std::set<std::string> claimed;
    for (const auto& d : decls) {
        if (d.factors.empty()) {
            gaps.push_back(d.service + ": claims no teaming factor");
        }
        for (const auto& f : d.factors) {
            if (known.count(f) == 0) {
                gaps.push_back(d.service + ": unknown factor " + f);
            }
            claimed.insert(f);
        }
    }
    for (const auto& f : known) {
        if (claimed.count(f) == 0) {
            gaps.push_back(f + ": not claimed by any service");
        }
    }
    return gaps;
}

nlohmann::json traceability_json()
{
    auto factors = nlohmann::json::array();
    for (const auto& f : teaming_factors()) {
        std::vector<std::string> services;
        for (const auto& d : service_declarations()) {
            if (std::find(d.factors.begin(), d.factors.end(), f.id) != d.factors.end()) {
                services.push_back(d.service);
            }
        }
        factors.push_back({{"id", f.id}, {"name", f.name}, {"summary", f.summary}, {"services", services}});
    }
    auto services = nlohmann::json::array();
    for (const auto& d : service_declarations()) {
        services.push_back({{"service", d.service}, {"factors", d.factors}});
    }
    return {{"factors", std::move(factors)}, {"services", std::move(services)}};
}

} // namespace hmt::gcs
