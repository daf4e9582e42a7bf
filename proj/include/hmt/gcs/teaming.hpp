// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace hmt::gcs {

struct TeamingFactor
{
    std::string id;
    std::string name;
    std::string summary;
};

/// TF1..TF8 in order.
const std::vector<TeamingFactor>& teaming_factors();

struct ServiceDeclaration
{
    std::string service;
    std::vector<std::string> factors;
};

/// Which runtime-model service supports which teaming factors.
const std::vector<ServiceDeclaration>& service_declarations();

/// Problems with the declarations: services claiming nothing, unknown
/// factor ids, factors nobody claims. Empty when complete.
std::vector<std::string> traceability_gaps(const std::vector<ServiceDeclaration>& decls);

nlohmann::json traceability_json();

} // namespace hmt::gcs
