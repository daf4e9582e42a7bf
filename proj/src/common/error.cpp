// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#include "hmt/common/error.hpp"

namespace hmt {

namespace {

std::string join_issues(const std::vector<std::string>& issues)
{
    std::string out = "validation failed";
    for (const auto& issue : issues) {
        out += "\n  - ";
        out += issue;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues))
{
}

} // namespace hmt
