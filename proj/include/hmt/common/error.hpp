// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hmt {

/// Base of every error thrown by this library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A document or configuration failed validation. Each issue names the
/// offending field path.
class ValidationError : public Error
{
public:
    explicit ValidationError(std::vector<std::string> issues);

    [[nodiscard]] const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// Malformed inbound message (console command, log line, script).
class ProtocolError : public Error
{
public:
    using Error::Error;
};

/// Operation invoked in a state that does not allow it.
class StateError : public Error
{
public:
    using Error::Error;
};

} // namespace hmt
