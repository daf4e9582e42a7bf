// Copyright 2026 hmtloop Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace hmt {

/// Simulated milliseconds since mission start.
using SimTime = std::int64_t;

} // namespace hmt
