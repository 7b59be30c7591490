// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace cachesched {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace cachesched
