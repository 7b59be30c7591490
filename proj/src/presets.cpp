// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/presets.hpp"

#include <string>

#include "cachesched/errors.hpp"

namespace cachesched {

std::optional<ModelPreset> lookup_preset(std::string_view name) {
    if (name == "custom") {
        return std::nullopt;
    }
    for (const auto& p : kModelPresets) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset '" + std::string(name) +
                      "' (expected cogvideox15, hunyuanvideo, wan21 or custom)");
}

}  // namespace cachesched
