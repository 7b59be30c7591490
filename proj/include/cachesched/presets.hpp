// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace cachesched {

/// Published per-model settings for the complexity-aware threshold and the CFG cache.
struct ModelPreset {
    std::string_view name;
    double k;
    double delta_min;
    double delta_max;
    double delta_cfg;
    bool cfg_enabled;  ///< false for models distilled without CFG
};

inline constexpr std::array<ModelPreset, 3> kModelPresets{{
    {"cogvideox15", 50.0, 0.2, 0.3, 0.02, true},
    {"hunyuanvideo", 200.0, 0.1, 0.15, 0.02, false},
    {"wan21", 50.0, 0.1, 0.23, 0.02, true},
}};

/// Preset by name; "custom" yields nullopt. Unknown names throw ConfigError.
std::optional<ModelPreset> lookup_preset(std::string_view name);

}  // namespace cachesched
