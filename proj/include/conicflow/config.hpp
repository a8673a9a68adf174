#pragma once

#include "conicflow/cross_section.hpp"
#include "conicflow/flow.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace conicflow {

struct ParsedConfig {
    FlowConfig config;
    /// Loaded when `cross_section` names a file; absent for "sphere".
    std::optional<CrossSection> cross_section;
};

/// Strict `key = value` parsing into a validated FlowConfig. Unknown keys,
/// malformed values and constraint violations raise ConfigError; errors tied
/// to a line are prefixed "source:line:".
///
/// Keys: cross_section, n, grid.x_min, grid.x_max, grid.N, grid.p,
/// initial.profile, initial.amplitude, initial.exponent, initial.file,
/// background, boundary, t_end, cfl, dt, checkpoint_interval, stencil_order,
/// series_every, store_every, output_dir, gamma_prime, gamma_bar, weights.u0,
/// weights.gamma, variant.
ParsedConfig parse_config_text(std::string_view text, std::string_view source_name = "<config>");
ParsedConfig parse_config(const std::string& path);

/// Canonical text listing every key; parse_config_text of it reproduces the config.
std::string config_to_text(const FlowConfig& config);

}  // namespace conicflow
