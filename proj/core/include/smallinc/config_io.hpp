#pragma once

#include <stdexcept>
#include <string>

#include "smallinc/energy.hpp"
#include "smallinc/scene.hpp"

namespace smallinc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SceneConfig {
    Scene scene;
    EnergyWeight energy_weight = EnergyWeight::paper;
};

/// Parse a scene config from JSON text. Unknown keys are rejected with a
/// ConfigError naming the offending key path. Voxel shape paths are
/// resolved relative to base_dir.
SceneConfig parse_scene_config(const std::string& json_text,
                               const std::string& base_dir = ".");

SceneConfig load_scene_config(const std::string& path);

} // namespace smallinc
