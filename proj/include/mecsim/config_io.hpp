#ifndef MECSIM_CONFIG_IO_HPP
#define MECSIM_CONFIG_IO_HPP

#include <string>

#include <json.hpp>

#include "mecsim/model.hpp"

namespace mecsim {

// JSON (de)serialization for the two external input files: the scenario
// config and the device/task catalog.  Unknown scenario keys are rejected so
// a typo in an override never silently no-ops.

Catalog catalog_from_json(const nlohmann::json& j);
Catalog load_catalog(const std::string& path);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

// Loads the config and returns it together with the catalog it references
// ("catalog" path resolved relative to the config file's directory).
struct LoadedConfig {
  Scenario scenario;
  Catalog catalog;
  nlohmann::json raw;  // post-override JSON, for provenance dumps
};
LoadedConfig load_config(const std::string& path,
                         const std::vector<std::string>& overrides = {});

// Applies one "--set key=value" override; dots descend into nested objects
// ("cluster_spec.radius=50").  The value is parsed as JSON when possible and
// falls back to a plain string.  Throws when the key does not already exist.
void apply_override(nlohmann::json& config, const std::string& keyval);

}  // namespace mecsim

#endif  // MECSIM_CONFIG_IO_HPP
