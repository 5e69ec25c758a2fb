#pragma once

#include "tiergraph/layer.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiergraph {

struct LayerBinding {
    std::string namespace_prefix;
    LayerKind layer = LayerKind::Unknown;

    friend bool operator==(const LayerBinding &, const LayerBinding &) = default;
};

struct ProjectConfig {
    std::string project_id;
    std::filesystem::path root_path;
    std::vector<LayerBinding> layer_bindings;
    /// Extensions without the leading dot, lowercase.
    std::set<std::string> non_code_extensions;
    std::vector<std::string> webservice_proxy_markers;
    std::vector<std::string> third_party_namespaces;

    friend bool operator==(const ProjectConfig &, const ProjectConfig &) = default;
};

struct Config {
    std::vector<ProjectConfig> projects;
    std::filesystem::path data_dir;
    /// Added to the builtin type list used for composition detection.
    std::vector<std::string> extra_builtin_types;

    const ProjectConfig *find_project(std::string_view project_id) const;
};

/// Environment variable consulted when no config path is given explicitly.
inline constexpr const char *kConfigEnvVar = "TIERGRAPH_CONFIG";

/// Parse a JSON config document. Relative paths resolve against `base_dir`.
/// Throws ConfigError on schema violations or duplicate layer prefixes.
Config parse_config(std::string_view json_text, const std::filesystem::path &base_dir);
Config load_config(const std::filesystem::path &path);

/// Explicit path wins over TIERGRAPH_CONFIG; throws ConfigError when neither is set.
std::filesystem::path resolve_config_path(const std::string &cli_value);

/// True when `name` equals `prefix` or starts with `prefix` followed by '.'.
bool namespace_matches(std::string_view name, std::string_view prefix);

/// Longest matching prefix over the layer bindings and third-party namespaces.
/// A third-party match wins only when strictly longer than every binding match.
LayerKind layer_of(std::string_view ns, const ProjectConfig &config);

} // namespace tiergraph
