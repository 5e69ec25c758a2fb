#include "tiergraph/config.hpp"

#include "tiergraph/corpus.hpp"
#include "tiergraph/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>

namespace tiergraph {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json &node, const char *key, const std::string &where) {
    std::vector<std::string> out;
    if (!node.contains(key))
        return out;
    const auto &list = node.at(key);
    if (!list.is_array())
        throw ConfigError(where + ": '" + key + "' must be an array of strings");
    for (const auto &item : list) {
        if (!item.is_string())
            throw ConfigError(where + ": '" + key + "' must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::string normalize_extension(std::string ext) {
    if (!ext.empty() && ext.front() == '.')
        ext.erase(0, 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

ProjectConfig parse_project(const json &node, const std::filesystem::path &base_dir, std::size_t index) {
    std::string where = "projects[" + std::to_string(index) + "]";
    if (!node.is_object())
        throw ConfigError(where + ": expected an object");
    if (!node.contains("id") || !node.at("id").is_string())
        throw ConfigError(where + ": missing string 'id'");
    if (!node.contains("root") || !node.at("root").is_string())
        throw ConfigError(where + ": missing string 'root'");

    ProjectConfig project;
    project.project_id = node.at("id").get<std::string>();
    where = "project '" + project.project_id + "'";
    std::filesystem::path root = node.at("root").get<std::string>();
    project.root_path = root.is_absolute() ? root : base_dir / root;
    project.root_path = project.root_path.lexically_normal();

    if (node.contains("layers")) {
        const auto &layers = node.at("layers");
        if (!layers.is_array())
            throw ConfigError(where + ": 'layers' must be an array");
        for (const auto &binding : layers) {
            if (!binding.is_object() || !binding.contains("prefix") || !binding.contains("layer"))
                throw ConfigError(where + ": each layer binding needs 'prefix' and 'layer'");
            auto prefix = binding.at("prefix").get<std::string>();
            auto layer_name = binding.at("layer").get<std::string>();
            auto layer = parse_layer(layer_name);
            if (!layer || (*layer != LayerKind::UI && *layer != LayerKind::Business && *layer != LayerKind::Data &&
                           *layer != LayerKind::WebService))
                throw ConfigError(where + ": layer '" + layer_name + "' is not one of UI, Business, Data, WebService");
            if (prefix.empty())
                throw ConfigError(where + ": empty namespace prefix");
            bool duplicate = std::any_of(project.layer_bindings.begin(), project.layer_bindings.end(),
                                         [&](const LayerBinding &b) { return b.namespace_prefix == prefix; });
            if (duplicate)
                throw ConfigError(where + ": duplicate layer prefix '" + prefix + "'");
            project.layer_bindings.push_back({prefix, *layer});
        }
    }

    for (auto &ext : string_list(node, "non_code_extensions", where))
        project.non_code_extensions.insert(normalize_extension(ext));
    project.webservice_proxy_markers = string_list(node, "webservice_proxy_markers", where);
    project.third_party_namespaces = string_list(node, "third_party_namespaces", where);
    return project;
}

} // namespace

const ProjectConfig *Config::find_project(std::string_view project_id) const {
    for (const auto &p : projects)
        if (p.project_id == project_id)
            return &p;
    return nullptr;
}

Config parse_config(std::string_view json_text, const std::filesystem::path &base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("projects") || !doc.at("projects").is_array())
        throw ConfigError("config must be an object with a 'projects' array");

    Config config;
    try {
        std::size_t index = 0;
        for (const auto &node : doc.at("projects"))
            config.projects.push_back(parse_project(node, base_dir, index++));
        std::filesystem::path data_dir = doc.value("data_dir", std::string(".tiergraph"));
        config.data_dir = (data_dir.is_absolute() ? data_dir : base_dir / data_dir).lexically_normal();
        config.extra_builtin_types = string_list(doc, "builtin_types", "config");
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }

    for (std::size_t i = 0; i < config.projects.size(); ++i)
        for (std::size_t j = i + 1; j < config.projects.size(); ++j)
            if (config.projects[i].project_id == config.projects[j].project_id)
                throw ConfigError("duplicate project id '" + config.projects[i].project_id + "'");
    return config;
}

Config load_config(const std::filesystem::path &path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error &) {
        throw ConfigError("cannot read config file " + path.string());
    }
    auto base = std::filesystem::absolute(path).parent_path();
    return parse_config(text, base);
}

std::filesystem::path resolve_config_path(const std::string &cli_value) {
    if (!cli_value.empty())
        return cli_value;
    if (const char *env = std::getenv(kConfigEnvVar); env && *env)
        return env;
    throw ConfigError(std::string("no config given: pass --config or set ") + kConfigEnvVar);
}

bool namespace_matches(std::string_view name, std::string_view prefix) {
    if (prefix.empty() || name.size() < prefix.size() || name.substr(0, prefix.size()) != prefix)
        return false;
    return name.size() == prefix.size() || name[prefix.size()] == '.';
}

LayerKind layer_of(std::string_view ns, const ProjectConfig &config) {
    LayerKind best = LayerKind::Unknown;
    std::size_t best_len = 0;
    for (const auto &binding : config.layer_bindings) {
        if (namespace_matches(ns, binding.namespace_prefix) && binding.namespace_prefix.size() > best_len) {
            best = binding.layer;
            best_len = binding.namespace_prefix.size();
        }
    }
    for (const auto &prefix : config.third_party_namespaces) {
        if (namespace_matches(ns, prefix) && prefix.size() > best_len) {
            best = LayerKind::ThirdParty;
            best_len = prefix.size();
        }
    }
    return best;
}

} // namespace tiergraph
