#pragma once

#include "tiergraph/config.hpp"
#include "tiergraph/corpus.hpp"
#include "tiergraph/diagnostics.hpp"
#include "tiergraph/layer.hpp"
#include "tiergraph/model.hpp"
#include "tiergraph/resolver.hpp"

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace tiergraph {

enum class NodeKind { Class, Method, Property, External, Lambda, Unresolved };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

struct Node {
    std::string id;
    std::string name;
    NodeKind kind = NodeKind::Class;
    LayerKind layer = LayerKind::Unknown;
    /// Empty for external and unresolved targets.
    std::string project_id;
    std::string file;
    friend bool operator==(const Node &, const Node &) = default;
};

struct ProjectCounts {
    std::size_t class_count = 0;
    std::size_t function_count = 0;
    std::size_t property_count = 0;
    std::size_t edge_count = 0;
    /// Project-owned nodes plus outgoing edges.
    std::size_t graph_size() const { return class_count + function_count + property_count + edge_count; }
    friend bool operator==(const ProjectCounts &, const ProjectCounts &) = default;
};

using Clock = std::chrono::system_clock;

struct GraphSnapshot {
    std::string snapshot_id;
    /// UTC, "YYYY-MM-DDTHH:MM:SSZ".
    std::string created_at;
    std::string corpus_hash;
    std::vector<FileRecord> files;
    /// Sorted by id.
    std::vector<Node> nodes;
    /// Sorted by (from, offset, to, kind).
    std::vector<ResolvedEdge> edges;
    std::map<std::string, ProjectCounts> per_project_counts;
    Diagnostics diagnostics;
    std::map<std::string, std::size_t> diagnostics_summary;

    const Node *find_node(std::string_view id) const;
    /// Everything except snapshot_id and created_at.
    bool same_content(const GraphSnapshot &other) const;
    friend bool operator==(const GraphSnapshot &, const GraphSnapshot &) = default;
};

std::string format_timestamp(Clock::time_point t);
/// Accepts "YYYY-MM-DDTHH:MM:SSZ" or "YYYY-MM-DD" (midnight). Throws ValidationError.
Clock::time_point parse_timestamp(std::string_view text);

/// Extraction results keyed by (project, path, content hash). Reusing it across
/// rebuilds skips unchanged files.
class ExtractionCache {
public:
    const FileModel *find(const FileRecord &record) const;
    void store(const FileRecord &record, FileModel model);
    /// Drops entries not present in `inventory`.
    void retain(const FileInventory &inventory);
    std::size_t size() const;
    std::size_t hits() const;

private:
    using Key = std::tuple<std::string, std::string, std::string>;
    mutable std::mutex mutex_;
    std::map<Key, FileModel> entries_;
    mutable std::size_t hits_ = 0;
};

/// Model path used for files and classes: "<project>/<relative path>".
std::string model_path(const FileRecord &record);

/// Extracts every code-behind file of the inventory.
std::vector<FileModel> extract_inventory(const FileInventory &inventory, const Config &config,
                                         ExtractionCache *cache = nullptr);

/// Assembles nodes, edges and counts from extracted models.
GraphSnapshot assemble_snapshot(const FileInventory &inventory, const std::vector<FileModel> &models,
                                const Config &config, Clock::time_point created_at);

/// Full pipeline: scan, extract, index, resolve, assemble. Does not persist.
/// Throws ConfigError when a project root is missing.
GraphSnapshot build_snapshot(const Config &config, Clock::time_point created_at, ExtractionCache *cache = nullptr);

/// Recomputes per-project counts from nodes and edges.
std::map<std::string, ProjectCounts> count_by_project(const std::vector<Node> &nodes,
                                                      const std::vector<ResolvedEdge> &edges);

/// Throws IntegrityError when an edge endpoint is not a node or counts disagree.
void check_integrity(const GraphSnapshot &snapshot);

} // namespace tiergraph
