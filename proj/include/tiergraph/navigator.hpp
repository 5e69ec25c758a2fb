#pragma once

#include "tiergraph/corpus.hpp"
#include "tiergraph/graph.hpp"
#include "tiergraph/json.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiergraph {

struct FileHit {
    FileRecord file;
    /// Byte offsets of every (possibly overlapping) occurrence.
    std::vector<std::size_t> offsets;
    friend bool operator==(const FileHit &, const FileHit &) = default;
};

struct SearchResult {
    std::string keyword;
    std::vector<FileHit> code_hits;
    std::vector<FileHit> noncode_hits;
    /// Method ids whose simple name contains the keyword, sorted.
    std::vector<std::string> entry_candidates;
    friend bool operator==(const SearchResult &, const SearchResult &) = default;
};

struct SearchOptions {
    bool case_insensitive = false;
};

/// Every occurrence of `keyword` in `text`, overlapping ones included.
std::vector<std::size_t> find_all(std::string_view text, std::string_view keyword, bool case_insensitive = false);

/// Scans every inventory file. Throws ValidationError for an empty keyword.
/// Files that cannot be read are left out.
SearchResult search(std::string_view keyword, const GraphSnapshot &snapshot, const FileInventory &inventory,
                    const SearchOptions &options = {});

/// Inventory of the files recorded in a snapshot, rooted at the configured project roots.
FileInventory inventory_of(const GraphSnapshot &snapshot, const Config &config);

enum class StopReason { NoMatches, DataLayerReached, ThirdPartyLeaf, AnonymousLeaf, WebServiceProxyLeaf, DepthCap, Unresolved };

std::string_view to_string(StopReason reason);
std::optional<StopReason> parse_stop_reason(std::string_view text);

struct GraphNode {
    std::string id;
    std::string name;
    LayerKind layer = LayerKind::Unknown;
    NodeKind kind = NodeKind::Method;
    friend bool operator==(const GraphNode &, const GraphNode &) = default;
};

struct GraphEdge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::IntraLayer;
    friend bool operator==(const GraphEdge &, const GraphEdge &) = default;
};

struct CallGraph {
    std::string root;
    /// Discovery order; the root comes first.
    std::vector<GraphNode> nodes;
    /// Tree edges only.
    std::vector<GraphEdge> edges;
    /// Edges to nodes already on the path or already placed in the tree.
    std::vector<std::pair<std::string, std::string>> back_edges;
    std::map<std::string, StopReason> stop_reasons;
    friend bool operator==(const CallGraph &, const CallGraph &) = default;
};

inline constexpr std::size_t kDefaultMaxDepth = 64;

struct GraphOptions {
    std::size_t max_depth = kDefaultMaxDepth;
};

/// Accepts a node id or a unique display name ("Ns.Class.Method").
/// Throws NotFoundError when nothing matches, ValidationError when a name
/// matches several overloads.
std::string resolve_entry(std::string_view entry, const GraphSnapshot &snapshot);

/// Depth-first expansion from `entry`. Children follow call-site order. The
/// entry itself is always expanded, even when it belongs to the data layer.
CallGraph generate_call_graph(std::string_view entry, const GraphSnapshot &snapshot, const GraphOptions &options = {});

json to_json_value(const SearchResult &result);
json to_json_value(const CallGraph &graph);
CallGraph call_graph_from_json(const json &value);

std::string to_dot(const CallGraph &graph);

/// "dot" or "json". Throws ValidationError otherwise.
std::string export_graph(const CallGraph &graph, std::string_view format);

} // namespace tiergraph
