#include "tiergraph/navigator.hpp"

#include "tiergraph/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <unordered_map>

namespace tiergraph {

namespace {

constexpr std::array kStopReasonNames = {"NoMatches",           "DataLayerReached", "ThirdPartyLeaf", "AnonymousLeaf",
                                         "WebServiceProxyLeaf", "DepthCap",         "Unresolved"};

char fold(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string simple_name(std::string_view display) {
    auto dot = display.rfind('.');
    return std::string(dot == std::string_view::npos ? display : display.substr(dot + 1));
}

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

class Expander {
public:
    Expander(const GraphSnapshot &snapshot, const GraphOptions &options) : snap_(snapshot), options_(options) {
        for (const auto &e : snap_.edges)
            out_[e.from].push_back(&e);
    }

    CallGraph run(const std::string &root) {
        graph_.root = root;
        add_node(root);
        expand(root, 0, true);
        return std::move(graph_);
    }

private:
    void add_node(const std::string &id) {
        const auto *n = snap_.find_node(id);
        GraphNode g;
        g.id = id;
        if (n) {
            g.name = n->name;
            g.layer = n->layer;
            g.kind = n->kind;
        } else {
            g.name = node_display_name(id);
            g.kind = NodeKind::Unresolved;
        }
        placed_.insert(id);
        graph_.nodes.push_back(std::move(g));
    }

    std::optional<StopReason> leaf_reason(const std::string &id, std::size_t depth, bool is_root) const {
        const auto *n = snap_.find_node(id);
        if (!n)
            return StopReason::Unresolved;
        switch (n->kind) {
        case NodeKind::External:
            return StopReason::ThirdPartyLeaf;
        case NodeKind::Lambda:
            return StopReason::AnonymousLeaf;
        case NodeKind::Unresolved:
            return StopReason::Unresolved;
        default:
            break;
        }
        if (n->layer == LayerKind::WebService)
            return StopReason::WebServiceProxyLeaf;
        if (n->layer == LayerKind::ThirdParty)
            return StopReason::ThirdPartyLeaf;
        if (n->layer == LayerKind::Data && !is_root)
            return StopReason::DataLayerReached;
        auto it = out_.find(id);
        if (it == out_.end() || it->second.empty())
            return StopReason::NoMatches;
        if (depth >= options_.max_depth)
            return StopReason::DepthCap;
        return std::nullopt;
    }

    void expand(const std::string &id, std::size_t depth, bool is_root) {
        if (auto reason = leaf_reason(id, depth, is_root)) {
            graph_.stop_reasons[id] = *reason;
            return;
        }
        std::set<std::string> seen_children;
        bool has_tree_child = false;
        for (const auto *e : out_.at(id)) {
            if (!seen_children.insert(e->to).second)
                continue;
            if (placed_.count(e->to)) {
                graph_.back_edges.emplace_back(id, e->to);
                continue;
            }
            add_node(e->to);
            graph_.edges.push_back({id, e->to, e->kind});
            has_tree_child = true;
            expand(e->to, depth + 1, false);
        }
        if (!has_tree_child)
            graph_.stop_reasons[id] = StopReason::NoMatches;
    }

    const GraphSnapshot &snap_;
    GraphOptions options_;
    std::unordered_map<std::string, std::vector<const ResolvedEdge *>> out_;
    std::set<std::string> placed_;
    CallGraph graph_;
};

} // namespace

std::vector<std::size_t> find_all(std::string_view text, std::string_view keyword, bool case_insensitive) {
    std::vector<std::size_t> offsets;
    if (keyword.empty() || keyword.size() > text.size())
        return offsets;
    if (!case_insensitive) {
        for (auto pos = text.find(keyword); pos != std::string_view::npos; pos = text.find(keyword, pos + 1))
            offsets.push_back(pos);
        return offsets;
    }
    for (std::size_t i = 0; i + keyword.size() <= text.size(); ++i) {
        std::size_t k = 0;
        while (k < keyword.size() && fold(text[i + k]) == fold(keyword[k]))
            ++k;
        if (k == keyword.size())
            offsets.push_back(i);
    }
    return offsets;
}

FileInventory inventory_of(const GraphSnapshot &snapshot, const Config &config) {
    FileInventory inv;
    inv.files = snapshot.files;
    for (const auto &p : config.projects)
        inv.project_roots[p.project_id] = p.root_path;
    return inv;
}

SearchResult search(std::string_view keyword, const GraphSnapshot &snapshot, const FileInventory &inventory,
                    const SearchOptions &options) {
    if (keyword.empty())
        throw ValidationError("search keyword must not be empty");
    SearchResult result;
    result.keyword = std::string(keyword);
    for (const auto &record : inventory.files) {
        std::string text;
        try {
            text = read_file(inventory.absolute_path(record));
        } catch (const Error &) {
            continue;
        }
        auto offsets = find_all(text, keyword, options.case_insensitive);
        if (offsets.empty())
            continue;
        auto &bucket = record.category == FileCategory::CodeBehind ? result.code_hits : result.noncode_hits;
        bucket.push_back({record, std::move(offsets)});
    }
    for (const auto &n : snapshot.nodes) {
        if (n.kind != NodeKind::Method)
            continue;
        if (!find_all(simple_name(n.name), keyword, options.case_insensitive).empty())
            result.entry_candidates.push_back(n.id);
    }
    return result;
}

std::string_view to_string(StopReason reason) { return kStopReasonNames[static_cast<std::size_t>(reason)]; }

std::optional<StopReason> parse_stop_reason(std::string_view text) {
    for (std::size_t i = 0; i < kStopReasonNames.size(); ++i)
        if (text == kStopReasonNames[i])
            return static_cast<StopReason>(i);
    return std::nullopt;
}

std::string resolve_entry(std::string_view entry, const GraphSnapshot &snapshot) {
    if (entry.empty())
        throw ValidationError("entry must not be empty");
    if (const auto *n = snapshot.find_node(entry);
        n && (n->kind == NodeKind::Method || n->kind == NodeKind::Property))
        return n->id;
    std::vector<std::string> matches;
    for (const auto &n : snapshot.nodes)
        if ((n.kind == NodeKind::Method || n.kind == NodeKind::Property) && n.name == entry)
            matches.push_back(n.id);
    if (matches.empty())
        throw NotFoundError("unknown entry '" + std::string(entry) + "'");
    if (matches.size() > 1) {
        std::string list;
        for (const auto &m : matches)
            list += (list.empty() ? "" : ", ") + m;
        throw ValidationError("entry '" + std::string(entry) + "' is ambiguous: " + list);
    }
    return matches.front();
}

CallGraph generate_call_graph(std::string_view entry, const GraphSnapshot &snapshot, const GraphOptions &options) {
    auto root = resolve_entry(entry, snapshot);
    return Expander(snapshot, options).run(root);
}

json to_json_value(const SearchResult &result) {
    auto hits = [](const std::vector<FileHit> &list) {
        json arr = json::array();
        for (const auto &h : list) {
            json j = h.file;
            j["offsets"] = h.offsets;
            arr.push_back(std::move(j));
        }
        return arr;
    };
    return json{{"keyword", result.keyword},
                {"code_hits", hits(result.code_hits)},
                {"noncode_hits", hits(result.noncode_hits)},
                {"entry_candidates", result.entry_candidates}};
}

json to_json_value(const CallGraph &graph) {
    json nodes = json::array();
    for (const auto &n : graph.nodes)
        nodes.push_back({{"id", n.id},
                         {"name", n.name},
                         {"layer", std::string(to_string(n.layer))},
                         {"kind", std::string(to_string(n.kind))}});
    json edges = json::array();
    for (const auto &e : graph.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", std::string(to_string(e.kind))}});
    json back = json::array();
    for (const auto &[from, to] : graph.back_edges)
        back.push_back({{"from", from}, {"to", to}});
    json stops = json::object();
    for (const auto &[id, reason] : graph.stop_reasons)
        stops[id] = std::string(to_string(reason));
    return json{{"root", graph.root}, {"nodes", nodes}, {"edges", edges}, {"back_edges", back}, {"stop_reasons", stops}};
}

CallGraph call_graph_from_json(const json &value) {
    auto need = [](auto parsed, const std::string &text, const char *what) {
        if (!parsed)
            throw ValidationError(std::string("unknown ") + what + " '" + text + "'");
        return *parsed;
    };
    CallGraph g;
    try {
        g.root = value.at("root").get<std::string>();
        for (const auto &n : value.at("nodes")) {
            auto layer = n.at("layer").get<std::string>();
            auto kind = n.at("kind").get<std::string>();
            g.nodes.push_back({n.at("id").get<std::string>(), n.at("name").get<std::string>(),
                               need(parse_layer(layer), layer, "layer"), need(parse_node_kind(kind), kind, "node kind")});
        }
        for (const auto &e : value.at("edges")) {
            auto kind = e.at("kind").get<std::string>();
            g.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                               need(parse_edge_kind(kind), kind, "edge kind")});
        }
        for (const auto &b : value.at("back_edges"))
            g.back_edges.emplace_back(b.at("from").get<std::string>(), b.at("to").get<std::string>());
        for (const auto &[id, reason] : value.at("stop_reasons").items()) {
            auto text = reason.get<std::string>();
            g.stop_reasons[id] = need(parse_stop_reason(text), text, "stop reason");
        }
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed call graph: ") + e.what());
    }
    return g;
}

std::string to_dot(const CallGraph &graph) {
    std::map<LayerKind, std::vector<const GraphNode *>> by_layer;
    for (const auto &n : graph.nodes)
        by_layer[n.layer].push_back(&n);
    std::string out = "digraph callgraph {\n  rankdir=TB;\n  node [shape=box];\n";
    for (const auto &[layer, nodes] : by_layer) {
        auto name = std::string(to_string(layer));
        out += "  subgraph \"cluster_" + name + "\" {\n    label=\"" + name + "\";\n";
        for (const auto *n : nodes) {
            out += "    \"" + dot_escape(n->id) + "\" [label=\"" + dot_escape(n->name) + "\"";
            if (auto it = graph.stop_reasons.find(n->id); it != graph.stop_reasons.end())
                out += ", tooltip=\"" + std::string(to_string(it->second)) + "\"";
            out += "];\n";
        }
        out += "  }\n";
    }
    for (const auto &e : graph.edges)
        out += "  \"" + dot_escape(e.from) + "\" -> \"" + dot_escape(e.to) + "\" [label=\"" +
               std::string(to_string(e.kind)) + "\"];\n";
    for (const auto &[from, to] : graph.back_edges)
        out += "  \"" + dot_escape(from) + "\" -> \"" + dot_escape(to) +
               "\" [style=dashed, color=red, constraint=false];\n";
    out += "}\n";
    return out;
}

std::string export_graph(const CallGraph &graph, std::string_view format) {
    if (format == "dot")
        return to_dot(graph);
    if (format == "json")
        return canonical_dump(to_json_value(graph));
    throw ValidationError("unknown graph format '" + std::string(format) + "', expected dot or json");
}

} // namespace tiergraph
