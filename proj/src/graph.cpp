#include "tiergraph/graph.hpp"

#include "tiergraph/error.hpp"
#include "tiergraph/extractor.hpp"
#include "tiergraph/hash.hpp"

#include <algorithm>
#include <array>
#include <ctime>
#include <set>

namespace tiergraph {

namespace {

constexpr std::array kNodeKindNames = {"Class", "Method", "Property", "External", "Lambda", "Unresolved"};

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

ExtractOptions options_for(const Config &config) {
    ExtractOptions options;
    for (const auto &t : config.extra_builtin_types)
        options.builtin_types.insert(t);
    return options;
}

std::string compact_timestamp(std::string_view iso) {
    std::string out;
    for (char c : iso)
        if (c != '-' && c != ':')
            out.push_back(c);
    return out;
}

} // namespace

std::string_view to_string(NodeKind kind) { return kNodeKindNames[static_cast<std::size_t>(kind)]; }

std::optional<NodeKind> parse_node_kind(std::string_view text) {
    for (std::size_t i = 0; i < kNodeKindNames.size(); ++i)
        if (text == kNodeKindNames[i])
            return static_cast<NodeKind>(i);
    return std::nullopt;
}

const Node *GraphSnapshot::find_node(std::string_view id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id, [](const Node &n, std::string_view v) { return n.id < v; });
    return it != nodes.end() && it->id == id ? &*it : nullptr;
}

bool GraphSnapshot::same_content(const GraphSnapshot &other) const {
    return corpus_hash == other.corpus_hash && files == other.files && nodes == other.nodes && edges == other.edges &&
           per_project_counts == other.per_project_counts && diagnostics == other.diagnostics &&
           diagnostics_summary == other.diagnostics_summary;
}

std::string format_timestamp(Clock::time_point t) {
    std::time_t secs = Clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Clock::time_point parse_timestamp(std::string_view text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    std::string str(text);
    int n = 0;
    bool ok = false;
    if (str.size() == 10)
        ok = std::sscanf(str.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &n) == 3 && n == 10;
    else if (str.size() == 20)
        ok = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ%n", &y, &mo, &d, &h, &mi, &s, &n) == 6 && n == 20;
    if (!ok || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
        throw ValidationError("bad timestamp '" + str + "', expected YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ");
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        throw ValidationError("bad date '" + str + "'");
    return Clock::time_point{std::chrono::sys_days{ymd}} + std::chrono::hours{h} + std::chrono::minutes{mi} +
           std::chrono::seconds{s};
}

const FileModel *ExtractionCache::find(const FileRecord &record) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find({record.project_id, record.path, record.content_hash});
    if (it == entries_.end())
        return nullptr;
    ++hits_;
    return &it->second;
}

void ExtractionCache::store(const FileRecord &record, FileModel model) {
    std::lock_guard lock(mutex_);
    entries_.insert_or_assign({record.project_id, record.path, record.content_hash}, std::move(model));
}

void ExtractionCache::retain(const FileInventory &inventory) {
    std::set<Key> live;
    for (const auto &r : inventory.files)
        live.insert({r.project_id, r.path, r.content_hash});
    std::lock_guard lock(mutex_);
    std::erase_if(entries_, [&](const auto &entry) { return !live.count(entry.first); });
}

std::size_t ExtractionCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t ExtractionCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

std::string model_path(const FileRecord &record) { return record.project_id + "/" + record.path; }

std::vector<FileModel> extract_inventory(const FileInventory &inventory, const Config &config, ExtractionCache *cache) {
    auto options = options_for(config);
    std::vector<FileModel> models;
    for (const auto &record : inventory.files) {
        if (record.category != FileCategory::CodeBehind)
            continue;
        auto path = model_path(record);
        if (record.skipped) {
            FileModel m;
            m.path = path;
            m.project_id = record.project_id;
            m.diagnostics.push_back({path, 0, std::string(diag::kUnreadableFile), "file could not be read", {}, {}});
            models.push_back(std::move(m));
            continue;
        }
        if (cache)
            if (const auto *hit = cache->find(record)) {
                models.push_back(*hit);
                continue;
            }
        FileModel m;
        try {
            auto text = read_file(inventory.absolute_path(record));
            m = extract_file(text, path, record.project_id, options);
        } catch (const Error &e) {
            m = FileModel{};
            m.path = path;
            m.project_id = record.project_id;
            m.diagnostics.push_back({path, 0, std::string(diag::kUnreadableFile), e.what(), {}, {}});
        }
        if (cache)
            cache->store(record, m);
        models.push_back(std::move(m));
    }
    if (cache)
        cache->retain(inventory);
    return models;
}

std::map<std::string, ProjectCounts> count_by_project(const std::vector<Node> &nodes,
                                                      const std::vector<ResolvedEdge> &edges) {
    std::map<std::string, ProjectCounts> counts;
    std::map<std::string, std::string> project_of;
    for (const auto &n : nodes) {
        if (n.project_id.empty())
            continue;
        project_of[n.id] = n.project_id;
        auto &c = counts[n.project_id];
        if (n.kind == NodeKind::Class)
            ++c.class_count;
        else if (n.kind == NodeKind::Method)
            ++c.function_count;
        else if (n.kind == NodeKind::Property)
            ++c.property_count;
    }
    for (const auto &e : edges)
        if (auto it = project_of.find(e.from); it != project_of.end())
            ++counts[it->second].edge_count;
    return counts;
}

GraphSnapshot assemble_snapshot(const FileInventory &inventory, const std::vector<FileModel> &models,
                                const Config &config, Clock::time_point created_at) {
    GraphSnapshot snap;
    snap.files = inventory.files;
    std::string corpus_lines;
    for (const auto &f : inventory.files)
        corpus_lines += f.project_id + "\t" + f.path + "\t" + f.content_hash + "\n";
    snap.corpus_hash = sha256_hex(corpus_lines);
    snap.created_at = format_timestamp(created_at);
    snap.snapshot_id = compact_timestamp(snap.created_at) + "-" + snap.corpus_hash.substr(0, 12);

    auto index = build_symbol_index(models, config.projects);
    auto resolution = resolve_all(models, index, config.projects);

    std::map<std::string, Node> nodes;
    for (const auto &[id, info] : index.members_by_class) {
        const auto &cls = info.model;
        std::string file = info.files.empty() ? "" : info.files.front();
        nodes.emplace(id, Node{id, id, NodeKind::Class, info.layer, info.project_id, file});
        for (const auto &m : cls.methods) {
            auto mid = method_id(cls, m);
            nodes.emplace(mid, Node{mid, node_display_name(mid), NodeKind::Method, info.layer, info.project_id, file});
        }
        for (const auto &p : cls.properties) {
            auto pid = property_id(cls, p);
            nodes.emplace(pid, Node{pid, pid, NodeKind::Property, info.layer, info.project_id, file});
        }
    }
    // method and property nodes carry the file that declares them
    for (const auto &fm : models)
        for (const auto &cls : fm.classes) {
            for (const auto &m : cls.methods)
                if (auto it = nodes.find(method_id(cls, m)); it != nodes.end() && it->second.kind == NodeKind::Method &&
                                                            it->second.project_id == fm.project_id)
                    it->second.file = fm.path;
            for (const auto &p : cls.properties)
                if (auto it = nodes.find(property_id(cls, p));
                    it != nodes.end() && it->second.kind == NodeKind::Property && it->second.project_id == fm.project_id)
                    it->second.file = fm.path;
        }

    for (const auto &e : resolution.edges) {
        if (nodes.count(e.to))
            continue;
        Node n;
        n.id = e.to;
        n.name = node_display_name(e.to);
        n.layer = e.to_layer;
        if (starts_with(e.to, kExternalPrefix)) {
            n.kind = NodeKind::External;
        } else if (starts_with(e.to, kLambdaPrefix)) {
            n.kind = NodeKind::Lambda;
            if (auto it = nodes.find(e.from); it != nodes.end())
                n.file = it->second.file;
        } else {
            n.kind = NodeKind::Unresolved;
        }
        nodes.emplace(n.id, std::move(n));
    }

    for (auto &[id, n] : nodes)
        snap.nodes.push_back(std::move(n));
    snap.edges = std::move(resolution.edges);
    snap.per_project_counts = count_by_project(snap.nodes, snap.edges);
    for (const auto &p : config.projects)
        snap.per_project_counts.try_emplace(p.project_id);

    for (const auto &fm : models)
        snap.diagnostics.insert(snap.diagnostics.end(), fm.diagnostics.begin(), fm.diagnostics.end());
    snap.diagnostics.insert(snap.diagnostics.end(), index.diagnostics.begin(), index.diagnostics.end());
    snap.diagnostics.insert(snap.diagnostics.end(), resolution.diagnostics.begin(), resolution.diagnostics.end());
    std::sort(snap.diagnostics.begin(), snap.diagnostics.end());
    snap.diagnostics.erase(std::unique(snap.diagnostics.begin(), snap.diagnostics.end()), snap.diagnostics.end());
    snap.diagnostics_summary = summarize(snap.diagnostics);
    return snap;
}

GraphSnapshot build_snapshot(const Config &config, Clock::time_point created_at, ExtractionCache *cache) {
    auto inventory = scan_corpus(config.projects);
    auto models = extract_inventory(inventory, config, cache);
    return assemble_snapshot(inventory, models, config, created_at);
}

void check_integrity(const GraphSnapshot &snapshot) {
    for (std::size_t i = 1; i < snapshot.nodes.size(); ++i)
        if (!(snapshot.nodes[i - 1].id < snapshot.nodes[i].id))
            throw IntegrityError("nodes not sorted or duplicated at '" + snapshot.nodes[i].id + "'");
    for (const auto &e : snapshot.edges) {
        if (!snapshot.find_node(e.from))
            throw IntegrityError("edge source '" + e.from + "' is not a node");
        if (!snapshot.find_node(e.to))
            throw IntegrityError("edge target '" + e.to + "' is not a node");
    }
    auto counts = count_by_project(snapshot.nodes, snapshot.edges);
    for (const auto &[project, c] : snapshot.per_project_counts) {
        auto it = counts.find(project);
        ProjectCounts direct = it == counts.end() ? ProjectCounts{} : it->second;
        if (!(direct == c))
            throw IntegrityError("per-project counts for '" + project + "' disagree with nodes and edges");
    }
    for (const auto &[project, c] : counts)
        if (!snapshot.per_project_counts.count(project))
            throw IntegrityError("per-project counts missing '" + project + "'");
}

} // namespace tiergraph
