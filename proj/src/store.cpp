#include "tiergraph/store.hpp"

#include "tiergraph/error.hpp"
#include "tiergraph/hash.hpp"
#include "tiergraph/json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace tiergraph {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kSnapshotExt = ".tgs";

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool valid_id(std::string_view id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    });
}

std::size_t parse_count(std::string_view field, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ValidationError("metrics line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    return value;
}

} // namespace

std::string serialize_snapshot(const GraphSnapshot &snapshot) {
    std::string out;
    auto line = [&](const json &record) {
        out += canonical_dump(record);
        out += '\n';
    };
    line({{"type", "header"},
          {"format", kSnapshotFormat},
          {"version", kSnapshotVersion},
          {"snapshot_id", snapshot.snapshot_id},
          {"created_at", snapshot.created_at},
          {"corpus_hash", snapshot.corpus_hash}});
    for (const auto &f : snapshot.files) {
        json j = f;
        j["type"] = "file";
        line(j);
    }
    for (const auto &n : snapshot.nodes) {
        json j = n;
        j["type"] = "node";
        line(j);
    }
    for (const auto &e : snapshot.edges) {
        json j = e;
        j["type"] = "edge";
        line(j);
    }
    for (const auto &d : snapshot.diagnostics) {
        json j = d;
        j["type"] = "diag";
        line(j);
    }
    json counts = json::object();
    for (const auto &[project, c] : snapshot.per_project_counts)
        counts[project] = c;
    line({{"type", "summary"}, {"per_project_counts", counts}, {"diagnostics_summary", snapshot.diagnostics_summary}});
    auto checksum = sha256_hex(out);
    line({{"type", "checksum"}, {"sha256", checksum}});
    return out;
}

GraphSnapshot deserialize_snapshot(std::string_view text) {
    if (text.empty() || text.back() != '\n')
        throw IntegrityError("snapshot is truncated");
    auto body_end = text.rfind('\n', text.size() - 2);
    if (body_end == std::string_view::npos)
        throw IntegrityError("snapshot has no checksum record");
    auto body = text.substr(0, body_end + 1);
    auto last = text.substr(body_end + 1, text.size() - body_end - 2);
    json checksum;
    try {
        checksum = json::parse(last);
    } catch (const json::exception &) {
        throw IntegrityError("snapshot checksum record is unreadable");
    }
    if (!checksum.is_object() || checksum.value("type", "") != "checksum" || !checksum.contains("sha256"))
        throw IntegrityError("snapshot has no checksum record");
    if (checksum["sha256"] != sha256_hex(body))
        throw IntegrityError("snapshot checksum mismatch");

    GraphSnapshot snap;
    bool header = false;
    bool summary = false;
    try {
        for (auto l : split_lines(body)) {
            auto record = json::parse(l);
            auto type = record.at("type").get<std::string>();
            if (!header && type != "header")
                throw IntegrityError("snapshot does not start with a header");
            if (summary)
                throw IntegrityError("records after the summary");
            if (type == "header") {
                if (header)
                    throw IntegrityError("duplicate header");
                if (record.at("format") != kSnapshotFormat)
                    throw IntegrityError("not a snapshot file");
                if (record.at("version") != kSnapshotVersion)
                    throw IntegrityError("unsupported snapshot version " + record.at("version").dump());
                snap.snapshot_id = record.at("snapshot_id").get<std::string>();
                snap.created_at = record.at("created_at").get<std::string>();
                snap.corpus_hash = record.at("corpus_hash").get<std::string>();
                header = true;
            } else if (type == "file") {
                snap.files.push_back(record.get<FileRecord>());
            } else if (type == "node") {
                snap.nodes.push_back(record.get<Node>());
            } else if (type == "edge") {
                snap.edges.push_back(record.get<ResolvedEdge>());
            } else if (type == "diag") {
                snap.diagnostics.push_back(record.get<Diagnostic>());
            } else if (type == "summary") {
                for (const auto &[project, c] : record.at("per_project_counts").items())
                    snap.per_project_counts[project] = c.get<ProjectCounts>();
                snap.diagnostics_summary =
                    record.at("diagnostics_summary").get<std::map<std::string, std::size_t>>();
                summary = true;
            } else {
                throw IntegrityError("unknown record type '" + type + "'");
            }
        }
    } catch (const json::exception &e) {
        throw IntegrityError(std::string("malformed snapshot record: ") + e.what());
    } catch (const ValidationError &e) {
        throw IntegrityError(std::string("malformed snapshot record: ") + e.what());
    }
    if (!summary)
        throw IntegrityError("snapshot has no summary record");
    check_integrity(snap);
    return snap;
}

void write_file_atomic(const fs::path &path, std::string_view content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

SnapshotStore::SnapshotStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {}

fs::path SnapshotStore::metrics_path() const { return data_dir_ / "metrics.csv"; }

void SnapshotStore::persist(const GraphSnapshot &snapshot) const {
    if (!valid_id(snapshot.snapshot_id))
        throw ValidationError("invalid snapshot id '" + snapshot.snapshot_id + "'");
    check_integrity(snapshot);
    write_file_atomic(data_dir_ / "snapshots" / (snapshot.snapshot_id + std::string(kSnapshotExt)),
                      serialize_snapshot(snapshot));
    std::string diags;
    for (const auto &d : snapshot.diagnostics) {
        diags += canonical_dump(json(d));
        diags += '\n';
    }
    write_file_atomic(data_dir_ / "diagnostics" / (snapshot.snapshot_id + ".jsonl"), diags);
}

GraphSnapshot SnapshotStore::load(std::string_view snapshot_id) const {
    if (!valid_id(snapshot_id))
        throw NotFoundError("unknown snapshot '" + std::string(snapshot_id) + "'");
    auto path = data_dir_ / "snapshots" / (std::string(snapshot_id) + std::string(kSnapshotExt));
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        throw NotFoundError("unknown snapshot '" + std::string(snapshot_id) + "'");
    return deserialize_snapshot(read_file(path));
}

std::vector<SnapshotInfo> SnapshotStore::list() const {
    std::vector<SnapshotInfo> out;
    std::error_code ec;
    auto dir = data_dir_ / "snapshots";
    if (!fs::is_directory(dir, ec))
        return out;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != kSnapshotExt)
            continue;
        auto id = entry.path().stem().string();
        // ids start with the compact timestamp, so lexical order is chronological
        std::string created;
        if (id.size() >= 16)
            created = id.substr(0, 4) + "-" + id.substr(4, 2) + "-" + id.substr(6, 2) + "T" + id.substr(9, 2) + ":" +
                      id.substr(11, 2) + ":" + id.substr(13, 2) + "Z";
        out.push_back({id, created, entry.path()});
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.snapshot_id < b.snapshot_id; });
    return out;
}

std::optional<GraphSnapshot> SnapshotStore::latest() const {
    auto all = list();
    if (all.empty())
        return std::nullopt;
    return load(all.back().snapshot_id);
}

std::vector<std::string> SnapshotStore::prune(std::size_t keep) const {
    auto all = list();
    std::vector<std::string> removed;
    if (all.size() <= keep)
        return removed;
    for (std::size_t i = 0; i + keep < all.size(); ++i) {
        fs::remove(all[i].path);
        std::error_code ec;
        fs::remove(data_dir_ / "diagnostics" / (all[i].snapshot_id + ".jsonl"), ec);
        removed.push_back(all[i].snapshot_id);
    }
    return removed;
}

MetricsSeries append_metrics(const GraphSnapshot &snapshot, MetricsSeries series) {
    if (snapshot.created_at.size() < 10)
        throw ValidationError("snapshot has no timestamp");
    auto date = snapshot.created_at.substr(0, 10);
    std::erase_if(series.entries, [&](const MetricsEntry &e) { return e.date == date; });
    for (const auto &[project, c] : snapshot.per_project_counts)
        series.entries.push_back({date, project, c.graph_size(), c.function_count});
    std::sort(series.entries.begin(), series.entries.end(), [](const auto &a, const auto &b) {
        return std::tie(a.date, a.project_id) < std::tie(b.date, b.project_id);
    });
    return series;
}

std::string metrics_to_csv(const MetricsSeries &series) {
    std::string out(kMetricsHeader);
    out += '\n';
    for (const auto &e : series.entries)
        out += e.date + "," + e.project_id + "," + std::to_string(e.graph_size) + "," +
               std::to_string(e.function_count) + "\n";
    return out;
}

MetricsSeries metrics_from_csv(std::string_view csv) {
    auto lines = split_lines(csv);
    if (lines.empty() || lines.front() != kMetricsHeader)
        throw ValidationError("metrics CSV must start with '" + std::string(kMetricsHeader) + "'");
    MetricsSeries series;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto l = lines[i];
        if (!l.empty() && l.back() == '\r')
            l.remove_suffix(1);
        if (l.empty())
            continue;
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            auto comma = l.find(',', start);
            fields.push_back(l.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (fields.size() != 4)
            throw ValidationError("metrics line " + std::to_string(i + 1) + ": expected 4 fields");
        series.entries.push_back({std::string(fields[0]), std::string(fields[1]), parse_count(fields[2], i + 1),
                                  parse_count(fields[3], i + 1)});
    }
    return series;
}

MetricsSeries load_metrics(const fs::path &path) {
    std::error_code ec;
    if (!fs::exists(path, ec))
        return {};
    return metrics_from_csv(read_file(path));
}

void save_metrics(const fs::path &path, const MetricsSeries &series) { write_file_atomic(path, metrics_to_csv(series)); }

GraphSnapshot rebuild(const Config &config, const SnapshotStore &store, Clock::time_point created_at,
                      ExtractionCache *cache) {
    auto snapshot = build_snapshot(config, created_at, cache);
    store.persist(snapshot);
    save_metrics(store.metrics_path(), append_metrics(snapshot, load_metrics(store.metrics_path())));
    return snapshot;
}

Scheduler::Scheduler(std::function<void()> job, std::chrono::milliseconds interval, LogSink log)
    : job_(std::move(job)), interval_(interval), log_(std::move(log)) {
    if (interval_.count() <= 0)
        throw ValidationError("interval must be positive");
    if (!log_)
        log_ = [](std::string_view) {};
}

void Scheduler::stop() { stop_ = true; }

void Scheduler::run(std::size_t max_ticks) {
    std::vector<std::thread> workers;
    for (std::size_t tick = 0; !stop_ && (max_ticks == 0 || tick < max_ticks); ++tick) {
        bool expected = false;
        if (!busy_.compare_exchange_strong(expected, true)) {
            ++skipped_;
            log_("tick " + std::to_string(tick + 1) + " skipped: previous rebuild still running");
        } else {
            ++started_;
            workers.emplace_back([this, tick] {
                try {
                    job_();
                    log_("tick " + std::to_string(tick + 1) + " finished");
                } catch (const std::exception &e) {
                    ++failures_;
                    log_("tick " + std::to_string(tick + 1) + " failed: " + e.what());
                }
                busy_ = false;
            });
        }
        if (max_ticks != 0 && tick + 1 == max_ticks)
            break;
        auto deadline = std::chrono::steady_clock::now() + interval_;
        while (!stop_ && std::chrono::steady_clock::now() < deadline)
            std::this_thread::sleep_for(std::min<std::chrono::milliseconds>(interval_, std::chrono::milliseconds(20)));
    }
    for (auto &w : workers)
        w.join();
}

std::chrono::milliseconds parse_duration(std::string_view text) {
    if (text.empty())
        throw ValidationError("empty duration");
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || value <= 0)
        throw ValidationError("bad duration '" + std::string(text) + "'");
    std::string_view unit(ptr, text.data() + text.size() - ptr);
    using namespace std::chrono;
    if (unit.empty() || unit == "s")
        return seconds(value);
    if (unit == "ms")
        return milliseconds(value);
    if (unit == "m")
        return minutes(value);
    if (unit == "h")
        return hours(value);
    if (unit == "d")
        return hours(24 * value);
    throw ValidationError("bad duration unit in '" + std::string(text) + "'");
}

} // namespace tiergraph
