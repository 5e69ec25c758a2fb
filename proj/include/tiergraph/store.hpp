#pragma once

#include "tiergraph/graph.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

/// Store file layout: one JSON record per line. The first line is the header
/// (format, version, id, timestamp, corpus hash), followed by file, node, edge
/// and diag records, one summary record and a final checksum record holding
/// the SHA-256 of every preceding byte.
inline constexpr std::string_view kSnapshotFormat = "tiergraph-snapshot";
inline constexpr int kSnapshotVersion = 1;

std::string serialize_snapshot(const GraphSnapshot &snapshot);
/// Throws IntegrityError on checksum mismatch, truncation, unknown records or
/// dangling edges.
GraphSnapshot deserialize_snapshot(std::string_view text);

struct SnapshotInfo {
    std::string snapshot_id;
    std::string created_at;
    std::filesystem::path path;
};

/// Snapshots under `<data_dir>/snapshots/<id>.tgs`, diagnostics under
/// `<data_dir>/diagnostics/<id>.jsonl`, metrics in `<data_dir>/metrics.csv`.
/// Writes go through a temporary file and rename.
class SnapshotStore {
public:
    explicit SnapshotStore(std::filesystem::path data_dir);

    const std::filesystem::path &data_dir() const { return data_dir_; }
    std::filesystem::path metrics_path() const;

    void persist(const GraphSnapshot &snapshot) const;
    /// Throws NotFoundError for an unknown id, IntegrityError for a corrupt file.
    GraphSnapshot load(std::string_view snapshot_id) const;
    /// Sorted oldest first.
    std::vector<SnapshotInfo> list() const;
    std::optional<GraphSnapshot> latest() const;
    /// Deletes all but the newest `keep` snapshots; returns the removed ids.
    std::vector<std::string> prune(std::size_t keep) const;

private:
    std::filesystem::path data_dir_;
};

struct MetricsEntry {
    /// "YYYY-MM-DD".
    std::string date;
    std::string project_id;
    std::size_t graph_size = 0;
    std::size_t function_count = 0;
    friend bool operator==(const MetricsEntry &, const MetricsEntry &) = default;
};

struct MetricsSeries {
    /// Sorted by (date, project_id), one entry per pair.
    std::vector<MetricsEntry> entries;
    friend bool operator==(const MetricsSeries &, const MetricsSeries &) = default;
};

/// Replaces the snapshot date's entries with one per project.
MetricsSeries append_metrics(const GraphSnapshot &snapshot, MetricsSeries series);

inline constexpr std::string_view kMetricsHeader = "date,project,graph_size,function_count";

std::string metrics_to_csv(const MetricsSeries &series);
/// Throws ValidationError on a malformed header or row.
MetricsSeries metrics_from_csv(std::string_view csv);
/// Missing file reads as an empty series.
MetricsSeries load_metrics(const std::filesystem::path &path);
void save_metrics(const std::filesystem::path &path, const MetricsSeries &series);

/// Writes `content` to `path` atomically (temporary file in the same directory, then rename).
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

/// Rebuild, persist and record metrics in one step.
GraphSnapshot rebuild(const Config &config, const SnapshotStore &store, Clock::time_point created_at,
                      ExtractionCache *cache = nullptr);

using LogSink = std::function<void(std::string_view)>;

/// Runs a job at a fixed interval. A tick that arrives while the previous run
/// is still busy is skipped and logged. Exceptions from the job are logged and
/// the schedule continues.
class Scheduler {
public:
    Scheduler(std::function<void()> job, std::chrono::milliseconds interval, LogSink log);

    /// Blocks until `max_ticks` ticks have fired (0 = until stop()) and the
    /// last run finished.
    void run(std::size_t max_ticks = 0);
    void stop();

    std::size_t runs_started() const { return started_; }
    std::size_t ticks_skipped() const { return skipped_; }
    std::size_t failures() const { return failures_; }

private:
    std::function<void()> job_;
    std::chrono::milliseconds interval_;
    LogSink log_;
    std::atomic<bool> stop_{false};
    std::atomic<bool> busy_{false};
    std::atomic<std::size_t> started_{0};
    std::atomic<std::size_t> skipped_{0};
    std::atomic<std::size_t> failures_{0};
};

/// "30s", "15m", "2h", "1d" or a bare number of seconds. Throws ValidationError.
std::chrono::milliseconds parse_duration(std::string_view text);

} // namespace tiergraph
