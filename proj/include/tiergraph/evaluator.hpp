#pragma once

#include "tiergraph/graph.hpp"
#include "tiergraph/navigator.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

/// Ground-truth file format, one directive or node per line:
///
///     # comment
///     entry: Ns.Class.Method
///     subset: clean
///     manual_minutes: 35
///     Ns.Class.Method
///     Ns.Other.Callee <- Ns.Class.Method
///
/// Node lines are fully qualified member names. The optional `<- parent`
/// names the caller through which the node was reached.
struct GroundTruthGraph {
    std::string entry;
    std::string subset;
    std::optional<double> manual_minutes;
    /// Declaration order, whitespace removed, no duplicates.
    std::vector<std::string> expected_nodes;
    std::map<std::string, std::string> parents;
    std::string source;
};

/// Throws ValidationError on unknown directives or when the entry is not listed as a node.
GroundTruthGraph parse_ground_truth(std::string_view text, std::string source = {});
/// Every `*.truth` file of `dir`, sorted by file name.
std::vector<GroundTruthGraph> load_suite(const std::filesystem::path &dir);

/// Whitespace-free form used to match node names.
std::string match_key(std::string_view name);

struct Miss {
    std::string name;
    /// Diagnostic code explaining the miss; empty when unexplained.
    std::string cause;
    friend bool operator==(const Miss &, const Miss &) = default;
};

struct EntryResult {
    std::string entry;
    std::string subset;
    std::size_t manual_count = 0;
    std::size_t auto_count = 0;
    std::size_t matched_count = 0;
    double recall = 0;
    double precision = 0;
    std::optional<double> manual_minutes;
    std::int64_t auto_micros = 0;
    std::vector<Miss> misses;
    /// Set when the entry could not be resolved in the snapshot.
    std::string note;
    friend bool operator==(const EntryResult &, const EntryResult &) = default;
};

/// Node-name overlap of an automatically generated graph with the truth.
/// Throws ValidationError when the graph root is not the truth entry.
EntryResult compare(const CallGraph &automated, const GroundTruthGraph &truth);

/// Explains each miss with a snapshot diagnostic emitted in the scope of the
/// miss's parent, or inherits the cause of a missed parent.
void attribute_misses(EntryResult &result, const GroundTruthGraph &truth, const GraphSnapshot &snapshot);

/// Σ matched / Σ manual; 0 for an empty list.
double aggregate_accuracy(const std::vector<EntryResult> &entries);

struct AccuracyReport {
    std::vector<EntryResult> entries;
    double aggregate = 0;
    std::map<std::string, double> subset_accuracy;
    std::optional<double> manual_avg_minutes;
    double auto_avg_minutes = 0;
    /// Manual over automated average; absent without manual timings.
    std::optional<double> speedup;
    friend bool operator==(const AccuracyReport &, const AccuracyReport &) = default;
};

/// Computes the aggregate figures from `entries`.
AccuracyReport make_report(std::vector<EntryResult> entries);

/// Runs `fn` and returns its wall-clock duration.
using Timer = std::function<std::chrono::microseconds(const std::function<void()> &)>;
std::chrono::microseconds steady_timer(const std::function<void()> &fn);

AccuracyReport run_benchmark(const GraphSnapshot &snapshot, const std::vector<GroundTruthGraph> &suite,
                             const GraphOptions &options = {}, const Timer &timer = steady_timer);

inline constexpr std::string_view kReportHeader =
    "entry,subset,manual_count,auto_count,matched_count,recall,precision,manual_minutes,auto_micros,auto_minutes,"
    "misses,note";

/// One row per entry. Numbers use the shortest round-trip representation
/// except auto_minutes, which is rounded to 2 decimals for reading.
std::string report_to_csv(const AccuracyReport &report);
AccuracyReport report_from_csv(std::string_view csv);

json to_json_value(const AccuracyReport &report);

/// Shortest text that parses back to the same double.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

} // namespace tiergraph
