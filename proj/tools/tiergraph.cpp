#include "tiergraph/api.hpp"
#include "tiergraph/config.hpp"
#include "tiergraph/error.hpp"
#include "tiergraph/evaluator.hpp"
#include "tiergraph/extractor.hpp"
#include "tiergraph/graph.hpp"
#include "tiergraph/json.hpp"
#include "tiergraph/navigator.hpp"
#include "tiergraph/store.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tiergraph;

namespace {

struct Globals {
    std::string config_path;
    std::string data_dir;
    std::string now;
};

Config load(const Globals &g) {
    auto config = load_config(resolve_config_path(g.config_path));
    if (!g.data_dir.empty())
        config.data_dir = g.data_dir;
    return config;
}

Clock::time_point now_of(const Globals &g) { return g.now.empty() ? Clock::now() : parse_timestamp(g.now); }

GraphSnapshot pick_snapshot(const SnapshotStore &store, const std::string &id) {
    if (!id.empty())
        return store.load(id);
    auto latest = store.latest();
    if (!latest)
        throw NotFoundError("no snapshot in " + store.data_dir().string() + "; run 'tiergraph sweep --once' first");
    return std::move(*latest);
}

void log_line(std::string_view line) { std::cerr << line << '\n'; }

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file_atomic(path, content);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Layered call-graph extraction and navigation for C# code bases"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "Config file (default: $TIERGRAPH_CONFIG)");
    app.add_option("--data-dir", g.data_dir, "Override the configured data directory");
    app.add_option("--now", g.now, "Timestamp to record instead of the clock (YYYY-MM-DD[THH:MM:SSZ])");

    auto *extract = app.add_subcommand("extract", "Print the extraction model of one source file as JSON");
    std::string extract_file_path;
    std::string extract_project;
    extract->add_option("file", extract_file_path)->required();
    extract->add_option("--project", extract_project, "Project id recorded in the model");

    auto *sweep = app.add_subcommand("sweep", "Rebuild the graph snapshot and record daily metrics");
    bool once = false;
    std::string interval;
    std::size_t max_ticks = 0;
    auto *once_opt = sweep->add_flag("--once", once, "Run a single rebuild and exit");
    sweep->add_option("--interval", interval, "Rebuild every interval (e.g. 30s, 15m, 24h)")->excludes(once_opt);
    sweep->add_option("--max-ticks", max_ticks, "Stop after this many ticks (0 = run forever)");

    auto *snapshots = app.add_subcommand("snapshots", "Inspect persisted snapshots");
    snapshots->require_subcommand(1);
    auto *snapshots_list = snapshots->add_subcommand("list", "List snapshots, oldest first");

    auto *prune = app.add_subcommand("prune", "Delete all but the newest snapshots");
    std::size_t keep = 0;
    prune->add_option("--keep", keep, "Number of snapshots to keep")->required();

    auto *metrics = app.add_subcommand("metrics", "Daily metrics series");
    metrics->require_subcommand(1);
    auto *metrics_export = metrics->add_subcommand("export", "Export the series");
    std::string metrics_csv;
    metrics_export->add_option("--csv", metrics_csv, "Output path ('-' for stdout)")->required();

    auto *search_cmd = app.add_subcommand("search", "Search every corpus file for a keyword");
    std::string keyword;
    bool ci = false;
    std::string search_snapshot;
    search_cmd->add_option("keyword", keyword)->required();
    search_cmd->add_flag("--ci", ci, "Case-insensitive match");
    search_cmd->add_option("--snapshot", search_snapshot, "Snapshot id (default: newest)");

    auto *graph_cmd = app.add_subcommand("graph", "Generate the call graph of an entry method");
    std::string entry;
    std::string format = "json";
    std::size_t max_depth = kDefaultMaxDepth;
    std::string graph_snapshot;
    graph_cmd->add_option("--entry", entry, "Method id or fully qualified name")->required();
    graph_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    graph_cmd->add_option("--max-depth", max_depth)->check(CLI::PositiveNumber);
    graph_cmd->add_option("--snapshot", graph_snapshot, "Snapshot id (default: newest)");

    auto *bench = app.add_subcommand("bench", "Compare generated call graphs with hand-traced ground truth");
    std::string suite_dir;
    std::string bench_csv;
    std::string bench_snapshot;
    bool bench_json = false;
    bench->add_option("--suite", suite_dir, "Directory of .truth files")->required();
    bench->add_option("--csv", bench_csv, "Write the per-entry report CSV here");
    bench->add_option("--snapshot", bench_snapshot, "Use a persisted snapshot instead of a fresh build");
    bench->add_flag("--json", bench_json, "Print the report as JSON");

    auto *serve_cmd = app.add_subcommand("serve", "Serve the JSON API and the UI bundle");
    std::string addr = "127.0.0.1:8080";
    std::string static_dir;
    bool dev_cors = false;
    serve_cmd->add_option("--addr", addr, "host:port to bind");
    serve_cmd->add_option("--static", static_dir, "Directory with the built UI bundle");
    serve_cmd->add_flag("--dev-cors", dev_cors, "Allow cross-origin requests");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) {
            auto model = tiergraph::extract_file(read_file(extract_file_path), extract_file_path, extract_project);
            std::cout << canonical_dump(json(model)) << '\n';
            return 0;
        }

        auto config = load(g);
        SnapshotStore store(config.data_dir);

        if (sweep->parsed()) {
            if (once || interval.empty()) {
                auto snap = rebuild(config, store, now_of(g));
                std::cout << "snapshot " << snap.snapshot_id << " nodes=" << snap.nodes.size()
                          << " edges=" << snap.edges.size() << '\n';
                return 0;
            }
            ExtractionCache cache;
            Scheduler scheduler(
                [&] {
                    auto snap = rebuild(config, store, now_of(g), &cache);
                    log_line("snapshot " + snap.snapshot_id + " nodes=" + std::to_string(snap.nodes.size()) +
                             " edges=" + std::to_string(snap.edges.size()));
                },
                parse_duration(interval), log_line);
            scheduler.run(max_ticks);
            return scheduler.failures() == scheduler.runs_started() && scheduler.runs_started() > 0 ? 1 : 0;
        }
        if (snapshots_list->parsed()) {
            for (const auto &s : store.list())
                std::cout << s.snapshot_id << ' ' << s.created_at << '\n';
            return 0;
        }
        if (prune->parsed()) {
            for (const auto &id : store.prune(keep))
                std::cout << "removed " << id << '\n';
            return 0;
        }
        if (metrics_export->parsed()) {
            write_output(metrics_csv, metrics_to_csv(load_metrics(store.metrics_path())));
            return 0;
        }
        if (search_cmd->parsed()) {
            auto snap = pick_snapshot(store, search_snapshot);
            SearchOptions options;
            options.case_insensitive = ci;
            auto result = search(keyword, snap, inventory_of(snap, config), options);
            std::cout << canonical_dump(to_json_value(result)) << '\n';
            return 0;
        }
        if (graph_cmd->parsed()) {
            auto snap = pick_snapshot(store, graph_snapshot);
            GraphOptions options;
            options.max_depth = max_depth;
            auto graph = generate_call_graph(entry, snap, options);
            std::cout << export_graph(graph, format);
            if (format == "json")
                std::cout << '\n';
            return 0;
        }
        if (bench->parsed()) {
            auto suite = load_suite(suite_dir);
            auto snap = bench_snapshot.empty() ? build_snapshot(config, now_of(g)) : store.load(bench_snapshot);
            auto report = run_benchmark(snap, suite);
            if (!bench_csv.empty())
                write_output(bench_csv, report_to_csv(report));
            if (bench_json) {
                std::cout << canonical_dump(to_json_value(report)) << '\n';
                return 0;
            }
            for (const auto &e : report.entries) {
                std::cout << e.entry << " [" << e.subset << "] matched " << e.matched_count << "/" << e.manual_count
                          << " auto " << e.auto_count << " recall " << format_fixed(e.recall, 4) << " precision "
                          << format_fixed(e.precision, 4) << " time " << e.auto_micros << "us";
                if (!e.note.empty())
                    std::cout << " (" << e.note << ")";
                std::cout << '\n';
                for (const auto &m : e.misses)
                    std::cout << "  missed " << m.name << " <- " << (m.cause.empty() ? "unexplained" : m.cause) << '\n';
            }
            for (const auto &[subset, acc] : report.subset_accuracy)
                std::cout << "subset " << subset << " accuracy " << format_fixed(acc, 4) << '\n';
            std::cout << "aggregate accuracy " << format_fixed(report.aggregate, 4) << '\n';
            if (report.manual_avg_minutes)
                std::cout << "manual avg " << format_fixed(*report.manual_avg_minutes, 2) << " min, automated avg "
                          << format_fixed(report.auto_avg_minutes, 2) << " min";
            if (report.speedup)
                std::cout << ", speedup x" << format_fixed(*report.speedup, 0);
            std::cout << '\n';
            return 0;
        }
        if (serve_cmd->parsed()) {
            auto options = parse_address(addr);
            options.static_dir = static_dir;
            options.dev_cors = dev_cors;
            ApiService service(config);
            if (!service.reload(store))
                log_line("no snapshot yet; data endpoints answer 503 until one exists");
            log_line("listening on " + options.host + ":" + std::to_string(options.port));
            serve(service, options);
            return 0;
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotFoundError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const IntegrityError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
