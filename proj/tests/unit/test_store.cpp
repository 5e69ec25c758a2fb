#include "support.hpp"

#include "tiergraph/error.hpp"
#include "tiergraph/graph.hpp"
#include "tiergraph/store.hpp"

#include <doctest.h>

#include <algorithm>
#include <thread>

using namespace tiergraph;
using namespace std::chrono_literals;
using testsupport::TempDir;

namespace {

const char *kAuditRepository = R"(using System;

namespace Shop.Data
{
    public class AuditRepository
    {
        public void Record(string text)
        {
        }

        public int Pending()
        {
            return 0;
        }
    }
}
)";

std::size_t method_nodes(const GraphSnapshot &s, const std::string &project) {
    return static_cast<std::size_t>(std::count_if(s.nodes.begin(), s.nodes.end(), [&](const Node &n) {
        return n.kind == NodeKind::Method && n.project_id == project;
    }));
}

} // namespace

TEST_SUITE("graph_store") {

TEST_CASE("timestamps") {
    auto t = parse_timestamp("2026-10-16T08:30:05Z");
    CHECK(format_timestamp(t) == "2026-10-16T08:30:05Z");
    CHECK(format_timestamp(parse_timestamp("2026-10-16")) == "2026-10-16T00:00:00Z");
    CHECK_THROWS_AS(parse_timestamp("16/10/2026"), ValidationError);
    CHECK_THROWS_AS(parse_timestamp("2026-13-01"), ValidationError);
}

TEST_CASE("durations") {
    CHECK(parse_duration("250ms") == 250ms);
    CHECK(parse_duration("30s") == 30s);
    CHECK(parse_duration("15m") == 15min);
    CHECK(parse_duration("2h") == 2h);
    CHECK(parse_duration("1d") == 24h);
    CHECK(parse_duration("5") == 5s);
    CHECK_THROWS_AS(parse_duration("0s"), ValidationError);
    CHECK_THROWS_AS(parse_duration("soon"), ValidationError);
}

TEST_CASE("empty corpus gives an empty snapshot") {
    TempDir tmp;
    std::filesystem::create_directories(tmp / "src");
    auto snap = build_snapshot(testsupport::fixture_config(tmp / "src", tmp / "data"), testsupport::day(1));
    CHECK(snap.nodes.empty());
    CHECK(snap.edges.empty());
    CHECK(snap.files.empty());
    CHECK_NOTHROW(check_integrity(snap));
}

TEST_CASE("missing root aborts the rebuild") {
    TempDir tmp;
    auto config = testsupport::fixture_config(tmp / "absent", tmp / "data");
    CHECK_THROWS_AS(rebuild(config, SnapshotStore(config.data_dir), testsupport::day(1)), ConfigError);
}

TEST_CASE("rebuilding an unchanged corpus gives content-equal snapshots") {
    TempDir tmp;
    auto config = testsupport::corpus_config(tmp / "data");
    auto a = build_snapshot(config, testsupport::day(1));
    auto b = build_snapshot(config, testsupport::day(2));
    CHECK(a.same_content(b));
    CHECK(a.snapshot_id != b.snapshot_id);
    CHECK(a.snapshot_id.substr(a.snapshot_id.size() - 12) == a.corpus_hash.substr(0, 12));
    auto c = build_snapshot(config, testsupport::day(1));
    CHECK(a == c);
}

TEST_CASE("snapshot invariants on the corpus") {
    TempDir tmp;
    auto snap = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(1));
    CHECK_NOTHROW(check_integrity(snap));
    CHECK(snap.per_project_counts == count_by_project(snap.nodes, snap.edges));
    CHECK(std::is_sorted(snap.nodes.begin(), snap.nodes.end(),
                         [](const Node &x, const Node &y) { return x.id < y.id; }));
    CHECK(snap.per_project_counts.size() == 3);
    std::size_t classes = 0;
    for (const auto &n : snap.nodes)
        classes += n.kind == NodeKind::Class;
    std::size_t counted = 0;
    for (const auto &[p, c] : snap.per_project_counts) {
        counted += c.class_count;
        CHECK(c.function_count == method_nodes(snap, p));
    }
    CHECK(counted == classes);
    CHECK(snap.diagnostics_summary == summarize(snap.diagnostics));
}

TEST_CASE("model order does not change the snapshot") {
    TempDir tmp;
    auto config = testsupport::corpus_config(tmp / "data");
    auto inventory = scan_corpus(config.projects);
    auto models = extract_inventory(inventory, config);
    auto reference = assemble_snapshot(inventory, models, config, testsupport::day(1));
    testsupport::Rng rng(8);
    for (int round = 0; round < 4; ++round) {
        std::shuffle(models.begin(), models.end(), rng);
        CHECK(assemble_snapshot(inventory, models, config, testsupport::day(1)) == reference);
    }
}

TEST_CASE("deleting a class file lowers the function count") {
    TempDir tmp;
    auto config = testsupport::copy_corpus(tmp / "corpus");
    auto before = build_snapshot(config, testsupport::day(1));
    std::filesystem::remove(tmp / "corpus/Shop.Data/ReportRepository.cs");
    auto after = build_snapshot(config, testsupport::day(2));
    CHECK(after.per_project_counts.at("Shop.Data").function_count <
          before.per_project_counts.at("Shop.Data").function_count);
    CHECK(after.per_project_counts.at("Shop.Data").class_count ==
          before.per_project_counts.at("Shop.Data").class_count - 1);
    CHECK_NOTHROW(check_integrity(after));
}

TEST_CASE("dangling edges fail the integrity check") {
    TempDir tmp;
    auto snap = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(1));
    auto broken = snap;
    broken.edges.front().to = "Nowhere.Gone()";
    CHECK_THROWS_AS(check_integrity(broken), IntegrityError);
    auto miscounted = snap;
    miscounted.per_project_counts.begin()->second.function_count += 1;
    CHECK_THROWS_AS(check_integrity(miscounted), IntegrityError);
}

TEST_CASE("persist and load round trip") {
    TempDir tmp;
    SnapshotStore store(tmp / "data");
    CHECK(store.list().empty());
    CHECK_FALSE(store.latest().has_value());
    auto snap = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(1));
    store.persist(snap);
    auto loaded = store.load(snap.snapshot_id);
    CHECK(loaded == snap);
    CHECK(serialize_snapshot(loaded) == serialize_snapshot(snap));
    REQUIRE(store.list().size() == 1);
    CHECK(store.list()[0].snapshot_id == snap.snapshot_id);
    CHECK(std::filesystem::exists(tmp / "data/diagnostics" / (snap.snapshot_id + ".jsonl")));
    CHECK_THROWS_AS(store.load("20990101T000000Z-000000000000"), NotFoundError);
}

TEST_CASE("damaged store files are integrity errors") {
    TempDir tmp;
    SnapshotStore store(tmp / "data");
    auto snap = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(1));
    store.persist(snap);
    auto path = store.list()[0].path;
    auto text = testsupport::read_text(path);

    testsupport::write_text(path, text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(store.load(snap.snapshot_id), IntegrityError);

    auto last_record = text.rfind('\n', text.size() - 2);
    testsupport::write_text(path, text.substr(0, last_record + 1));
    CHECK_THROWS_AS(store.load(snap.snapshot_id), IntegrityError);

    auto flipped = text;
    auto pos = flipped.find("Shop.Data");
    flipped[pos] = 'X';
    testsupport::write_text(path, flipped);
    CHECK_THROWS_AS(store.load(snap.snapshot_id), IntegrityError);

    CHECK_THROWS_AS(deserialize_snapshot(""), IntegrityError);
    CHECK_THROWS_AS(deserialize_snapshot("not json\n"), IntegrityError);

    testsupport::write_text(path, text);
    CHECK(store.load(snap.snapshot_id) == snap);
}

TEST_CASE("list, latest and prune") {
    TempDir tmp;
    auto config = testsupport::corpus_config(tmp / "data");
    SnapshotStore store(config.data_dir);
    std::vector<std::string> ids;
    for (int d : {3, 1, 2})
        ids.push_back(rebuild(config, store, testsupport::day(d)).snapshot_id);
    auto listed = store.list();
    REQUIRE(listed.size() == 3);
    CHECK(listed[0].snapshot_id == ids[1]);
    CHECK(listed[2].snapshot_id == ids[0]);
    CHECK(store.latest()->snapshot_id == ids[0]);
    auto removed = store.prune(1);
    CHECK(removed == std::vector<std::string>{ids[1], ids[2]});
    REQUIRE(store.list().size() == 1);
    CHECK(store.list()[0].snapshot_id == ids[0]);
    CHECK(store.prune(5).empty());
}

TEST_CASE("append_metrics") {
    TempDir tmp;
    auto snap = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(1));
    auto once = append_metrics(snap, {});
    REQUIRE(once.entries.size() == 3);
    for (const auto &e : once.entries) {
        CHECK(e.date == "2026-03-01");
        CHECK(e.function_count == snap.per_project_counts.at(e.project_id).function_count);
        CHECK(e.graph_size == snap.per_project_counts.at(e.project_id).graph_size());
    }
    CHECK(append_metrics(snap, once) == once);

    auto next = build_snapshot(testsupport::corpus_config(tmp / "data"), testsupport::day(2));
    auto twice = append_metrics(next, once);
    CHECK(twice.entries.size() == 6);
    CHECK(std::is_sorted(twice.entries.begin(), twice.entries.end(), [](const auto &a, const auto &b) {
        return std::tie(a.date, a.project_id) < std::tie(b.date, b.project_id);
    }));
}

TEST_CASE("metrics CSV round trip") {
    MetricsSeries series;
    series.entries = {{"2026-03-01", "A", 10, 4}, {"2026-03-01", "B", 7, 2}, {"2026-03-02", "A", 12, 5}};
    auto csv = metrics_to_csv(series);
    CHECK(csv.rfind(std::string(kMetricsHeader) + "\n", 0) == 0);
    CHECK(metrics_from_csv(csv) == series);
    CHECK_THROWS_AS(metrics_from_csv("day,project\n"), ValidationError);
    CHECK_THROWS_AS(metrics_from_csv(std::string(kMetricsHeader) + "\n2026-03-01,A,x,1\n"), ValidationError);

    TempDir tmp;
    CHECK(load_metrics(tmp / "none.csv").entries.empty());
    save_metrics(tmp / "m.csv", series);
    CHECK(load_metrics(tmp / "m.csv") == series);
}

TEST_CASE("adding a file between days raises the function count by its methods") {
    TempDir tmp;
    auto config = testsupport::copy_corpus(tmp / "corpus");
    SnapshotStore store(config.data_dir);
    auto first = rebuild(config, store, testsupport::day(1));
    testsupport::write_text(tmp / "corpus/Shop.Data/AuditRepository.cs", kAuditRepository);
    auto second = rebuild(config, store, testsupport::day(2));
    auto series = load_metrics(store.metrics_path());
    REQUIRE(series.entries.size() == 6);
    auto fc = [&](const std::string &date, const std::string &project) {
        for (const auto &e : series.entries)
            if (e.date == date && e.project_id == project)
                return e.function_count;
        FAIL("missing entry");
        return std::size_t{0};
    };
    CHECK(fc("2026-03-02", "Shop.Data") == fc("2026-03-01", "Shop.Data") + 2);
    CHECK(fc("2026-03-02", "Shop.Web") == fc("2026-03-01", "Shop.Web"));
    CHECK(second.per_project_counts.at("Shop.Data").class_count ==
          first.per_project_counts.at("Shop.Data").class_count + 1);
}

TEST_CASE("incremental rebuild equals a full rebuild") {
    TempDir tmp;
    auto config = testsupport::copy_corpus(tmp / "corpus");
    ExtractionCache cache;
    auto warm = build_snapshot(config, testsupport::day(1), &cache);
    CHECK(cache.hits() == 0);
    CHECK(warm == build_snapshot(config, testsupport::day(1)));

    testsupport::write_text(tmp / "corpus/Shop.Data/AuditRepository.cs", kAuditRepository);
    std::filesystem::remove(tmp / "corpus/Shop.Business/ReportService.cs");
    auto text = testsupport::read_text(tmp / "corpus/Shop.Business/CartService.cs");
    testsupport::write_text(tmp / "corpus/Shop.Business/CartService.cs", text + "\n// touched\n");

    auto incremental = build_snapshot(config, testsupport::day(2), &cache);
    auto full = build_snapshot(config, testsupport::day(2));
    CHECK(incremental == full);
    CHECK(cache.hits() > 20);
    auto code_files = std::count_if(full.files.begin(), full.files.end(),
                                    [](const FileRecord &f) { return f.category == FileCategory::CodeBehind; });
    CHECK(cache.size() == static_cast<std::size_t>(code_files));
}

TEST_CASE("rebuild persists and records metrics") {
    TempDir tmp;
    auto config = testsupport::corpus_config(tmp / "data");
    SnapshotStore store(config.data_dir);
    auto snap = rebuild(config, store, testsupport::day(5));
    CHECK(store.list().size() == 1);
    CHECK(store.load(snap.snapshot_id) == snap);
    CHECK(load_metrics(store.metrics_path()) == append_metrics(snap, {}));
}

TEST_CASE("scheduler skips overlapping ticks") {
    std::vector<std::string> log;
    std::mutex log_mutex;
    Scheduler s([] { std::this_thread::sleep_for(120ms); }, 20ms, [&](std::string_view line) {
        std::lock_guard lock(log_mutex);
        log.emplace_back(line);
    });
    s.run(10);
    CHECK(s.runs_started() >= 1);
    CHECK(s.ticks_skipped() >= 1);
    CHECK(s.runs_started() + s.ticks_skipped() == 10);
    CHECK(s.failures() == 0);
    std::lock_guard lock(log_mutex);
    CHECK(std::any_of(log.begin(), log.end(), [](const auto &l) { return l.find("skip") != std::string::npos; }));
}

TEST_CASE("scheduler survives failing runs") {
    std::atomic<int> calls{0};
    Scheduler s(
        [&] {
            if (++calls % 2 == 1)
                throw std::runtime_error("boom");
        },
        10ms, [](std::string_view) {});
    s.run(6);
    CHECK(s.runs_started() == 6);
    CHECK(s.failures() == 3);
    CHECK(calls == 6);
}

TEST_CASE("scheduled ticks: unchanged corpus stays equal, mutation shows in metrics") {
    TempDir tmp;
    auto config = testsupport::copy_corpus(tmp / "corpus");
    SnapshotStore store(config.data_dir);
    int tick = 0;
    std::vector<GraphSnapshot> snaps;
    Scheduler s(
        [&] {
            ++tick;
            if (tick == 3)
                testsupport::write_text(tmp / "corpus/Shop.Data/AuditRepository.cs", kAuditRepository);
            snaps.push_back(rebuild(config, store, testsupport::day(tick)));
        },
        50ms, [](std::string_view) {});
    s.run(3);
    REQUIRE(snaps.size() == 3);
    CHECK(snaps[0].same_content(snaps[1]));
    CHECK_FALSE(snaps[1].same_content(snaps[2]));
    auto series = load_metrics(store.metrics_path());
    REQUIRE(series.entries.size() == 9);
    // entries sort by (date, project): Shop.Data sits at index 1 of each day
    CHECK(series.entries[1].function_count == series.entries[4].function_count);
    CHECK(series.entries[7].function_count == series.entries[4].function_count + 2);
    CHECK(series.entries[7].graph_size > series.entries[4].graph_size);
}

}
