#include "tiergraph/evaluator.hpp"

#include "tiergraph/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>

namespace tiergraph {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string member_of(std::string_view name) {
    auto dot = name.rfind('.');
    return std::string(dot == std::string_view::npos ? name : name.substr(dot + 1));
}

double parse_double(std::string_view text, const std::string &what) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("bad " + what + " '" + std::string(text) + "'");
    return value;
}

template <typename Int> Int parse_int(std::string_view text, const std::string &what) {
    Int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("bad " + what + " '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

void check_csv_field(std::string_view field) {
    if (field.find_first_of(",\n\r") != std::string_view::npos)
        throw ValidationError("value '" + std::string(field) + "' cannot be written to the report CSV");
}

} // namespace

std::string match_key(std::string_view name) {
    std::string out;
    for (char c : name)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out.push_back(c);
    return out;
}

GroundTruthGraph parse_ground_truth(std::string_view text, std::string source) {
    GroundTruthGraph truth;
    truth.source = std::move(source);
    std::set<std::string> seen;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        auto where = truth.source + ":" + std::to_string(line_no);
        auto colon = line.find(':');
        auto arrow = line.find("<-");
        if (colon != std::string_view::npos && (arrow == std::string_view::npos || colon < arrow) &&
            line.find(' ') > colon) {
            auto key = trim(line.substr(0, colon));
            auto value = trim(line.substr(colon + 1));
            if (key == "entry")
                truth.entry = match_key(value);
            else if (key == "subset")
                truth.subset = std::string(value);
            else if (key == "manual_minutes")
                truth.manual_minutes = parse_double(value, where + " manual_minutes");
            else
                throw ValidationError(where + ": unknown directive '" + std::string(key) + "'");
            continue;
        }
        std::string node;
        if (arrow != std::string_view::npos) {
            node = match_key(line.substr(0, arrow));
            auto parent = match_key(line.substr(arrow + 2));
            if (node.empty() || parent.empty())
                throw ValidationError(where + ": malformed parent annotation");
            truth.parents[node] = parent;
        } else {
            node = match_key(line);
        }
        if (seen.insert(node).second)
            truth.expected_nodes.push_back(node);
    }
    if (truth.entry.empty())
        throw ValidationError(truth.source + ": missing 'entry:' line");
    if (!seen.count(truth.entry))
        throw ValidationError(truth.source + ": entry '" + truth.entry + "' is not listed as a node");
    return truth;
}

std::vector<GroundTruthGraph> load_suite(const std::filesystem::path &dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw NotFoundError("suite directory " + dir.string() + " does not exist");
    std::vector<std::filesystem::path> files;
    for (const auto &entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".truth")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<GroundTruthGraph> suite;
    for (const auto &f : files)
        suite.push_back(parse_ground_truth(read_file(f), f.filename().string()));
    return suite;
}

EntryResult compare(const CallGraph &automated, const GroundTruthGraph &truth) {
    auto root = match_key(node_display_name(automated.root));
    if (root != truth.entry)
        throw ValidationError("graph root '" + root + "' does not match truth entry '" + truth.entry + "'");
    std::set<std::string> names;
    for (const auto &n : automated.nodes)
        names.insert(match_key(n.name));
    EntryResult r;
    r.entry = truth.entry;
    r.subset = truth.subset;
    r.manual_minutes = truth.manual_minutes;
    r.manual_count = truth.expected_nodes.size();
    r.auto_count = names.size();
    for (const auto &expected : truth.expected_nodes) {
        if (names.count(expected))
            ++r.matched_count;
        else
            r.misses.push_back({expected, {}});
    }
    r.recall = r.manual_count ? static_cast<double>(r.matched_count) / static_cast<double>(r.manual_count) : 0.0;
    r.precision = r.auto_count ? static_cast<double>(r.matched_count) / static_cast<double>(r.auto_count) : 0.0;
    return r;
}

void attribute_misses(EntryResult &result, const GroundTruthGraph &truth, const GraphSnapshot &snapshot) {
    std::set<std::string> expected(truth.expected_nodes.begin(), truth.expected_nodes.end());
    std::map<std::string, std::string> causes;
    std::set<std::string> missed;
    for (const auto &m : result.misses)
        missed.insert(m.name);
    std::set<std::string> in_progress;

    std::function<std::string(const std::string &)> cause_of = [&](const std::string &name) -> std::string {
        if (auto it = causes.find(name); it != causes.end())
            return it->second;
        if (!in_progress.insert(name).second)
            return {};
        auto parent_it = truth.parents.find(name);
        auto member = member_of(name);
        std::string cause;
        for (const auto &d : snapshot.diagnostics) {
            if (d.symbol != member || d.scope.empty())
                continue;
            auto scope = match_key(node_display_name(d.scope));
            bool in_scope = parent_it != truth.parents.end() ? scope == parent_it->second : expected.count(scope) > 0;
            if (in_scope) {
                cause = d.code;
                break;
            }
        }
        if (cause.empty() && parent_it != truth.parents.end() && missed.count(parent_it->second))
            cause = cause_of(parent_it->second);
        in_progress.erase(name);
        causes[name] = cause;
        return cause;
    };
    for (auto &m : result.misses)
        m.cause = cause_of(m.name);
}

double aggregate_accuracy(const std::vector<EntryResult> &entries) {
    std::size_t matched = 0;
    std::size_t manual = 0;
    for (const auto &e : entries) {
        matched += e.matched_count;
        manual += e.manual_count;
    }
    return manual ? static_cast<double>(matched) / static_cast<double>(manual) : 0.0;
}

AccuracyReport make_report(std::vector<EntryResult> entries) {
    AccuracyReport report;
    report.entries = std::move(entries);
    report.aggregate = aggregate_accuracy(report.entries);
    std::map<std::string, std::vector<EntryResult>> by_subset;
    for (const auto &e : report.entries)
        if (!e.subset.empty())
            by_subset[e.subset].push_back(e);
    for (const auto &[subset, list] : by_subset)
        report.subset_accuracy[subset] = aggregate_accuracy(list);
    double manual_sum = 0;
    std::size_t manual_n = 0;
    double auto_sum = 0;
    for (const auto &e : report.entries) {
        if (e.manual_minutes) {
            manual_sum += *e.manual_minutes;
            ++manual_n;
        }
        auto_sum += static_cast<double>(e.auto_micros) / 60e6;
    }
    if (manual_n)
        report.manual_avg_minutes = manual_sum / static_cast<double>(manual_n);
    if (!report.entries.empty())
        report.auto_avg_minutes = auto_sum / static_cast<double>(report.entries.size());
    if (report.manual_avg_minutes && report.auto_avg_minutes > 0)
        report.speedup = *report.manual_avg_minutes / report.auto_avg_minutes;
    return report;
}

std::chrono::microseconds steady_timer(const std::function<void()> &fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
}

AccuracyReport run_benchmark(const GraphSnapshot &snapshot, const std::vector<GroundTruthGraph> &suite,
                             const GraphOptions &options, const Timer &timer) {
    std::vector<EntryResult> entries;
    for (const auto &truth : suite) {
        CallGraph graph;
        std::string failure;
        auto elapsed = timer([&] {
            try {
                graph = generate_call_graph(truth.entry, snapshot, options);
            } catch (const NotFoundError &) {
                failure = "entry-not-found";
            } catch (const ValidationError &) {
                failure = "entry-ambiguous";
            }
        });
        EntryResult r;
        if (failure.empty()) {
            r = compare(graph, truth);
            attribute_misses(r, truth, snapshot);
        } else {
            r.entry = truth.entry;
            r.subset = truth.subset;
            r.manual_minutes = truth.manual_minutes;
            r.manual_count = truth.expected_nodes.size();
            r.note = failure;
            for (const auto &n : truth.expected_nodes)
                r.misses.push_back({n, failure});
        }
        r.auto_micros = elapsed.count();
        entries.push_back(std::move(r));
    }
    return make_report(std::move(entries));
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    return std::string(buf, ptr);
}

std::string report_to_csv(const AccuracyReport &report) {
    std::string out(kReportHeader);
    out += '\n';
    for (const auto &e : report.entries) {
        std::string misses;
        for (const auto &m : e.misses) {
            check_csv_field(m.name);
            if (m.name.find_first_of(";=") != std::string::npos || m.cause.find_first_of(";=,") != std::string::npos)
                throw ValidationError("miss '" + m.name + "' cannot be written to the report CSV");
            misses += (misses.empty() ? "" : ";") + m.name + "=" + m.cause;
        }
        check_csv_field(e.entry);
        check_csv_field(e.subset);
        check_csv_field(e.note);
        out += e.entry + "," + e.subset + "," + std::to_string(e.manual_count) + "," + std::to_string(e.auto_count) +
               "," + std::to_string(e.matched_count) + "," + format_double(e.recall) + "," +
               format_double(e.precision) + "," + (e.manual_minutes ? format_double(*e.manual_minutes) : "") + "," +
               std::to_string(e.auto_micros) + "," + format_fixed(static_cast<double>(e.auto_micros) / 60e6, 2) + "," +
               misses + "," + e.note + "\n";
    }
    return out;
}

AccuracyReport report_from_csv(std::string_view csv) {
    auto lines = split(csv, '\n');
    if (lines.empty() || trim(lines.front()) != kReportHeader)
        throw ValidationError("report CSV must start with '" + std::string(kReportHeader) + "'");
    std::vector<EntryResult> entries;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto line = lines[i];
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        auto f = split(line, ',');
        auto where = "report line " + std::to_string(i + 1);
        if (f.size() != 12)
            throw ValidationError(where + ": expected 12 fields");
        EntryResult e;
        e.entry = std::string(f[0]);
        e.subset = std::string(f[1]);
        e.manual_count = parse_int<std::size_t>(f[2], where + " manual_count");
        e.auto_count = parse_int<std::size_t>(f[3], where + " auto_count");
        e.matched_count = parse_int<std::size_t>(f[4], where + " matched_count");
        e.recall = parse_double(f[5], where + " recall");
        e.precision = parse_double(f[6], where + " precision");
        if (!f[7].empty())
            e.manual_minutes = parse_double(f[7], where + " manual_minutes");
        e.auto_micros = parse_int<std::int64_t>(f[8], where + " auto_micros");
        if (!f[10].empty())
            for (auto item : split(f[10], ';')) {
                auto eq = item.find('=');
                if (eq == std::string_view::npos)
                    throw ValidationError(where + ": malformed miss '" + std::string(item) + "'");
                e.misses.push_back({std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))});
            }
        e.note = std::string(f[11]);
        entries.push_back(std::move(e));
    }
    return make_report(std::move(entries));
}

json to_json_value(const AccuracyReport &report) {
    json entries = json::array();
    for (const auto &e : report.entries) {
        json misses = json::array();
        for (const auto &m : e.misses)
            misses.push_back({{"name", m.name}, {"cause", m.cause}});
        entries.push_back({{"entry", e.entry},
                           {"subset", e.subset},
                           {"manual_count", e.manual_count},
                           {"auto_count", e.auto_count},
                           {"matched_count", e.matched_count},
                           {"recall", e.recall},
                           {"precision", e.precision},
                           {"manual_minutes", e.manual_minutes ? json(*e.manual_minutes) : json(nullptr)},
                           {"auto_micros", e.auto_micros},
                           {"misses", misses},
                           {"note", e.note}});
    }
    json j{{"entries", entries},
           {"aggregate_accuracy", report.aggregate},
           {"subset_accuracy", report.subset_accuracy},
           {"auto_avg_minutes", report.auto_avg_minutes}};
    j["manual_avg_minutes"] = report.manual_avg_minutes ? json(*report.manual_avg_minutes) : json(nullptr);
    j["speedup"] = report.speedup ? json(*report.speedup) : json(nullptr);
    return j;
}

} // namespace tiergraph
