#include "tiergraph/api.hpp"
#include "tiergraph/config.hpp"
#include "tiergraph/error.hpp"
#include "tiergraph/evaluator.hpp"
#include "tiergraph/extractor.hpp"
#include "tiergraph/json.hpp"
#include "tiergraph/source.hpp"
#include "tiergraph/navigator.hpp"
#include "tiergraph/store.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace tiergraph;

namespace {

Clock::time_point now_of(const std::optional<std::string> &now) {
    return now ? parse_timestamp(*now) : Clock::now();
}

// Holds a config and the snapshot every query runs against. All results are
// canonical JSON text; the Python package decodes them.
class Workspace {
public:
    Workspace(const std::string &config_path, const std::optional<std::string> &data_dir)
        : config_(load_config(resolve_config_path(config_path))) {
        if (data_dir)
            config_.data_dir = *data_dir;
    }

    std::string data_dir() const { return config_.data_dir.string(); }

    std::string build(const std::optional<std::string> &now) {
        set(build_snapshot(config_, now_of(now)));
        return summary();
    }

    std::string sweep(const std::optional<std::string> &now) {
        set(rebuild(config_, SnapshotStore(config_.data_dir), now_of(now)));
        return summary();
    }

    std::string load(const std::optional<std::string> &snapshot_id) {
        SnapshotStore store(config_.data_dir);
        if (snapshot_id) {
            set(store.load(*snapshot_id));
        } else {
            auto latest = store.latest();
            if (!latest)
                throw NotFoundError("no snapshot in " + config_.data_dir.string());
            set(std::move(*latest));
        }
        return summary();
    }

    std::string summary() const { return canonical_dump(snapshot_summary(snapshot())); }

    std::string search(const std::string &keyword, bool ci) const {
        SearchOptions options;
        options.case_insensitive = ci;
        return canonical_dump(to_json_value(tiergraph::search(keyword, snapshot(), *inventory_, options)));
    }

    std::string graph(const std::string &entry, std::size_t max_depth, const std::string &format) const {
        GraphOptions options;
        options.max_depth = max_depth;
        return export_graph(generate_call_graph(entry, snapshot(), options), format);
    }

    std::string bench(const std::string &suite_dir) const {
        return canonical_dump(to_json_value(run_benchmark(snapshot(), load_suite(suite_dir))));
    }

    std::string metrics() const {
        return canonical_dump(to_json_value(load_metrics(SnapshotStore(config_.data_dir).metrics_path())));
    }

    std::pair<int, std::string> request(const std::string &method, const std::string &path,
                                        const std::map<std::string, std::string> &params) const {
        ApiService service(config_);
        service.reload(SnapshotStore(config_.data_dir));
        auto r = service.handle(method, path, params);
        return {r.status, r.body};
    }

private:
    const GraphSnapshot &snapshot() const {
        if (!snapshot_)
            throw ValidationError("no snapshot loaded; call build(), sweep() or load() first");
        return *snapshot_;
    }

    void set(GraphSnapshot snap) {
        inventory_ = inventory_of(snap, config_);
        snapshot_ = std::move(snap);
    }

    Config config_;
    std::optional<GraphSnapshot> snapshot_;
    std::optional<FileInventory> inventory_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Layered call-graph extraction and navigation for C# code bases";

    auto base = py::register_exception<Error>(m, "TiergraphError");
    py::register_exception<ConfigError>(m, "ConfigError", base);
    py::register_exception<IntegrityError>(m, "IntegrityError", base);
    py::register_exception<NotFoundError>(m, "NotFoundError", base);
    py::register_exception<ValidationError>(m, "ValidationError", base);

    m.attr("DEFAULT_MAX_DEPTH") = kDefaultMaxDepth;

    m.def(
        "extract",
        [](const std::string &source, const std::string &path, const std::string &project) {
            return canonical_dump(json(extract_file(source, path, project)));
        },
        py::arg("source"), py::arg("path") = "", py::arg("project") = "");
    m.def(
        "strip_noise",
        [](const std::string &source) { return strip_noise(source); }, py::arg("source"));
    m.def(
        "compare",
        [](const std::string &graph_json, const std::string &truth_text) {
            auto r = compare(call_graph_from_json(json::parse(graph_json)), parse_ground_truth(truth_text));
            AccuracyReport report = make_report({r});
            return canonical_dump(to_json_value(report));
        },
        py::arg("graph_json"), py::arg("truth_text"));

    py::class_<Workspace>(m, "Workspace")
        .def(py::init<const std::string &, const std::optional<std::string> &>(), py::arg("config") = "",
             py::arg("data_dir") = py::none())
        .def_property_readonly("data_dir", &Workspace::data_dir)
        .def("build", &Workspace::build, py::arg("now") = py::none())
        .def("sweep", &Workspace::sweep, py::arg("now") = py::none())
        .def("load", &Workspace::load, py::arg("snapshot_id") = py::none())
        .def("summary", &Workspace::summary)
        .def("search", &Workspace::search, py::arg("keyword"), py::arg("ci") = false)
        .def("graph", &Workspace::graph, py::arg("entry"), py::arg("max_depth") = kDefaultMaxDepth,
             py::arg("format") = "json")
        .def("bench", &Workspace::bench, py::arg("suite_dir"))
        .def("metrics", &Workspace::metrics)
        .def("request", &Workspace::request, py::arg("method"), py::arg("path"),
             py::arg("params") = std::map<std::string, std::string>{});
}
