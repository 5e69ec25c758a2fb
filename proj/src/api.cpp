#include "tiergraph/api.hpp"

#include "tiergraph/error.hpp"
#include "tiergraph/navigator.hpp"

#include <httplib.h>

#include <charconv>

namespace tiergraph {

namespace {

ApiResponse error_response(int status, std::string code, std::string message) {
    ApiError e{status, std::move(code), std::move(message)};
    return {status, canonical_dump(to_json_value(e))};
}

ApiResponse ok(const json &body) { return {200, canonical_dump(body)}; }

ApiResponse no_snapshot() { return error_response(503, "no-snapshot", "no snapshot has been built yet"); }

const std::string *param(const std::map<std::string, std::string> &params, const std::string &key) {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
}

bool truthy(const std::string *value) { return value && (*value == "1" || *value == "true" || *value == "yes"); }

} // namespace

json to_json_value(const ApiError &error) {
    return json{{"status", error.status}, {"code", error.code}, {"message", error.message}};
}

json to_json_value(const MetricsSeries &series) {
    json entries = json::array();
    for (const auto &e : series.entries)
        entries.push_back({{"date", e.date},
                           {"project", e.project_id},
                           {"graph_size", e.graph_size},
                           {"function_count", e.function_count}});
    return json{{"entries", entries}};
}

json snapshot_summary(const GraphSnapshot &snapshot) {
    json counts = json::object();
    for (const auto &[project, c] : snapshot.per_project_counts)
        counts[project] = c;
    return json{{"snapshot_id", snapshot.snapshot_id},
                {"created_at", snapshot.created_at},
                {"corpus_hash", snapshot.corpus_hash},
                {"file_count", snapshot.files.size()},
                {"node_count", snapshot.nodes.size()},
                {"edge_count", snapshot.edges.size()},
                {"per_project_counts", counts},
                {"diagnostics_summary", snapshot.diagnostics_summary}};
}

ApiService::ApiService(Config config) : config_(std::move(config)) {}

bool ApiService::reload(const SnapshotStore &store) {
    auto snap = store.latest();
    if (!snap)
        return false;
    set_state(std::move(*snap), load_metrics(store.metrics_path()));
    return true;
}

void ApiService::set_state(GraphSnapshot snapshot, MetricsSeries metrics) {
    auto state = std::make_shared<State>();
    state->inventory = inventory_of(snapshot, config_);
    state->snapshot = std::move(snapshot);
    state->metrics = std::move(metrics);
    std::lock_guard lock(mutex_);
    state_ = std::move(state);
}

std::shared_ptr<const ApiService::State> ApiService::current() const {
    std::lock_guard lock(mutex_);
    return state_;
}

ApiResponse ApiService::search(const std::map<std::string, std::string> &params) const {
    const auto *q = param(params, "q");
    if (!q || q->empty())
        return error_response(400, "bad-request", "query parameter 'q' is required");
    auto state = current();
    if (!state)
        return no_snapshot();
    SearchOptions options;
    options.case_insensitive = truthy(param(params, "ci"));
    return ok(to_json_value(tiergraph::search(*q, state->snapshot, state->inventory, options)));
}

ApiResponse ApiService::graph(const std::map<std::string, std::string> &params) const {
    const auto *entry = param(params, "entry");
    if (!entry || entry->empty())
        return error_response(400, "bad-request", "query parameter 'entry' is required");
    GraphOptions options;
    if (const auto *depth = param(params, "max_depth")) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(depth->data(), depth->data() + depth->size(), value);
        if (ec != std::errc{} || ptr != depth->data() + depth->size() || value == 0)
            return error_response(400, "bad-depth", "max_depth must be a positive integer");
        options.max_depth = value;
    }
    auto state = current();
    if (!state)
        return no_snapshot();
    try {
        return ok(to_json_value(generate_call_graph(*entry, state->snapshot, options)));
    } catch (const NotFoundError &e) {
        return error_response(404, "unknown-entry", e.what());
    } catch (const ValidationError &e) {
        return error_response(400, "ambiguous-entry", e.what());
    }
}

ApiResponse ApiService::metrics() const {
    auto state = current();
    if (!state)
        return no_snapshot();
    return ok(to_json_value(state->metrics));
}

ApiResponse ApiService::snapshot() const {
    auto state = current();
    if (!state)
        return no_snapshot();
    return ok(snapshot_summary(state->snapshot));
}

ApiResponse ApiService::handle(std::string_view method, std::string_view path,
                               const std::map<std::string, std::string> &params) const {
    bool known = path == "/api/search" || path == "/api/graph" || path == "/api/metrics/daily" || path == "/api/snapshot";
    if (!known)
        return error_response(404, "not-found", "no route " + std::string(path));
    if (method != "GET")
        return error_response(405, "method-not-allowed", "only GET is supported");
    try {
        if (path == "/api/search")
            return search(params);
        if (path == "/api/graph")
            return graph(params);
        if (path == "/api/metrics/daily")
            return metrics();
        return snapshot();
    } catch (const ValidationError &e) {
        return error_response(400, "bad-request", e.what());
    } catch (const std::exception &e) {
        return error_response(500, "internal", e.what());
    }
}

ServeOptions parse_address(std::string_view addr) {
    ServeOptions options;
    std::string_view port_text = addr;
    if (auto colon = addr.rfind(':'); colon != std::string_view::npos) {
        if (colon > 0)
            options.host = std::string(addr.substr(0, colon));
        port_text = addr.substr(colon + 1);
    }
    int port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port < 0 || port > 65535)
        throw ValidationError("bad address '" + std::string(addr) + "', expected host:port");
    options.port = port;
    return options;
}

struct ApiServer::Impl {
    Impl(const ApiService &s, ServeOptions o) : service(s), options(std::move(o)) {}
    const ApiService &service;
    ServeOptions options;
    httplib::Server server;
};

ApiServer::ApiServer(const ApiService &service, ServeOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
    auto &srv = impl_->server;
    auto *impl = impl_.get();
    auto route = [impl](const httplib::Request &req, httplib::Response &res) {
        std::map<std::string, std::string> params;
        for (const auto &[k, v] : req.params)
            params.emplace(k, v);
        auto r = impl->service.handle(req.method, req.path, params);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    for (const char *path : {"/api/search", "/api/graph", "/api/metrics/daily", "/api/snapshot"})
        srv.Get(path, route);
    srv.Get(R"(/api/.*)", route);
    if (impl_->options.dev_cors)
        srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    if (!impl_->options.static_dir.empty() && !srv.set_mount_point("/", impl_->options.static_dir.string()))
        throw ConfigError("static directory " + impl_->options.static_dir.string() + " does not exist");
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind() {
    auto &o = impl_->options;
    if (o.port == 0) {
        o.port = impl_->server.bind_to_any_port(o.host);
        if (o.port < 0)
            throw Error("cannot bind " + o.host);
    } else if (!impl_->server.bind_to_port(o.host, o.port)) {
        throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
    }
    return o.port;
}

void ApiServer::listen() { impl_->server.listen_after_bind(); }

void ApiServer::stop() {
    if (impl_)
        impl_->server.stop();
}

void serve(const ApiService &service, const ServeOptions &options) {
    ApiServer server(service, options);
    server.bind();
    server.listen();
}

} // namespace tiergraph
