#pragma once

#include "tiergraph/config.hpp"
#include "tiergraph/graph.hpp"
#include "tiergraph/json.hpp"
#include "tiergraph/store.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace tiergraph {

struct ApiError {
    int status = 500;
    std::string code;
    std::string message;
};

json to_json_value(const ApiError &error);

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

json to_json_value(const MetricsSeries &series);
json snapshot_summary(const GraphSnapshot &snapshot);

/// Read-only request handling over the currently loaded snapshot. Handlers
/// are pure functions of (snapshot, metrics, query); swapping in a new
/// snapshot is atomic for concurrent readers.
class ApiService {
public:
    explicit ApiService(Config config);

    /// Loads the newest snapshot and the metrics series from `store`.
    /// Returns false when the store holds no snapshot.
    bool reload(const SnapshotStore &store);
    void set_state(GraphSnapshot snapshot, MetricsSeries metrics);

    /// Dispatches on the path. Every non-2xx body is one ApiError document.
    ApiResponse handle(std::string_view method, std::string_view path,
                       const std::map<std::string, std::string> &params) const;

    ApiResponse search(const std::map<std::string, std::string> &params) const;
    ApiResponse graph(const std::map<std::string, std::string> &params) const;
    ApiResponse metrics() const;
    ApiResponse snapshot() const;

private:
    struct State {
        GraphSnapshot snapshot;
        MetricsSeries metrics;
        FileInventory inventory;
    };
    std::shared_ptr<const State> current() const;

    Config config_;
    mutable std::mutex mutex_;
    std::shared_ptr<const State> state_;
};

struct ServeOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path static_dir;
    bool dev_cors = false;
};

/// "host:port", ":port" or "port". Throws ValidationError.
ServeOptions parse_address(std::string_view addr);

/// HTTP front end for an ApiService: GET routes under /api, static files
/// from `static_dir` when set.
class ApiServer {
public:
    ApiServer(const ApiService &service, ServeOptions options);
    ~ApiServer();
    ApiServer(const ApiServer &) = delete;
    ApiServer &operator=(const ApiServer &) = delete;

    /// Binds the socket; port 0 picks a free port. Returns the bound port.
    int bind();
    /// Serves until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Binds and blocks serving HTTP until the process is stopped.
void serve(const ApiService &service, const ServeOptions &options);

} // namespace tiergraph
