#include "support.hpp"

#include "tiergraph/corpus.hpp"
#include "tiergraph/source.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testsupport {

TempDir::TempDir() {
    auto pattern = (fs::temp_directory_path() / "tiergraph-test-XXXXXX").string();
    if (!::mkdtemp(pattern.data()))
        throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

fs::path corpus_dir() { return fs::path(TIERGRAPH_SOURCE_DIR) / "corpus" / "shopdemo"; }
fs::path corpus_config_path() { return corpus_dir() / "tiergraph.json"; }
fs::path truth_dir() { return fs::path(TIERGRAPH_SOURCE_DIR) / "corpus" / "truth"; }
fs::path fixture_dir() { return fs::path(TIERGRAPH_SOURCE_DIR) / "tests" / "fixtures"; }

void write_text(const fs::path &path, std::string_view content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path &path) { return tiergraph::read_file(path); }

tiergraph::Config corpus_config(const fs::path &data_dir) {
    auto config = tiergraph::load_config(corpus_config_path());
    config.data_dir = data_dir;
    return config;
}

tiergraph::Config copy_corpus(const fs::path &dest) {
    fs::copy(corpus_dir(), dest, fs::copy_options::recursive);
    auto config = tiergraph::load_config(dest / "tiergraph.json");
    config.data_dir = dest / ".tiergraph";
    return config;
}

tiergraph::Config fixture_config(const fs::path &root, const fs::path &data_dir) {
    using tiergraph::LayerKind;
    tiergraph::ProjectConfig project;
    project.project_id = "Fx";
    project.root_path = root;
    project.layer_bindings = {{"Fx.Ui", LayerKind::UI},
                              {"Fx.Biz", LayerKind::Business},
                              {"Fx.Data", LayerKind::Data},
                              {"Fx.Svc", LayerKind::WebService}};
    project.webservice_proxy_markers = {"SoapHttpClientProtocol"};
    project.third_party_namespaces = {"System", "Vendor"};
    tiergraph::Config config;
    config.projects.push_back(project);
    config.data_dir = data_dir;
    return config;
}

tiergraph::GraphSnapshot snapshot_of(const fs::path &dir, const std::map<std::string, std::string> &sources) {
    fs::create_directories(dir / "src");
    for (const auto &[rel, content] : sources)
        write_text(dir / "src" / rel, content);
    return tiergraph::build_snapshot(fixture_config(dir / "src", dir / "data"), day(1));
}

tiergraph::GraphSnapshot fixture_snapshot(std::string_view name, const fs::path &data_dir) {
    return tiergraph::build_snapshot(fixture_config(fixture_dir() / name, data_dir), day(1));
}

tiergraph::Clock::time_point day(int n) {
    std::ostringstream text;
    text << "2026-03-" << (n < 10 ? "0" : "") << n;
    return tiergraph::parse_timestamp(text.str());
}

std::size_t pick(Rng &rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::string random_identifier(Rng &rng) {
    static constexpr std::string_view first = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static constexpr std::string_view rest = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789";
    while (true) {
        std::string id(1, first[pick(rng, first.size())]);
        auto len = pick(rng, 7);
        for (std::size_t i = 0; i < len; ++i)
            id += rest[pick(rng, rest.size())];
        if (!tiergraph::is_keyword(id) && !tiergraph::is_builtin_type(id))
            return id;
    }
}

} // namespace testsupport
