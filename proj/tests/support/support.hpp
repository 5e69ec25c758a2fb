#pragma once

#include "tiergraph/config.hpp"
#include "tiergraph/graph.hpp"

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace testsupport {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;
    const fs::path &path() const { return path_; }
    fs::path operator/(const fs::path &rel) const { return path_ / rel; }

private:
    fs::path path_;
};

fs::path corpus_dir();
fs::path corpus_config_path();
fs::path truth_dir();
fs::path fixture_dir();

void write_text(const fs::path &path, std::string_view content);
std::string read_text(const fs::path &path);

/// The bundled corpus config with its data dir moved to `data_dir`.
tiergraph::Config corpus_config(const fs::path &data_dir);

/// Copies the bundled corpus (config included) to `dest` and returns the
/// config that reads it from there.
tiergraph::Config copy_corpus(const fs::path &dest);

/// Single-project config: namespaces under `Fx.Ui` are UI, `Fx.Biz` Business,
/// `Fx.Data` Data, `Fx.Svc` WebService; `Vendor` and `System` are third party.
tiergraph::Config fixture_config(const fs::path &root, const fs::path &data_dir);

/// Writes `sources` (relative path to content) under `dir`/src and builds a
/// snapshot of them with fixture_config.
tiergraph::GraphSnapshot snapshot_of(const fs::path &dir, const std::map<std::string, std::string> &sources);

/// Snapshot of a fixture directory under tests/fixtures.
tiergraph::GraphSnapshot fixture_snapshot(std::string_view name, const fs::path &data_dir);

tiergraph::Clock::time_point day(int n);

using Rng = std::mt19937_64;
std::size_t pick(Rng &rng, std::size_t n);
/// Identifier that is neither a keyword nor a builtin type name.
std::string random_identifier(Rng &rng);

} // namespace testsupport
