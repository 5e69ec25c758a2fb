#include "tiergraph/corpus.hpp"

#include "tiergraph/error.hpp"
#include "tiergraph/hash.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tiergraph {

namespace fs = std::filesystem;

std::string_view to_string(FileCategory category) {
    return category == FileCategory::CodeBehind ? "CodeBehind" : "NonCode";
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error("cannot read " + path.string());
    return std::move(buffer).str();
}

fs::path FileInventory::absolute_path(const FileRecord &record) const {
    auto it = project_roots.find(record.project_id);
    if (it == project_roots.end())
        throw NotFoundError("unknown project '" + record.project_id + "'");
    return it->second / fs::path(record.path);
}

FileCategory categorize_file(const fs::path &path, const ProjectConfig &config) {
    std::string ext = path.extension().string();
    if (ext.empty())
        return FileCategory::NonCode;
    ext.erase(0, 1);
    std::string lower = ext;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (config.non_code_extensions.count(lower))
        return FileCategory::NonCode;
    // the analyzed language is case-sensitive, and so is its extension
    return ext == "cs" ? FileCategory::CodeBehind : FileCategory::NonCode;
}

namespace {

bool hidden(const fs::path &name) {
    auto s = name.filename().string();
    return !s.empty() && s.front() == '.';
}

void scan_project(const ProjectConfig &config, std::vector<FileRecord> &out) {
    std::error_code ec;
    if (!fs::is_directory(config.root_path, ec))
        throw ConfigError("project '" + config.project_id + "': root " + config.root_path.string() +
                          " does not exist or is not a directory");

    std::vector<FileRecord> found;
    fs::recursive_directory_iterator it(config.root_path, fs::directory_options::skip_permission_denied, ec);
    if (ec)
        throw ConfigError("project '" + config.project_id + "': cannot read root: " + ec.message());
    for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (ec)
            break;
        const auto &entry = *it;
        if (hidden(entry.path())) {
            if (entry.is_directory(ec))
                it.disable_recursion_pending();
            continue;
        }
        if (!entry.is_regular_file(ec))
            continue;

        FileRecord record;
        record.path = entry.path().lexically_relative(config.root_path).generic_string();
        record.project_id = config.project_id;
        record.category = categorize_file(entry.path(), config);
        try {
            record.content_hash = sha256_hex(read_file(entry.path()));
        } catch (const Error &) {
            record.skipped = true;
        }
        found.push_back(std::move(record));
    }
    std::sort(found.begin(), found.end(), [](const FileRecord &a, const FileRecord &b) { return a.path < b.path; });
    out.insert(out.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
}

} // namespace

FileInventory scan_corpus(const std::vector<ProjectConfig> &configs) {
    std::vector<const ProjectConfig *> ordered;
    for (const auto &c : configs)
        ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const ProjectConfig *a, const ProjectConfig *b) { return a->project_id < b->project_id; });

    FileInventory inventory;
    for (const auto *config : ordered) {
        scan_project(*config, inventory.files);
        inventory.project_roots[config->project_id] = config->root_path;
    }
    return inventory;
}

} // namespace tiergraph
