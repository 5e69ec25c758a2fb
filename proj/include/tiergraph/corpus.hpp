#pragma once

#include "tiergraph/config.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

enum class FileCategory { CodeBehind, NonCode };

std::string_view to_string(FileCategory category);

struct FileRecord {
    /// Relative to the project root, '/'-separated.
    std::string path;
    std::string project_id;
    FileCategory category = FileCategory::NonCode;
    std::string content_hash;
    /// Set when the file could not be read; content_hash is then empty.
    bool skipped = false;

    friend bool operator==(const FileRecord &, const FileRecord &) = default;
};

struct FileInventory {
    std::vector<FileRecord> files;
    std::map<std::string, std::filesystem::path> project_roots;

    std::filesystem::path absolute_path(const FileRecord &record) const;

    friend bool operator==(const FileInventory &, const FileInventory &) = default;
};

/// Analyzed-language source (.cs) is CodeBehind unless its extension is
/// explicitly configured as non-code; everything else is NonCode.
FileCategory categorize_file(const std::filesystem::path &path, const ProjectConfig &config);

/// Walks every project root. Dot-prefixed files and directories are skipped.
/// Output is sorted by (project_id, path). Throws ConfigError for a missing root.
FileInventory scan_corpus(const std::vector<ProjectConfig> &configs);

/// Reads a file fully; throws Error on failure.
std::string read_file(const std::filesystem::path &path);

} // namespace tiergraph
