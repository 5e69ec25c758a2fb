#pragma once

#include "tiergraph/model.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace tiergraph {

/// Builtin type names excluded from composition members.
const std::set<std::string> &default_builtin_types();

/// Strips generic arguments, nullable and array suffixes, and a `global::`
/// qualifier: "List<Order>[]?" -> "List".
std::string base_type_name(std::string_view type);

/// Whitespace collapsed and removed around punctuation, used to compare
/// parameter lists.
std::string normalize_whitespace(std::string_view text);
std::string render_parameters(const std::vector<Parameter> &parameters);

/// One directive per line that starts with `using` followed by a dotted name
/// and `;`. Aliases, `using static` and using-statements are ignored.
std::vector<UsingDirective> extract_usings(std::string_view stripped, Diagnostics *diagnostics = nullptr,
                                           std::string_view file = {});

/// Declarations only; members stay empty. Nested types are included with
/// dotted names.
std::vector<ClassModel> extract_classes(std::string_view stripped, std::string_view namespace_ctx,
                                        Diagnostics *diagnostics = nullptr);

struct MemberSet {
    std::vector<MethodModel> methods;
    std::vector<PropertyModel> properties;
    std::vector<FieldModel> fields;
};

struct ExtractOptions {
    std::set<std::string> builtin_types = default_builtin_types();
};

/// `class_body` is the stripped text between a class's braces, `base_offset`
/// its position in the file. Nested type bodies are skipped.
MemberSet extract_members(std::string_view class_body, std::string_view class_name = {},
                          std::size_t base_offset = 0, Diagnostics *diagnostics = nullptr,
                          const ExtractOptions &options = {});

/// Dot-operator usages in a member body. Only the first link of a chain is
/// kept; bodies of lambdas are not scanned. Skips are reported as diagnostics.
std::vector<CallSite> extract_call_sites(std::string_view body, std::string_view method_id,
                                         std::size_t base_offset = 0, Diagnostics *diagnostics = nullptr);

/// Offsets of every `=>` token in a member body.
std::vector<std::size_t> detect_anonymous(std::string_view body, std::size_t base_offset = 0);

/// Local declarations in a member body, in source order.
std::vector<LocalDecl> extract_locals(std::string_view body, std::size_t base_offset = 0);

/// Full per-file extraction: noise stripping, usings, namespaces, classes with
/// members and call sites. Never throws on malformed input.
FileModel extract_file(std::string_view source, std::string_view path, std::string_view project_id = {},
                       const ExtractOptions &options = {});

/// Method id used throughout the graph: "Ns.Class.Name(type,type)".
std::string method_id(const ClassModel &owner, const MethodModel &method);
std::string property_id(const ClassModel &owner, const PropertyModel &property);

} // namespace tiergraph
