#pragma once

#include "tiergraph/diagnostics.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tiergraph {

struct UsingDirective {
    std::vector<std::string> segments;
    std::string raw;
    std::size_t offset = 0;

    friend bool operator==(const UsingDirective &, const UsingDirective &) = default;
};

/// Half-open byte range into the file the model was extracted from.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool empty() const { return begin >= end; }
    bool contains(std::size_t offset) const { return offset >= begin && offset < end; }
    friend bool operator==(const Span &, const Span &) = default;
};

struct Parameter {
    /// ref / out / in / params / this, or empty.
    std::string modifier;
    std::string type;
    std::string name;
    std::string default_value;

    friend bool operator==(const Parameter &, const Parameter &) = default;
};

struct CallSite {
    std::string receiver_token;
    std::string member_token;
    bool is_invocation = false;
    std::string enclosing_method;
    std::size_t char_offset = 0;

    friend bool operator==(const CallSite &, const CallSite &) = default;
};

/// A local variable declaration inside a member body. `type` is "var" when the
/// initializer does not name a type.
struct LocalDecl {
    std::string name;
    std::string type;
    std::size_t offset = 0;

    friend bool operator==(const LocalDecl &, const LocalDecl &) = default;
};

struct MethodModel {
    std::string accessibility;
    /// Empty for constructors.
    std::string return_type;
    std::string name;
    std::size_t type_param_count = 0;
    std::vector<Parameter> parameters;
    /// Original text between the parentheses.
    std::string parameter_text;
    Span body_span;
    bool has_body = false;
    bool is_static = false;
    std::vector<CallSite> call_sites;
    std::vector<LocalDecl> locals;
    std::vector<std::size_t> anonymous_offsets;
    bool contains_anonymous = false;
    std::size_t offset = 0;

    friend bool operator==(const MethodModel &, const MethodModel &) = default;
};

struct PropertyModel {
    std::string access;
    std::string return_type;
    std::string name;
    bool is_static = false;
    /// Accessor or expression bodies with code; empty for auto-properties.
    std::vector<Span> body_spans;
    std::vector<CallSite> call_sites;
    std::vector<LocalDecl> locals;
    std::vector<std::size_t> anonymous_offsets;
    std::size_t offset = 0;

    bool has_body() const { return !body_spans.empty(); }
    friend bool operator==(const PropertyModel &, const PropertyModel &) = default;
};

struct FieldModel {
    std::string declared_type;
    std::string name;
    bool is_custom = false;
    bool is_static = false;
    std::size_t offset = 0;

    friend bool operator==(const FieldModel &, const FieldModel &) = default;
};

enum class TypeKind { Class, Interface, Struct };

struct ClassModel {
    std::string qualifier;
    /// Dotted for nested types (Outer.Inner).
    std::string name;
    std::size_t type_param_count = 0;
    std::vector<std::string> parents;
    std::string ns;
    std::string file;
    TypeKind kind = TypeKind::Class;
    bool is_static = false;
    bool is_partial = false;
    std::vector<MethodModel> methods;
    std::vector<PropertyModel> properties;
    std::vector<FieldModel> fields;
    Span body_span;
    std::size_t offset = 0;

    std::string fq_name() const { return ns.empty() ? name : ns + "." + name; }
    friend bool operator==(const ClassModel &, const ClassModel &) = default;
};

/// Everything the extractor learned from one source file.
struct FileModel {
    std::string path;
    std::string project_id;
    std::vector<UsingDirective> usings;
    std::vector<ClassModel> classes;
    /// True when the raw text carries a generated-code header marker.
    bool generated_marker = false;
    Diagnostics diagnostics;

    friend bool operator==(const FileModel &, const FileModel &) = default;
};

} // namespace tiergraph
