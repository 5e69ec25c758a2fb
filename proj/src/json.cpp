#include "tiergraph/json.hpp"

#include "tiergraph/error.hpp"

namespace tiergraph {

namespace {

template <typename Enum, typename Parse>
Enum enum_field(const json &j, const char *key, Parse parse) {
    auto text = j.at(key).get<std::string>();
    auto value = parse(text);
    if (!value)
        throw ValidationError(std::string("unknown ") + key + " '" + text + "'");
    return *value;
}

std::string_view type_kind_name(TypeKind k) {
    switch (k) {
    case TypeKind::Interface:
        return "interface";
    case TypeKind::Struct:
        return "struct";
    case TypeKind::Class:
        break;
    }
    return "class";
}

} // namespace

std::string canonical_dump(const json &value) { return value.dump(-1, ' ', false, json::error_handler_t::replace); }

void to_json(json &j, const Diagnostic &d) {
    j = json{{"file", d.file},       {"offset", d.offset}, {"code", d.code},
             {"message", d.message}, {"symbol", d.symbol}, {"scope", d.scope}};
}

void from_json(const json &j, Diagnostic &d) {
    d.file = j.at("file").get<std::string>();
    d.offset = j.at("offset").get<std::size_t>();
    d.code = j.at("code").get<std::string>();
    d.message = j.at("message").get<std::string>();
    d.symbol = j.at("symbol").get<std::string>();
    d.scope = j.at("scope").get<std::string>();
}

void to_json(json &j, const FileRecord &r) {
    j = json{{"path", r.path},
             {"project", r.project_id},
             {"category", std::string(to_string(r.category))},
             {"hash", r.content_hash},
             {"skipped", r.skipped}};
}

void from_json(const json &j, FileRecord &r) {
    r.path = j.at("path").get<std::string>();
    r.project_id = j.at("project").get<std::string>();
    auto category = j.at("category").get<std::string>();
    if (category != "CodeBehind" && category != "NonCode")
        throw ValidationError("unknown category '" + category + "'");
    r.category = category == "CodeBehind" ? FileCategory::CodeBehind : FileCategory::NonCode;
    r.content_hash = j.at("hash").get<std::string>();
    r.skipped = j.at("skipped").get<bool>();
}

void to_json(json &j, const Node &n) {
    j = json{{"id", n.id},
             {"name", n.name},
             {"kind", std::string(to_string(n.kind))},
             {"layer", std::string(to_string(n.layer))},
             {"project", n.project_id},
             {"file", n.file}};
}

void from_json(const json &j, Node &n) {
    n.id = j.at("id").get<std::string>();
    n.name = j.at("name").get<std::string>();
    n.kind = enum_field<NodeKind>(j, "kind", parse_node_kind);
    n.layer = enum_field<LayerKind>(j, "layer", parse_layer);
    n.project_id = j.at("project").get<std::string>();
    n.file = j.at("file").get<std::string>();
}

void to_json(json &j, const ResolvedEdge &e) {
    j = json{{"from", e.from},
             {"to", e.to},
             {"kind", std::string(to_string(e.kind))},
             {"from_layer", std::string(to_string(e.from_layer))},
             {"to_layer", std::string(to_string(e.to_layer))},
             {"crosses_project", e.crosses_project},
             {"offset", e.offset}};
}

void from_json(const json &j, ResolvedEdge &e) {
    e.from = j.at("from").get<std::string>();
    e.to = j.at("to").get<std::string>();
    e.kind = enum_field<EdgeKind>(j, "kind", parse_edge_kind);
    e.from_layer = enum_field<LayerKind>(j, "from_layer", parse_layer);
    e.to_layer = enum_field<LayerKind>(j, "to_layer", parse_layer);
    e.crosses_project = j.at("crosses_project").get<bool>();
    e.offset = j.at("offset").get<std::size_t>();
}

void to_json(json &j, const ProjectCounts &c) {
    j = json{{"class_count", c.class_count},
             {"function_count", c.function_count},
             {"property_count", c.property_count},
             {"edge_count", c.edge_count},
             {"graph_size", c.graph_size()}};
}

void from_json(const json &j, ProjectCounts &c) {
    c.class_count = j.at("class_count").get<std::size_t>();
    c.function_count = j.at("function_count").get<std::size_t>();
    c.property_count = j.at("property_count").get<std::size_t>();
    c.edge_count = j.at("edge_count").get<std::size_t>();
}

void to_json(json &j, const UsingDirective &u) { j = json{{"raw", u.raw}, {"segments", u.segments}, {"offset", u.offset}}; }

void to_json(json &j, const Span &s) { j = json::array({s.begin, s.end}); }

void to_json(json &j, const Parameter &p) {
    j = json{{"modifier", p.modifier}, {"type", p.type}, {"name", p.name}, {"default", p.default_value}};
}

void to_json(json &j, const CallSite &c) {
    j = json{{"receiver", c.receiver_token},
             {"member", c.member_token},
             {"invocation", c.is_invocation},
             {"method", c.enclosing_method},
             {"offset", c.char_offset}};
}

void to_json(json &j, const LocalDecl &l) { j = json{{"name", l.name}, {"type", l.type}, {"offset", l.offset}}; }

void to_json(json &j, const MethodModel &m) {
    j = json{{"accessibility", m.accessibility},
             {"return_type", m.return_type},
             {"name", m.name},
             {"type_param_count", m.type_param_count},
             {"parameters", m.parameters},
             {"parameter_text", m.parameter_text},
             {"body_span", m.body_span},
             {"has_body", m.has_body},
             {"is_static", m.is_static},
             {"call_sites", m.call_sites},
             {"locals", m.locals},
             {"anonymous_offsets", m.anonymous_offsets},
             {"contains_anonymous", m.contains_anonymous},
             {"offset", m.offset}};
}

void to_json(json &j, const PropertyModel &p) {
    j = json{{"access", p.access},
             {"return_type", p.return_type},
             {"name", p.name},
             {"is_static", p.is_static},
             {"body_spans", p.body_spans},
             {"call_sites", p.call_sites},
             {"locals", p.locals},
             {"anonymous_offsets", p.anonymous_offsets},
             {"offset", p.offset}};
}

void to_json(json &j, const FieldModel &f) {
    j = json{{"declared_type", f.declared_type},
             {"name", f.name},
             {"is_custom", f.is_custom},
             {"is_static", f.is_static},
             {"offset", f.offset}};
}

void to_json(json &j, const ClassModel &c) {
    j = json{{"qualifier", c.qualifier},
             {"name", c.name},
             {"fq_name", c.fq_name()},
             {"type_param_count", c.type_param_count},
             {"parents", c.parents},
             {"namespace", c.ns},
             {"file", c.file},
             {"kind", std::string(type_kind_name(c.kind))},
             {"is_static", c.is_static},
             {"is_partial", c.is_partial},
             {"methods", c.methods},
             {"properties", c.properties},
             {"fields", c.fields},
             {"body_span", c.body_span},
             {"offset", c.offset}};
}

void to_json(json &j, const FileModel &f) {
    j = json{{"path", f.path},
             {"project", f.project_id},
             {"usings", f.usings},
             {"classes", f.classes},
             {"generated_marker", f.generated_marker},
             {"diagnostics", f.diagnostics}};
}

} // namespace tiergraph
