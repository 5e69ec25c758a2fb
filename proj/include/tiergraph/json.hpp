#pragma once

#include "tiergraph/corpus.hpp"
#include "tiergraph/diagnostics.hpp"
#include "tiergraph/graph.hpp"
#include "tiergraph/model.hpp"
#include "tiergraph/resolver.hpp"

#include <json.hpp>

namespace tiergraph {

using json = nlohmann::json;

/// Keys are sorted and output has no insignificant whitespace, so equal
/// values always produce equal text.
std::string canonical_dump(const json &value);

void to_json(json &j, const Diagnostic &d);
void from_json(const json &j, Diagnostic &d);
void to_json(json &j, const FileRecord &r);
void from_json(const json &j, FileRecord &r);
void to_json(json &j, const Node &n);
void from_json(const json &j, Node &n);
void to_json(json &j, const ResolvedEdge &e);
void from_json(const json &j, ResolvedEdge &e);
void to_json(json &j, const ProjectCounts &c);
void from_json(const json &j, ProjectCounts &c);

void to_json(json &j, const UsingDirective &u);
void to_json(json &j, const Span &s);
void to_json(json &j, const Parameter &p);
void to_json(json &j, const CallSite &c);
void to_json(json &j, const LocalDecl &l);
void to_json(json &j, const MethodModel &m);
void to_json(json &j, const PropertyModel &p);
void to_json(json &j, const FieldModel &f);
void to_json(json &j, const ClassModel &c);
void to_json(json &j, const FileModel &f);

} // namespace tiergraph
