#pragma once

#include "tiergraph/config.hpp"
#include "tiergraph/diagnostics.hpp"
#include "tiergraph/layer.hpp"
#include "tiergraph/model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

enum class EdgeKind { IntraLayer, InterLayer, InvertedLayer, Static, WebServiceProxy, ThirdParty, AnonymousLeaf, Unresolved };

std::string_view to_string(EdgeKind kind);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

/// `This` covers `this.` and `base.` receivers; `ExternalType` is a capitalized
/// receiver naming a type from an imported third-party namespace.
enum class BindingSource { LocalVar, Parameter, Field, StaticClass, This, ExternalType, Unresolved };

std::string_view to_string(BindingSource source);

/// Node id prefixes for edge targets that are not indexed members.
inline constexpr std::string_view kExternalPrefix = "ext:";
inline constexpr std::string_view kLambdaPrefix = "lambda:";
inline constexpr std::string_view kUnresolvedPrefix = "unresolved:";

struct ClassInfo {
    /// Merged over every partial declaration.
    ClassModel model;
    std::string project_id;
    LayerKind layer = LayerKind::Unknown;
    std::vector<std::string> files;
    /// Union of using directives over the declaring files.
    std::vector<std::string> usings;
    /// Derives from a configured proxy marker or sits in a WebService-bound namespace.
    bool is_proxy = false;
    bool is_third_party = false;
};

struct SymbolIndex {
    /// Simple identifier (last segment of the name) to class ids.
    std::map<std::string, std::vector<std::string>> classes_by_name;
    std::map<std::string, std::string> classes_by_fqname;
    std::map<std::string, ClassInfo> members_by_class;
    /// Identifiers of classes that are static or declare a static member.
    std::set<std::string> static_class_names;
    Diagnostics diagnostics;

    const ClassInfo *find(std::string_view class_id) const;
};

struct ReceiverBinding {
    std::string receiver_token;
    /// Class id, or a bare type name for ExternalType and external typed
    /// variables. Empty when unresolved.
    std::string resolved_type;
    BindingSource binding_source = BindingSource::Unresolved;
    /// Declared type is not indexed but comes from a third-party import.
    bool external = false;
    /// Declared type is a builtin; such receivers yield no edge.
    bool builtin = false;
};

struct ResolvedEdge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::Unresolved;
    LayerKind from_layer = LayerKind::Unknown;
    LayerKind to_layer = LayerKind::Unknown;
    bool crosses_project = false;
    /// Position of the call site in its file; orders children in call graphs.
    std::size_t offset = 0;
    friend bool operator==(const ResolvedEdge &, const ResolvedEdge &) = default;
    friend auto operator<=>(const ResolvedEdge &, const ResolvedEdge &) = default;
};

struct Resolution {
    std::vector<ResolvedEdge> edges;
    Diagnostics diagnostics;
};

/// Where a member body lives, needed to interpret type names.
struct ResolveContext {
    const ClassInfo *owner = nullptr;
    /// Namespaces imported by the file holding the member body.
    std::vector<std::string> usings;
    std::string file;
};

SymbolIndex build_symbol_index(const std::vector<FileModel> &files, const std::vector<ProjectConfig> &configs = {});

/// Resolves a type name as written in `ctx` to a class id: nested types of the
/// owner, the enclosing namespaces, then using directives. Without an owner a
/// globally unique simple name also matches.
std::optional<std::string> resolve_type(std::string_view type_name, const ResolveContext &ctx,
                                        const SymbolIndex &index);

ReceiverBinding bind_receiver(const CallSite &site, const std::vector<LocalDecl> &locals,
                              const std::vector<Parameter> &parameters, const ResolveContext &ctx,
                              const SymbolIndex &index, const std::vector<ProjectConfig> &configs = {});

/// Edges for one call site. Empty when the site needs no edge: builtin-typed
/// receivers and plain field reads.
std::vector<ResolvedEdge> resolve_call(const CallSite &site, const ReceiverBinding &binding,
                                       const ResolveContext &ctx, const SymbolIndex &index,
                                       const std::vector<ProjectConfig> &configs, Diagnostics *diagnostics = nullptr);

/// Every edge of the corpus: call sites of methods and property bodies, plus
/// one AnonymousLeaf edge per lambda. Proxy and third-party classes have no
/// outgoing edges. Output is sorted.
Resolution resolve_all(const std::vector<FileModel> &files, const SymbolIndex &index,
                       const std::vector<ProjectConfig> &configs);

/// Display name of a node id: methods lose their parameter list, external and
/// unresolved ids lose their prefix, lambdas become "<method>.<lambdaN>".
std::string node_display_name(std::string_view id);

std::string lambda_id(std::string_view method_id, std::size_t ordinal);

} // namespace tiergraph
