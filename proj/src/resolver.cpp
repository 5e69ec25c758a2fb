#include "tiergraph/resolver.hpp"

#include "tiergraph/extractor.hpp"
#include "tiergraph/source.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>

namespace tiergraph {

namespace {

constexpr std::array kEdgeKindNames = {"IntraLayer",      "InterLayer", "InvertedLayer", "Static",
                                       "WebServiceProxy", "ThirdParty", "AnonymousLeaf", "Unresolved"};

std::string last_segment(std::string_view name) {
    auto dot = name.rfind('.');
    return std::string(dot == std::string_view::npos ? name : name.substr(dot + 1));
}

const ProjectConfig *config_for(const std::vector<ProjectConfig> &configs, std::string_view project_id) {
    for (const auto &c : configs)
        if (c.project_id == project_id)
            return &c;
    return nullptr;
}

bool has_static_member(const ClassModel &cls) {
    return std::any_of(cls.methods.begin(), cls.methods.end(), [](const auto &m) { return m.is_static; }) ||
           std::any_of(cls.properties.begin(), cls.properties.end(), [](const auto &p) { return p.is_static; }) ||
           std::any_of(cls.fields.begin(), cls.fields.end(), [](const auto &f) { return f.is_static; });
}

void merge_into(ClassModel &into, const ClassModel &from) {
    into.methods.insert(into.methods.end(), from.methods.begin(), from.methods.end());
    into.properties.insert(into.properties.end(), from.properties.begin(), from.properties.end());
    into.fields.insert(into.fields.end(), from.fields.begin(), from.fields.end());
    for (const auto &p : from.parents)
        if (std::find(into.parents.begin(), into.parents.end(), p) == into.parents.end())
            into.parents.push_back(p);
    into.is_static = into.is_static || from.is_static;
    into.type_param_count = std::max(into.type_param_count, from.type_param_count);
}

ResolveContext context_of(const ClassInfo &info) { return {&info, info.usings, info.files.empty() ? "" : info.files.front()}; }

/// Parent class ids of `info`, in declaration order.
std::vector<std::string> parent_ids(const ClassInfo &info, const SymbolIndex &index) {
    std::vector<std::string> out;
    auto ctx = context_of(info);
    for (const auto &p : info.model.parents)
        if (auto id = resolve_type(p, ctx, index); id && *id != info.model.fq_name())
            out.push_back(*id);
    return out;
}

bool imports_third_party(const ResolveContext &ctx, const std::vector<ProjectConfig> &configs) {
    if (!ctx.owner)
        return false;
    const auto *cfg = config_for(configs, ctx.owner->project_id);
    if (!cfg)
        return false;
    for (const auto &u : ctx.usings)
        for (const auto &ns : cfg->third_party_namespaces)
            if (namespace_matches(u, ns))
                return true;
    return false;
}

bool qualified_third_party(std::string_view type, const ResolveContext &ctx, const std::vector<ProjectConfig> &configs) {
    if (!ctx.owner || type.find('.') == std::string_view::npos)
        return false;
    const auto *cfg = config_for(configs, ctx.owner->project_id);
    if (!cfg)
        return false;
    return std::any_of(cfg->third_party_namespaces.begin(), cfg->third_party_namespaces.end(),
                       [&](const auto &ns) { return namespace_matches(type, ns); });
}

void report(Diagnostics *diagnostics, const ResolveContext &ctx, std::size_t offset, std::string_view code,
            std::string message, std::string symbol, std::string scope) {
    if (diagnostics)
        diagnostics->push_back({ctx.file, offset, std::string(code), std::move(message), std::move(symbol), std::move(scope)});
}

/// Members named `name` found while walking the class and its ancestors.
struct Lookup {
    const ClassInfo *owner = nullptr;
    std::vector<std::string> ids;
    bool field_read = false;
};

Lookup find_member(const std::string &class_id, const std::string &name, bool invocation, const SymbolIndex &index,
                   std::set<std::string> &visited) {
    if (!visited.insert(class_id).second)
        return {};
    const auto *info = index.find(class_id);
    if (!info)
        return {};
    Lookup found{info, {}, false};
    const auto &cls = info->model;
    auto collect_methods = [&] {
        for (const auto &m : cls.methods)
            if (m.name == name)
                found.ids.push_back(method_id(cls, m));
    };
    if (invocation) {
        collect_methods();
    } else {
        for (const auto &p : cls.properties)
            if (p.name == name)
                found.ids.push_back(property_id(cls, p));
        if (found.ids.empty()) {
            for (const auto &f : cls.fields)
                if (f.name == name) {
                    found.field_read = true;
                    return found;
                }
            collect_methods();
        }
    }
    if (!found.ids.empty()) {
        std::sort(found.ids.begin(), found.ids.end());
        found.ids.erase(std::unique(found.ids.begin(), found.ids.end()), found.ids.end());
        return found;
    }
    for (const auto &parent : parent_ids(*info, index)) {
        auto inherited = find_member(parent, name, invocation, index, visited);
        if (inherited.field_read || !inherited.ids.empty())
            return inherited;
    }
    return {};
}

EdgeKind layer_kind(LayerKind from, LayerKind to) {
    if (to == LayerKind::WebService)
        return EdgeKind::InterLayer;
    if (from == to)
        return EdgeKind::IntraLayer;
    auto rf = layer_rank(from).value_or(0);
    auto rt = layer_rank(to).value_or(0);
    if (rf > rt)
        return EdgeKind::InterLayer;
    if (rf < rt)
        return EdgeKind::InvertedLayer;
    return EdgeKind::IntraLayer;
}

} // namespace

std::string_view to_string(EdgeKind kind) { return kEdgeKindNames[static_cast<std::size_t>(kind)]; }

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
    for (std::size_t i = 0; i < kEdgeKindNames.size(); ++i)
        if (text == kEdgeKindNames[i])
            return static_cast<EdgeKind>(i);
    return std::nullopt;
}

std::string_view to_string(BindingSource source) {
    switch (source) {
    case BindingSource::LocalVar:
        return "LocalVar";
    case BindingSource::Parameter:
        return "Parameter";
    case BindingSource::Field:
        return "Field";
    case BindingSource::StaticClass:
        return "StaticClass";
    case BindingSource::This:
        return "This";
    case BindingSource::ExternalType:
        return "ExternalType";
    case BindingSource::Unresolved:
        break;
    }
    return "Unresolved";
}

const ClassInfo *SymbolIndex::find(std::string_view class_id) const {
    auto it = members_by_class.find(std::string(class_id));
    return it == members_by_class.end() ? nullptr : &it->second;
}

SymbolIndex build_symbol_index(const std::vector<FileModel> &files, const std::vector<ProjectConfig> &configs) {
    SymbolIndex index;
    std::vector<const FileModel *> ordered;
    for (const auto &file : files)
        ordered.push_back(&file);
    std::sort(ordered.begin(), ordered.end(), [](const FileModel *a, const FileModel *b) {
        return std::tie(a->project_id, a->path) < std::tie(b->project_id, b->path);
    });
    for (const auto *fp : ordered) {
        const auto &file = *fp;
        std::vector<std::string> usings;
        for (const auto &u : file.usings)
            usings.push_back(u.raw);
        for (const auto &cls : file.classes) {
            auto id = cls.fq_name();
            auto it = index.members_by_class.find(id);
            if (it != index.members_by_class.end()) {
                auto &existing = it->second;
                if (!(existing.model.is_partial && cls.is_partial)) {
                    index.diagnostics.push_back({file.path, cls.offset, std::string(diag::kClassConflict),
                                                 "class already declared in " + existing.files.front(), id, {}});
                    continue;
                }
                merge_into(existing.model, cls);
                if (std::find(existing.files.begin(), existing.files.end(), file.path) == existing.files.end())
                    existing.files.push_back(file.path);
                for (const auto &u : usings)
                    if (std::find(existing.usings.begin(), existing.usings.end(), u) == existing.usings.end())
                        existing.usings.push_back(u);
                continue;
            }
            ClassInfo info;
            info.model = cls;
            info.project_id = file.project_id;
            info.files.push_back(file.path);
            info.usings = usings;
            if (const auto *cfg = config_for(configs, file.project_id))
                info.layer = layer_of(cls.ns, *cfg);
            index.classes_by_fqname.emplace(id, id);
            index.members_by_class.emplace(id, std::move(info));
        }
    }
    for (auto &[id, info] : index.members_by_class) {
        index.classes_by_name[last_segment(info.model.name)].push_back(id);
        if (info.model.name.find('.') != std::string::npos)
            index.classes_by_name[info.model.name].push_back(id);
        if (info.model.is_static || has_static_member(info.model))
            index.static_class_names.insert(last_segment(info.model.name));
        info.is_third_party = info.layer == LayerKind::ThirdParty;
        info.is_proxy = info.layer == LayerKind::WebService;
        if (const auto *cfg = config_for(configs, info.project_id))
            for (const auto &parent : info.model.parents)
                for (const auto &marker : cfg->webservice_proxy_markers)
                    if (last_segment(parent) == marker)
                        info.is_proxy = true;
        if (info.is_proxy)
            info.layer = LayerKind::WebService;
    }
    for (auto &[name, ids] : index.classes_by_name)
        std::sort(ids.begin(), ids.end());
    return index;
}

std::optional<std::string> resolve_type(std::string_view type_name, const ResolveContext &ctx,
                                        const SymbolIndex &index) {
    std::string t = base_type_name(type_name);
    if (t.empty())
        return std::nullopt;
    auto exact = [&](const std::string &candidate) -> std::optional<std::string> {
        auto it = index.classes_by_fqname.find(candidate);
        if (it == index.classes_by_fqname.end())
            return std::nullopt;
        return it->second;
    };
    if (ctx.owner) {
        const auto &owner = ctx.owner->model;
        // nested types of the owner and of its enclosing types
        std::string scope = owner.fq_name();
        while (!scope.empty()) {
            if (auto hit = exact(scope + "." + t))
                return hit;
            auto dot = scope.rfind('.');
            scope = dot == std::string::npos ? "" : scope.substr(0, dot);
        }
        if (auto hit = exact(t))
            return hit;
        for (const auto &u : ctx.usings)
            if (auto hit = exact(u + "." + t))
                return hit;
        return std::nullopt;
    }
    if (auto hit = exact(t))
        return hit;
    for (const auto &u : ctx.usings)
        if (auto hit = exact(u + "." + t))
            return hit;
    auto it = index.classes_by_name.find(t);
    if (it != index.classes_by_name.end() && it->second.size() == 1)
        return it->second.front();
    return std::nullopt;
}

ReceiverBinding bind_receiver(const CallSite &site, const std::vector<LocalDecl> &locals,
                              const std::vector<Parameter> &parameters, const ResolveContext &ctx,
                              const SymbolIndex &index, const std::vector<ProjectConfig> &configs) {
    ReceiverBinding b;
    b.receiver_token = site.receiver_token;
    const auto &tok = site.receiver_token;

    auto typed = [&](BindingSource source, const std::string &type) {
        b.binding_source = source;
        auto base = base_type_name(type);
        if (type == "var" || base.empty()) {
            b.binding_source = BindingSource::Unresolved;
            return b;
        }
        if (is_builtin_type(base) || default_builtin_types().count(base)) {
            b.builtin = true;
            b.resolved_type = base;
            return b;
        }
        if (auto id = resolve_type(type, ctx, index)) {
            b.resolved_type = *id;
            return b;
        }
        if (imports_third_party(ctx, configs) || qualified_third_party(base, ctx, configs)) {
            b.external = true;
            b.resolved_type = last_segment(base);
        } else {
            b.binding_source = BindingSource::Unresolved;
        }
        return b;
    };

    if (tok == "this" || tok == "base") {
        b.binding_source = BindingSource::This;
        if (!ctx.owner)
            return b;
        if (tok == "this") {
            b.resolved_type = ctx.owner->model.fq_name();
            return b;
        }
        for (const auto &parent : parent_ids(*ctx.owner, index)) {
            const auto *info = index.find(parent);
            if (info && info->model.kind != TypeKind::Interface) {
                b.resolved_type = parent;
                return b;
            }
        }
        return b;
    }
    if (is_keyword(tok)) {
        // builtin type keyword used as a receiver, e.g. string.Join
        b.binding_source = BindingSource::ExternalType;
        b.builtin = true;
        b.resolved_type = tok;
        return b;
    }

    const LocalDecl *local = nullptr;
    for (const auto &l : locals)
        if (l.name == tok && l.offset < site.char_offset)
            local = &l;
    if (local)
        return typed(BindingSource::LocalVar, local->type);
    for (const auto &p : parameters)
        if (p.name == tok)
            return typed(BindingSource::Parameter, p.type);
    if (ctx.owner) {
        std::vector<const ClassInfo *> chain{ctx.owner};
        std::set<std::string> seen{ctx.owner->model.fq_name()};
        for (std::size_t i = 0; i < chain.size(); ++i) {
            for (const auto &f : chain[i]->model.fields)
                if (f.name == tok)
                    return typed(BindingSource::Field, f.declared_type);
            for (const auto &parent : parent_ids(*chain[i], index))
                if (seen.insert(parent).second)
                    if (const auto *info = index.find(parent))
                        chain.push_back(info);
        }
    }
    if (index.static_class_names.count(tok)) {
        if (auto id = resolve_type(tok, ctx, index)) {
            b.binding_source = BindingSource::StaticClass;
            b.resolved_type = *id;
            return b;
        }
    }
    if (!tok.empty() && std::isupper(static_cast<unsigned char>(tok[0])) && imports_third_party(ctx, configs) &&
        !resolve_type(tok, ctx, index)) {
        b.binding_source = BindingSource::ExternalType;
        b.external = true;
        b.resolved_type = tok;
        return b;
    }
    b.binding_source = BindingSource::Unresolved;
    return b;
}

std::vector<ResolvedEdge> resolve_call(const CallSite &site, const ReceiverBinding &binding,
                                       const ResolveContext &ctx, const SymbolIndex &index,
                                       const std::vector<ProjectConfig> &configs, Diagnostics *diagnostics) {
    (void)configs;
    if (binding.builtin)
        return {};
    ResolvedEdge base;
    base.from = site.enclosing_method;
    base.from_layer = ctx.owner ? ctx.owner->layer : LayerKind::Unknown;
    base.offset = site.char_offset;
    auto unresolved = [&](const std::string &target, std::string_view code, std::string message) {
        ResolvedEdge e = base;
        e.to = std::string(kUnresolvedPrefix) + target + "." + site.member_token;
        e.kind = EdgeKind::Unresolved;
        report(diagnostics, ctx, site.char_offset, code, std::move(message), site.member_token, site.enclosing_method);
        return std::vector<ResolvedEdge>{e};
    };

    if (binding.external) {
        ResolvedEdge e = base;
        e.to = std::string(kExternalPrefix) + binding.resolved_type + "." + site.member_token;
        e.kind = EdgeKind::ThirdParty;
        e.to_layer = LayerKind::ThirdParty;
        return {e};
    }
    if (binding.resolved_type.empty())
        return unresolved(site.receiver_token, diag::kUnresolvedReceiver,
                          "cannot determine the type of receiver '" + site.receiver_token + "'");

    std::set<std::string> visited;
    auto found = find_member(binding.resolved_type, site.member_token, site.is_invocation, index, visited);
    if (found.field_read)
        return {};

    std::vector<std::pair<const ClassInfo *, std::string>> targets;
    for (const auto &id : found.ids)
        targets.emplace_back(found.owner, id);

    const auto *bound = index.find(binding.resolved_type);
    if (bound && bound->model.kind == TypeKind::Interface) {
        if (!targets.empty()) {
            report(diagnostics, ctx, site.char_offset, diag::kInterfaceDispatch,
                   "call through interface " + binding.resolved_type + " bound to the interface member",
                   site.member_token, site.enclosing_method);
        } else {
            for (const auto &[id, info] : index.members_by_class) {
                auto parents = parent_ids(info, index);
                if (std::find(parents.begin(), parents.end(), binding.resolved_type) == parents.end())
                    continue;
                std::set<std::string> seen;
                auto impl = find_member(id, site.member_token, site.is_invocation, index, seen);
                for (const auto &mid : impl.ids)
                    targets.emplace_back(impl.owner, mid);
            }
        }
    }
    if (targets.empty())
        return unresolved(binding.resolved_type, diag::kMemberNotFound,
                          "no member '" + site.member_token + "' in " + binding.resolved_type);

    std::vector<ResolvedEdge> edges;
    for (const auto &[target, id] : targets) {
        ResolvedEdge e = base;
        e.to = id;
        e.to_layer = target->layer;
        e.crosses_project = ctx.owner && ctx.owner->project_id != target->project_id;
        if (target->is_proxy) {
            e.kind = EdgeKind::WebServiceProxy;
            e.to_layer = LayerKind::WebService;
        } else if (target->is_third_party) {
            e.kind = EdgeKind::ThirdParty;
        } else if (binding.binding_source == BindingSource::StaticClass) {
            e.kind = EdgeKind::Static;
        } else {
            e.kind = layer_kind(e.from_layer, e.to_layer);
            if (e.kind == EdgeKind::InvertedLayer)
                report(diagnostics, ctx, site.char_offset, diag::kInvertedLayer,
                       std::string("call from ") + std::string(to_string(e.from_layer)) + " up to " +
                           std::string(to_string(e.to_layer)),
                       site.member_token, site.enclosing_method);
        }
        edges.push_back(std::move(e));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

Resolution resolve_all(const std::vector<FileModel> &files, const SymbolIndex &index,
                       const std::vector<ProjectConfig> &configs) {
    Resolution out;
    for (const auto &file : files) {
        ResolveContext ctx;
        ctx.file = file.path;
        for (const auto &u : file.usings)
            ctx.usings.push_back(u.raw);
        for (const auto &cls : file.classes) {
            const auto *info = index.find(cls.fq_name());
            if (!info || std::find(info->files.begin(), info->files.end(), file.path) == info->files.end())
                continue;
            if (info->is_proxy || info->is_third_party)
                continue;
            ctx.owner = info;
            auto body = [&](const std::string &from, const std::vector<CallSite> &sites,
                            const std::vector<LocalDecl> &locals, const std::vector<Parameter> &params,
                            const std::vector<std::size_t> &lambdas) {
                for (const auto &site : sites) {
                    auto binding = bind_receiver(site, locals, params, ctx, index, configs);
                    auto edges = resolve_call(site, binding, ctx, index, configs, &out.diagnostics);
                    out.edges.insert(out.edges.end(), edges.begin(), edges.end());
                }
                for (std::size_t k = 0; k < lambdas.size(); ++k) {
                    ResolvedEdge e;
                    e.from = from;
                    e.to = lambda_id(from, k + 1);
                    e.kind = EdgeKind::AnonymousLeaf;
                    e.from_layer = info->layer;
                    e.to_layer = info->layer;
                    e.offset = lambdas[k];
                    out.edges.push_back(std::move(e));
                }
            };
            for (const auto &m : cls.methods)
                body(method_id(cls, m), m.call_sites, m.locals, m.parameters, m.anonymous_offsets);
            for (const auto &p : cls.properties)
                body(property_id(cls, p), p.call_sites, p.locals, {}, p.anonymous_offsets);
        }
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const ResolvedEdge &a, const ResolvedEdge &b) {
        return std::tie(a.from, a.offset, a.to, a.kind) < std::tie(b.from, b.offset, b.to, b.kind);
    });
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
    return out;
}

std::string lambda_id(std::string_view method_id, std::size_t ordinal) {
    return std::string(kLambdaPrefix) + std::string(method_id) + "#" + std::to_string(ordinal);
}

std::string node_display_name(std::string_view id) {
    if (id.substr(0, kExternalPrefix.size()) == kExternalPrefix)
        return std::string(id.substr(kExternalPrefix.size()));
    if (id.substr(0, kUnresolvedPrefix.size()) == kUnresolvedPrefix)
        return std::string(id.substr(kUnresolvedPrefix.size()));
    if (id.substr(0, kLambdaPrefix.size()) == kLambdaPrefix) {
        auto rest = id.substr(kLambdaPrefix.size());
        auto hash = rest.rfind('#');
        return node_display_name(rest.substr(0, hash)) + ".<lambda" + std::string(rest.substr(hash + 1)) + ">";
    }
    auto paren = id.find('(');
    return std::string(paren == std::string_view::npos ? id : id.substr(0, paren));
}

} // namespace tiergraph
