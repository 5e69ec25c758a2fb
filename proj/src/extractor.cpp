#include "tiergraph/extractor.hpp"

#include "tiergraph/source.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <unordered_set>

namespace tiergraph {

namespace {

using Tokens = std::span<const Token>;

bool is_open(const Token &t) { return t.is("(") || t.is("[") || t.is("{"); }
bool is_close(const Token &t) { return t.is(")") || t.is("]") || t.is("}"); }

/// Index of the bracket closing the one at `open`, or `end` when unbalanced.
std::size_t match_close(Tokens t, std::size_t open, std::size_t end) {
    int depth = 0;
    for (std::size_t i = open; i < end; ++i) {
        if (is_open(t[i]))
            ++depth;
        else if (is_close(t[i]) && --depth == 0)
            return i;
    }
    return end;
}

/// Skips a `<...>` run starting at `open`; returns the index after the closing
/// '>' or `open` when the run does not look like type arguments.
std::size_t skip_type_args(Tokens t, std::size_t open, std::size_t end) {
    int depth = 0;
    for (std::size_t i = open; i < end; ++i) {
        const auto &tok = t[i];
        if (tok.is("<")) {
            ++depth;
        } else if (tok.is(">")) {
            if (--depth == 0)
                return i + 1;
        } else if (!(tok.is_ident() || tok.is(",") || tok.is(".") || tok.is("[") || tok.is("]") || tok.is("?") ||
                     tok.is("::"))) {
            return open;
        }
    }
    return open;
}

std::string join(Tokens t, std::size_t begin, std::size_t end, std::string_view sep = {}) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin)
            out += sep;
        out += t[i].text;
    }
    return out;
}

bool is_modifier(std::string_view w) {
    static const std::unordered_set<std::string_view> kMods = {
        "public", "private", "protected", "internal", "static", "virtual", "override", "abstract",
        "sealed", "async",   "readonly",  "new",      "partial", "extern", "unsafe",  "const",
        "volatile", "required", "file"};
    return kMods.count(w) > 0;
}

bool is_type_keyword(std::string_view w) {
    return w == "class" || w == "interface" || w == "struct" || w == "record" || w == "enum";
}

bool is_linq_word(std::string_view w) {
    static const std::unordered_set<std::string_view> kWords = {
        "from", "select", "let", "join", "orderby", "group", "into", "on", "equals", "by", "ascending", "descending"};
    return kWords.count(w) > 0;
}

/// Receivers may be ordinary identifiers, `this`/`base`, or builtin type keywords (string.Format).
bool receiver_candidate(const Token &t) {
    if (!t.is_ident())
        return false;
    if (t.is("this") || t.is("base"))
        return true;
    return !is_keyword(t.text) || is_builtin_type(t.text);
}

std::string strip_generic_suffixes(std::string_view type) {
    std::string out;
    int depth = 0;
    for (char c : type) {
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            depth = std::max(0, depth - 1);
        } else if (depth == 0 && c != '?' && c != '[' && c != ']' && c != ' ') {
            out.push_back(c);
        }
    }
    return out;
}

void report(Diagnostics *diagnostics, std::string_view code, std::size_t offset, std::string message,
            std::string_view symbol = {}, std::string_view scope = {}) {
    if (diagnostics)
        diagnostics->push_back(
            {{}, offset, std::string(code), std::move(message), std::string(symbol), std::string(scope)});
}

/// Token ranges whose contents belong to a lambda body.
std::vector<bool> lambda_mask(Tokens t, std::size_t begin, std::size_t end) {
    std::vector<bool> mask(end - begin, false);
    for (std::size_t k = begin; k < end; ++k) {
        if (!t[k].is("=>"))
            continue;
        std::size_t start = k + 1;
        std::size_t stop = start;
        if (start < end && t[start].is("{")) {
            stop = std::min(match_close(t, start, end) + 1, end);
        } else {
            int depth = 0;
            for (stop = start; stop < end; ++stop) {
                if (is_open(t[stop])) {
                    ++depth;
                } else if (is_close(t[stop])) {
                    if (--depth < 0)
                        break;
                } else if (depth == 0 && (t[stop].is(",") || t[stop].is(";"))) {
                    break;
                }
            }
        }
        for (std::size_t i = start; i < stop; ++i)
            mask[i - begin] = true;
    }
    return mask;
}

std::vector<CallSite> scan_call_sites(Tokens t, std::size_t begin, std::size_t end, std::string_view method_id,
                                      Diagnostics *diagnostics) {
    std::vector<CallSite> sites;
    auto in_lambda = lambda_mask(t, begin, end);
    auto masked = [&](std::size_t i) { return in_lambda[i - begin]; };

    for (std::size_t i = begin; i < end; ++i) {
        const auto &tok = t[i];
        if (tok.is(".") && i > begin && i + 1 < end && t[i + 1].is_ident()) {
            const auto &left = t[i - 1];
            const auto &member = t[i + 1];
            bool chained = is_close(left) || (left.is_ident() && i >= begin + 2 && (t[i - 2].is(".") || t[i - 2].is("::")));
            if (chained) {
                if (masked(i))
                    report(diagnostics, diag::kLambdaBodySkipped, member.offset, "call inside lambda body not traced",
                           member.text, method_id);
                else if (left.is_ident() || left.is(")") || left.is("]"))
                    report(diagnostics, diag::kChainLinkSkipped, member.offset, "chained member access not traced",
                           member.text, method_id);
                continue;
            }
            if (!receiver_candidate(left))
                continue;
            if (masked(i)) {
                report(diagnostics, diag::kLambdaBodySkipped, member.offset, "call inside lambda body not traced",
                       member.text, method_id);
                continue;
            }
            std::size_t after = i + 2;
            if (after < end && t[after].is("<"))
                after = skip_type_args(t, after, end) == after ? after : skip_type_args(t, after, end);
            bool invocation = after < end && t[after].is("(");
            sites.push_back({std::string(left.text), std::string(member.text), invocation, std::string(method_id),
                             left.offset});
            continue;
        }
        if (tok.is_ident() && !is_keyword(tok.text) && i + 1 < end && t[i + 1].is("(")) {
            if (i > begin) {
                const auto &prev = t[i - 1];
                if (prev.is(".") || prev.is("new") || prev.is("::") || prev.is(">") || prev.is("]") ||
                    (prev.is_ident() && !is_keyword(prev.text)) || is_builtin_type(prev.text))
                    continue;
            }
            if (!masked(i))
                report(diagnostics, diag::kBareCall, tok.offset, "call without receiver not traced", tok.text,
                       method_id);
        }
    }
    return sites;
}

std::vector<std::size_t> scan_anonymous(Tokens t, std::size_t begin, std::size_t end) {
    std::vector<std::size_t> offsets;
    for (std::size_t i = begin; i < end; ++i)
        if (t[i].is("=>"))
            offsets.push_back(t[i].offset);
    return offsets;
}

/// Walks backwards over a type ending at `last` (inclusive); returns its first index.
std::optional<std::size_t> type_start_before(Tokens t, std::size_t floor, std::size_t last) {
    std::size_t j = last;
    while (true) {
        if (t[j].is("?")) {
            if (j == floor)
                return std::nullopt;
            --j;
            continue;
        }
        if (t[j].is("]")) {
            while (j > floor && !t[j].is("["))
                --j;
            if (j == floor)
                return std::nullopt;
            --j;
            continue;
        }
        break;
    }
    if (t[j].is(">")) {
        int depth = 0;
        while (true) {
            if (t[j].is(">"))
                ++depth;
            else if (t[j].is("<") && --depth == 0)
                break;
            if (j == floor)
                return std::nullopt;
            --j;
        }
        if (j == floor)
            return std::nullopt;
        --j;
    }
    if (!t[j].is_ident())
        return std::nullopt;
    while (j >= floor + 2 && (t[j - 1].is(".") || t[j - 1].is("::")) && t[j - 2].is_ident())
        j -= 2;
    return j;
}

std::vector<LocalDecl> scan_locals(Tokens t, std::size_t begin, std::size_t end) {
    std::vector<LocalDecl> locals;
    for (std::size_t i = begin + 1; i + 1 < end; ++i) {
        const auto &name = t[i];
        if (!name.is_ident() || is_keyword(name.text))
            continue;
        const auto &next = t[i + 1];
        if (!(next.is("=") || next.is(";") || next.is(",") || next.is("in") || next.is(")")))
            continue;
        const auto &prev = t[i - 1];
        bool type_end = prev.is(">") || prev.is("]") || prev.is("?") ||
                        (prev.is_ident() && (!is_keyword(prev.text) || is_builtin_type(prev.text)) &&
                         !is_linq_word(prev.text));
        if (!type_end)
            continue;
        auto start = type_start_before(t, begin, i - 1);
        if (!start)
            continue;
        // `a.b c` cannot be a declaration unless the dotted run is a qualified type name
        if (*start > begin && t[*start - 1].is("."))
            continue;
        std::string type = join(t, *start, i);
        if (type == "var" && next.is("=") && i + 3 < end && t[i + 2].is("new")) {
            std::size_t k = i + 3;
            while (k < end && !(t[k].is("(") || t[k].is("{") || t[k].is("[") || t[k].is(";")))
                ++k;
            if (k > i + 3)
                type = join(t, i + 3, k);
        }
        locals.push_back({std::string(name.text), std::move(type), name.offset});
    }
    return locals;
}

std::vector<Parameter> parse_parameters(Tokens t, std::size_t begin, std::size_t end) {
    std::vector<Parameter> params;
    std::size_t part = begin;
    int depth = 0;
    auto flush = [&](std::size_t stop) {
        std::size_t b = part;
        while (b < stop && t[b].is("[")) {
            auto close = match_close(t, b, stop);
            b = close + 1;
        }
        if (b >= stop)
            return;
        Parameter p;
        if (t[b].is("ref") || t[b].is("out") || t[b].is("in") || t[b].is("params") || t[b].is("this")) {
            p.modifier = std::string(t[b].text);
            ++b;
        }
        std::size_t eq = stop;
        for (std::size_t k = b; k < stop; ++k)
            if (t[k].is("=")) {
                eq = k;
                break;
            }
        if (eq < stop)
            p.default_value = join(t, eq + 1, stop, " ");
        if (eq == b)
            return;
        p.name = std::string(t[eq - 1].text);
        p.type = join(t, b, eq - 1);
        params.push_back(std::move(p));
    };
    for (std::size_t i = begin; i < end; ++i) {
        if (t[i].is("(") || t[i].is("[") || t[i].is("<") || t[i].is("{"))
            ++depth;
        else if (t[i].is(")") || t[i].is("]") || t[i].is(">") || t[i].is("}"))
            --depth;
        else if (depth == 0 && t[i].is(",")) {
            flush(i);
            part = i + 1;
        }
    }
    flush(end);
    return params;
}

struct ScopeContext {
    std::string_view text;
    Diagnostics *diagnostics;
    const ExtractOptions *options;
    bool with_members;
    /// File offset of text[0].
    std::size_t origin = 0;
};

class Walker {
public:
    Walker(Tokens tokens, ScopeContext ctx) : t_(tokens), ctx_(ctx) {}

    std::vector<ClassModel> classes;

    void walk_namespace(std::size_t begin, std::size_t end, std::string ns) {
        std::size_t i = begin;
        while (i < end) {
            const auto &tok = t_[i];
            if (tok.is(";") || tok.is("}")) {
                ++i;
            } else if (tok.is("[")) {
                i = match_close(t_, i, end) + 1;
            } else if (tok.is("using") || tok.is("extern")) {
                while (i < end && !t_[i].is(";"))
                    ++i;
                ++i;
            } else if (tok.is("namespace")) {
                std::size_t k = i + 1;
                while (k < end && (t_[k].is_ident() || t_[k].is(".")))
                    ++k;
                std::string name = join(t_, i + 1, k);
                std::string full = ns.empty() ? name : ns + "." + name;
                if (k < end && t_[k].is("{")) {
                    auto close = match_close(t_, k, end);
                    walk_namespace(k + 1, close, full);
                    i = close + 1;
                } else {
                    // file-scoped namespace applies to the rest of the file
                    ns = full;
                    i = k + 1;
                }
            } else {
                i = declaration(i, end, ns, {});
            }
        }
    }

    /// Parses one declaration starting at `i` inside a namespace or type body.
    /// Returns the index after it.
    std::size_t declaration(std::size_t i, std::size_t end, const std::string &ns, const std::string &outer) {
        std::size_t j = header_end(i, end);
        std::size_t type_kw = end;
        for (std::size_t k = i; k < j; ++k) {
            if (t_[k].is("[")) {
                k = match_close(t_, k, j);
                continue;
            }
            if (is_type_keyword(t_[k].text)) {
                type_kw = k;
                break;
            }
            if (!is_modifier(t_[k].text))
                break;
        }
        if (type_kw != end)
            return type_declaration(i, j, type_kw, end, ns, outer);
        return skip_past(j, end);
    }

    /// Declarations at namespace scope that are not types are skipped whole.
    std::size_t skip_past(std::size_t j, std::size_t end) {
        if (j >= end)
            return end;
        if (t_[j].is("{"))
            return match_close(t_, j, end) + 1;
        if (t_[j].is("=>") || t_[j].is("=")) {
            while (j < end && !t_[j].is(";"))
                ++j;
        }
        return j + 1;
    }

    /// First depth-0 token in [i, end) that is '{', ';', '=>' or '='.
    std::size_t header_end(std::size_t i, std::size_t end) const {
        int depth = 0;
        for (std::size_t k = i; k < end; ++k) {
            const auto &tok = t_[k];
            if (tok.is("(") || tok.is("[")) {
                ++depth;
            } else if (tok.is(")") || tok.is("]")) {
                --depth;
            } else if (depth == 0 && (tok.is("{") || tok.is(";") || tok.is("=>") || tok.is("=") || tok.is("}"))) {
                return k;
            }
        }
        return end;
    }

    std::size_t type_declaration(std::size_t begin, std::size_t hdr_end, std::size_t kw, std::size_t end,
                                 const std::string &ns, const std::string &outer) {
        std::size_t name_idx = kw + 1;
        TypeKind kind = TypeKind::Class;
        if (t_[kw].is("interface"))
            kind = TypeKind::Interface;
        else if (t_[kw].is("struct"))
            kind = TypeKind::Struct;
        if (t_[kw].is("record") && name_idx < hdr_end && (t_[name_idx].is("class") || t_[name_idx].is("struct"))) {
            if (t_[name_idx].is("struct"))
                kind = TypeKind::Struct;
            ++name_idx;
        }
        bool is_enum = t_[kw].is("enum");

        std::size_t after = skip_past(hdr_end, end);
        if (is_enum)
            return after;
        if (name_idx >= hdr_end || !t_[name_idx].is_ident() || is_keyword(t_[name_idx].text)) {
            report(ctx_.diagnostics, diag::kClassWithoutName, t_[kw].offset,
                   "type keyword without a following name");
            return after;
        }

        ClassModel cls;
        cls.kind = kind;
        cls.ns = ns;
        cls.name = outer.empty() ? std::string(t_[name_idx].text) : outer + "." + std::string(t_[name_idx].text);
        cls.offset = t_[name_idx].offset;
        std::vector<std::string> quals;
        for (std::size_t k = begin; k < kw; ++k) {
            if (t_[k].is("[")) {
                k = match_close(t_, k, kw);
                continue;
            }
            quals.emplace_back(t_[k].text);
        }
        for (const auto &q : quals) {
            if (!cls.qualifier.empty())
                cls.qualifier += ' ';
            cls.qualifier += q;
            cls.is_static = cls.is_static || q == "static";
            cls.is_partial = cls.is_partial || q == "partial";
        }

        std::size_t k = name_idx + 1;
        if (k < hdr_end && t_[k].is("<")) {
            std::size_t close = skip_type_args(t_, k, hdr_end);
            if (close > k) {
                std::size_t arity = 1;
                int depth = 0;
                for (std::size_t m = k; m < close; ++m) {
                    if (t_[m].is("<"))
                        ++depth;
                    else if (t_[m].is(">"))
                        --depth;
                    else if (depth == 1 && t_[m].is(","))
                        ++arity;
                }
                cls.type_param_count = arity;
                k = close;
            }
        }
        if (k < hdr_end && t_[k].is("("))
            k = match_close(t_, k, hdr_end) + 1;
        if (k < hdr_end && t_[k].is(":")) {
            std::size_t part = k + 1;
            int depth = 0;
            std::size_t m = part;
            for (; m < hdr_end; ++m) {
                if (t_[m].is("<") || t_[m].is("("))
                    ++depth;
                else if (t_[m].is(">") || t_[m].is(")"))
                    --depth;
                else if (depth == 0 && (t_[m].is(",") || t_[m].is("where"))) {
                    if (m > part)
                        cls.parents.push_back(strip_generic_suffixes(join(t_, part, m)));
                    part = m + 1;
                    if (t_[m].is("where"))
                        break;
                }
            }
            if (m == hdr_end && hdr_end > part)
                cls.parents.push_back(strip_generic_suffixes(join(t_, part, hdr_end)));
        }

        std::size_t index = classes.size();
        classes.push_back(std::move(cls));
        if (hdr_end < end && t_[hdr_end].is("{")) {
            std::size_t close = match_close(t_, hdr_end, end);
            std::size_t body_begin = t_[hdr_end].offset + 1;
            std::size_t body_end = close < end ? t_[close].offset : ctx_.origin + ctx_.text.size();
            classes[index].body_span = {body_begin, body_end};
            class_body(hdr_end + 1, close, index, ns);
        }
        return after;
    }

    void class_body(std::size_t begin, std::size_t end, std::size_t class_index, const std::string &ns) {
        MemberSet members;
        std::string class_name = classes[class_index].name;
        std::string class_id = classes[class_index].fq_name();
        std::string simple_name = class_name.substr(class_name.rfind('.') == std::string::npos ? 0 : class_name.rfind('.') + 1);
        std::size_t i = begin;
        while (i < end) {
            const auto &tok = t_[i];
            if (tok.is(";") || tok.is("}")) {
                ++i;
                continue;
            }
            if (tok.is("[")) {
                i = match_close(t_, i, end) + 1;
                continue;
            }
            std::size_t j = header_end(i, end);
            // nested type?
            bool nested = false;
            for (std::size_t k = i; k < j; ++k) {
                if (is_type_keyword(t_[k].text)) {
                    nested = true;
                    break;
                }
                if (!is_modifier(t_[k].text))
                    break;
            }
            if (nested) {
                i = declaration(i, end, ns, class_name);
                continue;
            }
            auto *saved = ctx_.diagnostics;
            if (!ctx_.with_members)
                ctx_.diagnostics = nullptr;
            i = member(i, j, end, class_id, simple_name, members);
            ctx_.diagnostics = saved;
        }
        if (ctx_.with_members) {
            auto &cls = classes[class_index];
            cls.methods = std::move(members.methods);
            cls.properties = std::move(members.properties);
            cls.fields = std::move(members.fields);
        }
    }

    /// Skips from `j` to the ';' ending an initializer, honoring nesting.
    std::size_t skip_initializer(std::size_t j, std::size_t end, bool stop_at_comma) const {
        int depth = 0;
        for (; j < end; ++j) {
            if (is_open(t_[j]))
                ++depth;
            else if (is_close(t_[j]))
                --depth;
            else if (depth == 0 && (t_[j].is(";") || (stop_at_comma && t_[j].is(","))))
                return j;
        }
        return end;
    }

    void fill_body(std::size_t b, std::size_t e, const std::string &owner_id, std::vector<CallSite> &sites,
                   std::vector<LocalDecl> &locals, std::vector<std::size_t> &anon) {
        auto s = scan_call_sites(t_, b, e, owner_id, ctx_.diagnostics);
        sites.insert(sites.end(), s.begin(), s.end());
        auto l = scan_locals(t_, b, e);
        locals.insert(locals.end(), l.begin(), l.end());
        auto a = scan_anonymous(t_, b, e);
        anon.insert(anon.end(), a.begin(), a.end());
    }

    Span span_between(std::size_t first_tok, std::size_t stop_tok, std::size_t end) const {
        std::size_t limit = ctx_.origin + ctx_.text.size();
        std::size_t b = first_tok < t_.size() ? t_[first_tok].offset : limit;
        std::size_t e = stop_tok < end ? t_[stop_tok].offset : limit;
        return {b, std::max(b, e)};
    }

    std::size_t member(std::size_t i, std::size_t j, std::size_t end, const std::string &class_id,
                       const std::string &class_name, MemberSet &out) {
        std::size_t mods_end = i;
        std::string mods;
        bool is_static = false;
        while (mods_end < j && is_modifier(t_[mods_end].text)) {
            if (!mods.empty())
                mods += ' ';
            mods += t_[mods_end].text;
            is_static = is_static || t_[mods_end].is("static");
            ++mods_end;
        }

        for (std::size_t k = i; k < j; ++k) {
            if (t_[k].is("delegate") || t_[k].is("operator") || t_[k].is("event") || t_[k].is("~"))
                return skip_past(j, end);
        }

        std::size_t paren = j;
        for (std::size_t k = mods_end; k < j; ++k)
            if (t_[k].is("(")) {
                paren = k;
                break;
            }

        if (paren < j)
            return method(i, mods_end, paren, j, end, mods, is_static, class_id, class_name, out);

        if (j >= end) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "unterminated member declaration");
            return end;
        }

        bool indexer = false;
        for (std::size_t k = mods_end; k < j; ++k)
            if (t_[k].is("this") && k + 1 < j && t_[k + 1].is("["))
                indexer = true;
        if (indexer) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "indexer not modelled", "this",
                   class_id);
            std::size_t next = skip_past(j, end);
            if (next < end && t_[next].is("="))
                next = skip_initializer(next, end, false) + 1;
            return next;
        }

        const auto &term = t_[j];
        if (term.is("{") || term.is("=>"))
            return property(i, mods_end, j, end, mods, is_static, class_id, out);
        if (term.is(";") || term.is("="))
            return fields(i, mods_end, j, end, is_static, out);

        report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "cannot classify member");
        return j + 1;
    }

    std::size_t method(std::size_t i, std::size_t mods_end, std::size_t paren, std::size_t j, std::size_t end,
                       const std::string &mods, bool is_static, const std::string &class_id,
                       const std::string &class_name, MemberSet &out) {
        std::size_t name_idx = paren - 1;
        std::size_t arity = 0;
        if (name_idx > mods_end && t_[name_idx].is(">")) {
            int depth = 0;
            std::size_t k = name_idx;
            while (k > mods_end) {
                if (t_[k].is(">"))
                    ++depth;
                else if (t_[k].is("<") && --depth == 0)
                    break;
                else if (depth == 1 && t_[k].is(","))
                    ++arity;
                --k;
            }
            ++arity;
            name_idx = k - 1;
        }
        if (paren == mods_end || name_idx < mods_end || !t_[name_idx].is_ident() || t_[j].is("=")) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "cannot classify member");
            std::size_t next = skip_past(j, end);
            return next;
        }

        MethodModel m;
        m.accessibility = mods;
        m.is_static = is_static;
        m.name = std::string(t_[name_idx].text);
        m.type_param_count = arity;
        m.offset = t_[name_idx].offset;
        std::size_t type_end = name_idx;
        // explicit interface implementation: `void IFoo.Bar()`
        while (type_end >= mods_end + 2 && t_[type_end - 1].is(".") && t_[type_end - 2].is_ident())
            type_end -= 2;
        m.return_type = join(t_, mods_end, type_end);
        if (m.return_type.empty() && m.name != class_name) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "method without return type", m.name,
                   class_id);
            return skip_past(j, end);
        }

        std::size_t close = match_close(t_, paren, j);
        m.parameters = parse_parameters(t_, paren + 1, close);
        if (close < j) {
            std::size_t b = t_[paren].offset + 1;
            std::size_t e = t_[close].offset;
            m.parameter_text = std::string(ctx_.text.substr(b - ctx_.origin, e - b));
        }
        std::string id;
        {
            ClassModel owner;
            auto dot = class_id.rfind('.');
            owner.name = class_id.substr(dot == std::string::npos ? 0 : dot + 1);
            owner.ns = dot == std::string::npos ? "" : class_id.substr(0, dot);
            id = method_id(owner, m);
        }

        std::size_t next;
        const auto &term = t_[j];
        if (term.is("{")) {
            std::size_t body_close = match_close(t_, j, end);
            m.has_body = true;
            m.body_span = span_between(j + 1, body_close, end);
            m.body_span.begin = t_[j].offset + 1;
            fill_body(j + 1, body_close, id, m.call_sites, m.locals, m.anonymous_offsets);
            next = body_close + 1;
        } else if (term.is("=>")) {
            std::size_t semi = skip_initializer(j + 1, end, false);
            m.has_body = true;
            m.body_span = span_between(j + 1, semi, end);
            fill_body(j + 1, semi, id, m.call_sites, m.locals, m.anonymous_offsets);
            next = semi + 1;
        } else {
            next = j + 1;
        }
        m.contains_anonymous = !m.anonymous_offsets.empty();
        out.methods.push_back(std::move(m));
        return next;
    }

    std::size_t property(std::size_t i, std::size_t mods_end, std::size_t j, std::size_t end, const std::string &mods,
                         bool is_static, const std::string &class_id, MemberSet &out) {
        std::size_t name_idx = j - 1;
        if (j == 0 || name_idx < mods_end + 1 || !t_[name_idx].is_ident()) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "cannot classify member");
            return skip_past(j, end);
        }
        PropertyModel p;
        p.access = mods;
        p.is_static = is_static;
        p.name = std::string(t_[name_idx].text);
        p.offset = t_[name_idx].offset;
        std::size_t type_end = name_idx;
        while (type_end >= mods_end + 2 && t_[type_end - 1].is(".") && t_[type_end - 2].is_ident())
            type_end -= 2;
        p.return_type = join(t_, mods_end, type_end);
        std::string id = class_id + "." + p.name;

        std::size_t next;
        if (t_[j].is("=>")) {
            std::size_t semi = skip_initializer(j + 1, end, false);
            p.body_spans.push_back(span_between(j + 1, semi, end));
            fill_body(j + 1, semi, id, p.call_sites, p.locals, p.anonymous_offsets);
            next = semi + 1;
        } else {
            std::size_t close = match_close(t_, j, end);
            bool has_accessor = false;
            std::size_t k = j + 1;
            while (k < close) {
                if (t_[k].is("get") || t_[k].is("set") || t_[k].is("init")) {
                    has_accessor = true;
                    std::size_t a = k + 1;
                    if (a < close && t_[a].is("{")) {
                        std::size_t ac = match_close(t_, a, close);
                        Span s{t_[a].offset + 1, ac < close ? t_[ac].offset : t_[close].offset};
                        if (ac > a + 1)
                            p.body_spans.push_back(s);
                        fill_body(a + 1, ac, id, p.call_sites, p.locals, p.anonymous_offsets);
                        k = ac + 1;
                        continue;
                    }
                    if (a < close && t_[a].is("=>")) {
                        std::size_t semi = skip_initializer(a + 1, close, false);
                        p.body_spans.push_back(span_between(a + 1, semi, close));
                        fill_body(a + 1, semi, id, p.call_sites, p.locals, p.anonymous_offsets);
                        k = semi + 1;
                        continue;
                    }
                }
                ++k;
            }
            if (!has_accessor) {
                report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "block member without accessors",
                       p.name, class_id);
                return close + 1;
            }
            next = close + 1;
            if (next < end && t_[next].is("="))
                next = skip_initializer(next, end, false) + 1;
        }
        out.properties.push_back(std::move(p));
        return next;
    }

    std::size_t fields(std::size_t i, std::size_t mods_end, std::size_t j, std::size_t end, bool is_static,
                       MemberSet &out) {
        // first declarator: type + name, further ones after top-level commas
        std::size_t first_comma = j;
        for (std::size_t k = mods_end; k < j; ++k)
            if (t_[k].is(",") && skip_type_args_depth(mods_end, k) == 0) {
                first_comma = k;
                break;
            }
        std::size_t name_idx = first_comma - 1;
        if (first_comma == 0 || name_idx <= mods_end || !t_[name_idx].is_ident()) {
            report(ctx_.diagnostics, diag::kAmbiguousMember, t_[i].offset, "cannot classify member");
            std::size_t stop = skip_initializer(j, end, false);
            return stop + 1;
        }
        std::string type = join(t_, mods_end, name_idx);
        auto add = [&](const Token &name) {
            FieldModel f;
            f.declared_type = type;
            f.name = std::string(name.text);
            f.is_static = is_static;
            f.offset = name.offset;
            f.is_custom = !ctx_.options->builtin_types.count(base_type_name(type));
            out.fields.push_back(std::move(f));
        };
        add(t_[name_idx]);
        for (std::size_t k = first_comma; k < j; ++k)
            if (t_[k].is(",") && k + 1 < j && t_[k + 1].is_ident())
                add(t_[k + 1]);

        std::size_t k = j;
        while (k < end && t_[k].is("=")) {
            k = skip_initializer(k + 1, end, true);
            if (k < end && t_[k].is(",")) {
                if (k + 1 < end && t_[k + 1].is_ident())
                    add(t_[k + 1]);
                k += 2;
                while (k < end && !t_[k].is("=") && !t_[k].is(";") && !t_[k].is(","))
                    ++k;
                if (k < end && t_[k].is(","))
                    continue;
            }
        }
        while (k < end && !t_[k].is(";"))
            ++k;
        return k + 1;
    }

    int skip_type_args_depth(std::size_t begin, std::size_t at) const {
        int depth = 0;
        for (std::size_t k = begin; k < at; ++k) {
            if (t_[k].is("<"))
                ++depth;
            else if (t_[k].is(">"))
                --depth;
        }
        return depth;
    }

private:
    Tokens t_;
    ScopeContext ctx_;
};

bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

const std::set<std::string> &default_builtin_types() {
    static const std::set<std::string> kTypes = {"bool",   "byte",  "sbyte", "char",   "decimal", "double",
                                                 "float",  "int",   "uint",  "long",   "ulong",   "short",
                                                 "ushort", "object", "string", "void", "var"};
    return kTypes;
}

std::string base_type_name(std::string_view type) {
    auto t = trim(type);
    if (t.substr(0, 8) == "global::")
        t.remove_prefix(8);
    return strip_generic_suffixes(t);
}

std::string normalize_whitespace(std::string_view text) {
    static constexpr std::string_view kPunct = ",()<>[].?:=";
    std::string collapsed;
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = true;
            continue;
        }
        if (pending_space && !collapsed.empty() && kPunct.find(c) == std::string_view::npos &&
            kPunct.find(collapsed.back()) == std::string_view::npos)
            collapsed.push_back(' ');
        pending_space = false;
        collapsed.push_back(c);
    }
    return collapsed;
}

std::string render_parameters(const std::vector<Parameter> &parameters) {
    std::string out;
    for (const auto &p : parameters) {
        if (!out.empty())
            out += ", ";
        if (!p.modifier.empty())
            out += p.modifier + " ";
        out += p.type + " " + p.name;
        if (!p.default_value.empty())
            out += " = " + p.default_value;
    }
    return out;
}

std::vector<UsingDirective> extract_usings(std::string_view stripped, Diagnostics *diagnostics,
                                           std::string_view file) {
    std::vector<UsingDirective> out;
    std::size_t line_start = 0;
    while (line_start <= stripped.size()) {
        auto line_end = stripped.find('\n', line_start);
        if (line_end == std::string_view::npos)
            line_end = stripped.size();
        auto line = stripped.substr(line_start, line_end - line_start);
        auto lead = line.find_first_not_of(" \t\r");
        if (lead != std::string_view::npos && line.substr(lead, 5) == "using" && line.size() > lead + 5 &&
            std::isspace(static_cast<unsigned char>(line[lead + 5]))) {
            auto rest = line.substr(lead + 5);
            auto semi = rest.find(';');
            auto body = trim(semi == std::string_view::npos ? rest : rest.substr(0, semi));
            bool directive = !body.empty() && body.find('=') == std::string_view::npos &&
                             body.substr(0, 6) != "static" && body.front() != '(' && body.substr(0, 4) != "var ";
            if (directive && semi == std::string_view::npos) {
                if (diagnostics)
                    diagnostics->push_back({std::string(file), line_start + lead,
                                            std::string(diag::kUsingWithoutSemicolon),
                                            "using directive without ';' on its line", std::string(body), {}});
            } else if (directive) {
                UsingDirective u;
                std::string raw;
                bool ok = true;
                std::size_t p = 0;
                while (p <= body.size()) {
                    auto dot = body.find('.', p);
                    auto seg = trim(body.substr(p, dot == std::string_view::npos ? std::string_view::npos : dot - p));
                    if (!valid_identifier(seg)) {
                        ok = false;
                        break;
                    }
                    u.segments.emplace_back(seg);
                    if (dot == std::string_view::npos)
                        break;
                    p = dot + 1;
                }
                if (ok) {
                    for (std::size_t s = 0; s < u.segments.size(); ++s)
                        raw += (s ? "." : "") + u.segments[s];
                    u.raw = raw;
                    u.offset = line_start + lead;
                    out.push_back(std::move(u));
                }
            }
        }
        if (line_end == stripped.size())
            break;
        line_start = line_end + 1;
    }
    return out;
}

std::vector<ClassModel> extract_classes(std::string_view stripped, std::string_view namespace_ctx,
                                        Diagnostics *diagnostics) {
    auto tokens = tokenize(stripped);
    ExtractOptions options;
    Walker walker(tokens, {stripped, diagnostics, &options, false});
    walker.walk_namespace(0, tokens.size(), std::string(namespace_ctx));
    return std::move(walker.classes);
}

MemberSet extract_members(std::string_view class_body, std::string_view class_name, std::size_t base_offset,
                          Diagnostics *diagnostics, const ExtractOptions &options) {
    auto tokens = tokenize(class_body, base_offset);
    Walker walker(tokens, {class_body, diagnostics, &options, true, base_offset});
    ClassModel owner;
    owner.name = class_name.empty() ? "Anonymous" : std::string(class_name);
    walker.classes.push_back(std::move(owner));
    walker.class_body(0, tokens.size(), 0, {});
    MemberSet out;
    out.methods = std::move(walker.classes.front().methods);
    out.properties = std::move(walker.classes.front().properties);
    out.fields = std::move(walker.classes.front().fields);
    return out;
}

std::vector<CallSite> extract_call_sites(std::string_view body, std::string_view method_id, std::size_t base_offset,
                                         Diagnostics *diagnostics) {
    auto tokens = tokenize(body, base_offset);
    return scan_call_sites(tokens, 0, tokens.size(), method_id, diagnostics);
}

std::vector<std::size_t> detect_anonymous(std::string_view body, std::size_t base_offset) {
    auto tokens = tokenize(body, base_offset);
    return scan_anonymous(tokens, 0, tokens.size());
}

std::vector<LocalDecl> extract_locals(std::string_view body, std::size_t base_offset) {
    auto tokens = tokenize(body, base_offset);
    return scan_locals(tokens, 0, tokens.size());
}

FileModel extract_file(std::string_view source, std::string_view path, std::string_view project_id,
                       const ExtractOptions &options) {
    FileModel model;
    model.path = std::string(path);
    model.project_id = std::string(project_id);
    model.generated_marker = source.find("<auto-generated") != std::string_view::npos;

    std::string stripped = strip_noise(source, &model.diagnostics, path);
    model.usings = extract_usings(stripped, &model.diagnostics, path);

    auto tokens = tokenize(stripped);
    Walker walker(tokens, {stripped, &model.diagnostics, &options, true});
    walker.walk_namespace(0, tokens.size(), {});
    model.classes = std::move(walker.classes);
    for (auto &cls : model.classes)
        cls.file = model.path;
    for (auto &d : model.diagnostics)
        d.file = model.path;
    return model;
}

std::string method_id(const ClassModel &owner, const MethodModel &method) {
    std::string id = owner.fq_name() + "." + method.name + "(";
    for (std::size_t i = 0; i < method.parameters.size(); ++i) {
        if (i)
            id += ",";
        const auto &p = method.parameters[i];
        if (!p.modifier.empty() && p.modifier != "this")
            id += p.modifier + " ";
        id += p.type;
    }
    return id + ")";
}

std::string property_id(const ClassModel &owner, const PropertyModel &property) {
    return owner.fq_name() + "." + property.name;
}

} // namespace tiergraph
