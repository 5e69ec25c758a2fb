#include "tiergraph/source.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace tiergraph {

namespace {

class NoiseStripper {
public:
    NoiseStripper(std::string_view source, Diagnostics *diagnostics, std::string_view file)
        : src_(source), out_(source), diagnostics_(diagnostics), file_(file) {}

    std::string run() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            char next = peek(1);
            if (c == '/' && next == '/') {
                line_comment();
            } else if (c == '/' && next == '*') {
                block_comment();
            } else if (c == '"') {
                regular_string(pos_, pos_ + 1);
            } else if ((c == '@' && next == '"') || (c == '$' && next == '"')) {
                if (c == '@')
                    verbatim_string(pos_, pos_ + 2);
                else
                    regular_string(pos_, pos_ + 2);
            } else if ((c == '$' && next == '@' && peek(2) == '"') || (c == '@' && next == '$' && peek(2) == '"')) {
                verbatim_string(pos_, pos_ + 3);
            } else if (c == '\'') {
                char_literal();
            } else {
                ++pos_;
            }
        }
        return std::move(out_);
    }

private:
    char peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void blank(std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end && i < out_.size(); ++i)
            if (out_[i] != '\n' && out_[i] != '\r')
                out_[i] = ' ';
    }

    void report(std::string_view code, std::size_t offset, std::string message) {
        if (diagnostics_)
            diagnostics_->push_back({std::string(file_), offset, std::string(code), std::move(message), {}, {}});
    }

    void line_comment() {
        auto end = src_.find('\n', pos_);
        if (end == std::string_view::npos)
            end = src_.size();
        blank(pos_, end);
        pos_ = end;
    }

    void block_comment() {
        auto end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) {
            report(diag::kUnterminatedComment, pos_, "block comment runs to end of file");
            blank(pos_, src_.size());
            pos_ = src_.size();
            return;
        }
        blank(pos_, end + 2);
        pos_ = end + 2;
    }

    void regular_string(std::size_t start, std::size_t body) {
        std::size_t i = body;
        while (i < src_.size()) {
            char c = src_[i];
            if (c == '\\') {
                i += 2;
                continue;
            }
            if (c == '"') {
                blank(start, i + 1);
                pos_ = i + 1;
                return;
            }
            ++i;
        }
        report(diag::kUnterminatedString, start, "string literal runs to end of file");
        blank(start, src_.size());
        pos_ = src_.size();
    }

    void verbatim_string(std::size_t start, std::size_t body) {
        std::size_t i = body;
        while (i < src_.size()) {
            if (src_[i] == '"') {
                if (i + 1 < src_.size() && src_[i + 1] == '"') {
                    i += 2;
                    continue;
                }
                blank(start, i + 1);
                pos_ = i + 1;
                return;
            }
            ++i;
        }
        report(diag::kUnterminatedString, start, "verbatim string runs to end of file");
        blank(start, src_.size());
        pos_ = src_.size();
    }

    void char_literal() {
        std::size_t start = pos_;
        std::size_t i = pos_ + 1;
        while (i < src_.size() && src_[i] != '\n') {
            if (src_[i] == '\\') {
                i += 2;
                continue;
            }
            if (src_[i] == '\'') {
                blank(start, i + 1);
                pos_ = i + 1;
                return;
            }
            ++i;
        }
        report(diag::kUnterminatedString, start, "character literal runs to end of file");
        blank(start, src_.size());
        pos_ = src_.size();
    }

    std::string_view src_;
    std::string out_;
    std::size_t pos_ = 0;
    Diagnostics *diagnostics_;
    std::string_view file_;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

constexpr std::array<std::string_view, 20> kMultiCharPunct = {
    "=>", "==", "!=", ">=", "<=", "&&", "||", "++", "--", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "??", "::", "->"};

} // namespace

std::string strip_noise(std::string_view source, Diagnostics *diagnostics, std::string_view file) {
    return NoiseStripper(source, diagnostics, file).run();
}

std::vector<Token> tokenize(std::string_view text, std::size_t base_offset) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        auto c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '@' && i + 1 < text.size() && ident_start(static_cast<unsigned char>(text[i + 1]))) {
            // verbatim identifier; the '@' is not part of the name
            std::size_t start = ++i;
            while (i < text.size() && ident_char(static_cast<unsigned char>(text[i])))
                ++i;
            tokens.push_back({TokenKind::Identifier, text.substr(start, i - start), base_offset + start});
            continue;
        }
        if (ident_start(c)) {
            std::size_t start = i;
            while (i < text.size() && ident_char(static_cast<unsigned char>(text[i])))
                ++i;
            tokens.push_back({TokenKind::Identifier, text.substr(start, i - start), base_offset + start});
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t start = i;
            while (i < text.size()) {
                auto d = static_cast<unsigned char>(text[i]);
                if (ident_char(d)) {
                    ++i;
                } else if (d == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                    ++i;
                } else {
                    break;
                }
            }
            tokens.push_back({TokenKind::Number, text.substr(start, i - start), base_offset + start});
            continue;
        }
        std::size_t len = 1;
        if (i + 1 < text.size()) {
            auto two = text.substr(i, 2);
            if (std::find(kMultiCharPunct.begin(), kMultiCharPunct.end(), two) != kMultiCharPunct.end())
                len = 2;
        }
        tokens.push_back({TokenKind::Punct, text.substr(i, len), base_offset + i});
        i += len;
    }
    return tokens;
}

bool is_keyword(std::string_view word) {
    static const std::unordered_set<std::string_view> kKeywords = {
        "abstract", "as",       "base",      "bool",      "break",    "byte",     "case",     "catch",
        "char",     "checked",  "class",     "const",     "continue", "decimal",  "default",  "delegate",
        "do",       "double",   "else",      "enum",      "event",    "explicit", "extern",   "false",
        "finally",  "fixed",    "float",     "for",       "foreach",  "goto",     "if",       "implicit",
        "in",       "int",      "interface", "internal",  "is",       "lock",     "long",     "namespace",
        "new",      "null",     "object",    "operator",  "out",      "override", "params",   "private",
        "protected", "public",  "readonly",  "ref",       "return",   "sbyte",    "sealed",   "short",
        "sizeof",   "stackalloc", "static",  "string",    "struct",   "switch",   "this",     "throw",
        "true",     "try",      "typeof",    "uint",      "ulong",    "unchecked", "unsafe",  "ushort",
        "using",    "virtual",  "void",      "volatile",  "while",    "await",    "async",    "var",
        "yield",    "nameof",   "when",      "where",     "get",      "set",      "init",     "partial",
        "record",   "global"};
    return kKeywords.count(word) > 0;
}

bool is_builtin_type(std::string_view word) {
    static const std::unordered_set<std::string_view> kBuiltins = {
        "bool",  "byte",   "sbyte", "char",  "decimal", "double", "float", "int",  "uint",
        "long",  "ulong",  "short", "ushort", "object", "string", "void",  "var",  "dynamic",
        "nint",  "nuint"};
    return kBuiltins.count(word) > 0;
}

} // namespace tiergraph
