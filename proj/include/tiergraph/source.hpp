#pragma once

#include "tiergraph/diagnostics.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

/// Replaces comments, string literals and character literals with spaces.
/// Newlines inside blanked regions are kept so line structure survives; the
/// output always has the input's length. Unterminated regions run to the end
/// of input and are reported through `diagnostics` when given.
std::string strip_noise(std::string_view source, Diagnostics *diagnostics = nullptr,
                        std::string_view file = {});

enum class TokenKind { Identifier, Number, Punct };

struct Token {
    TokenKind kind;
    std::string_view text;
    std::size_t offset;

    bool is(std::string_view s) const { return text == s; }
    bool is_ident() const { return kind == TokenKind::Identifier; }
};

/// Tokenizes noise-stripped text. Views point into `text`, offsets are
/// relative to it plus `base_offset`.
std::vector<Token> tokenize(std::string_view text, std::size_t base_offset = 0);

bool is_keyword(std::string_view word);
bool is_builtin_type(std::string_view word);

} // namespace tiergraph
