#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tiergraph {

/// Machine-readable diagnostic codes. Every accuracy loss the extractor or
/// resolver knows about is reported under one of these.
namespace diag {
inline constexpr std::string_view kUnterminatedComment = "unterminated-comment";
inline constexpr std::string_view kUnterminatedString = "unterminated-string";
inline constexpr std::string_view kUsingWithoutSemicolon = "using-without-semicolon";
inline constexpr std::string_view kClassWithoutName = "class-without-name";
inline constexpr std::string_view kAmbiguousMember = "ambiguous-member";
inline constexpr std::string_view kChainLinkSkipped = "chain-link-skipped";
inline constexpr std::string_view kBareCall = "bare-call";
inline constexpr std::string_view kLambdaBodySkipped = "lambda-body-skipped";
inline constexpr std::string_view kUnresolvedReceiver = "unresolved-receiver";
inline constexpr std::string_view kMemberNotFound = "member-not-found";
inline constexpr std::string_view kInterfaceDispatch = "interface-dispatch";
inline constexpr std::string_view kClassConflict = "class-conflict";
inline constexpr std::string_view kUnreadableFile = "unreadable-file";
inline constexpr std::string_view kInvertedLayer = "inverted-layer";
} // namespace diag

struct Diagnostic {
    std::string file;
    std::size_t offset = 0;
    std::string code;
    std::string message;
    /// Member or type name the event is about; used to attribute missed nodes.
    std::string symbol;
    /// Enclosing method id, empty at file scope.
    std::string scope;

    friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
    friend auto operator<=>(const Diagnostic &, const Diagnostic &) = default;
};

using Diagnostics = std::vector<Diagnostic>;

std::map<std::string, std::size_t> summarize(const Diagnostics &diagnostics);

} // namespace tiergraph
