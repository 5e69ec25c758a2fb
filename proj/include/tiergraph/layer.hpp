#pragma once

#include <optional>
#include <string_view>

namespace tiergraph {

/// Architectural tier a namespace belongs to.
enum class LayerKind { UI, Business, Data, WebService, ThirdParty, Unknown };

/// UI=3, Business=2, Data=1, Unknown=0. WebService and ThirdParty are rank-free
/// and return nullopt; callers treat them separately.
std::optional<int> layer_rank(LayerKind layer);

std::string_view to_string(LayerKind layer);
std::optional<LayerKind> parse_layer(std::string_view text);

} // namespace tiergraph
