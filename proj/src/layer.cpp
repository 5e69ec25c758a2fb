#include "tiergraph/layer.hpp"

namespace tiergraph {

std::optional<int> layer_rank(LayerKind layer) {
    switch (layer) {
    case LayerKind::UI: return 3;
    case LayerKind::Business: return 2;
    case LayerKind::Data: return 1;
    case LayerKind::Unknown: return 0;
    case LayerKind::WebService:
    case LayerKind::ThirdParty: return std::nullopt;
    }
    return std::nullopt;
}

std::string_view to_string(LayerKind layer) {
    switch (layer) {
    case LayerKind::UI: return "UI";
    case LayerKind::Business: return "Business";
    case LayerKind::Data: return "Data";
    case LayerKind::WebService: return "WebService";
    case LayerKind::ThirdParty: return "ThirdParty";
    case LayerKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::optional<LayerKind> parse_layer(std::string_view text) {
    for (auto layer : {LayerKind::UI, LayerKind::Business, LayerKind::Data, LayerKind::WebService,
                       LayerKind::ThirdParty, LayerKind::Unknown}) {
        if (to_string(layer) == text)
            return layer;
    }
    return std::nullopt;
}

} // namespace tiergraph
