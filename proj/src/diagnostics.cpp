#include "tiergraph/diagnostics.hpp"

namespace tiergraph {

std::map<std::string, std::size_t> summarize(const Diagnostics &diagnostics) {
    std::map<std::string, std::size_t> counts;
    for (const auto &d : diagnostics)
        ++counts[d.code];
    return counts;
}

} // namespace tiergraph
