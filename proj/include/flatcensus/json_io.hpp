#pragma once

#include <string>

#include "flatcensus/tiling.hpp"

namespace flatcensus {

// Table JSON: {"n_squares": N, "h_pairs": [[a,b],...], "v_pairs": [[a,b],...],
// "marked": [vertex_id,...]}. "marked" may be omitted (empty marking).
// Throws std::invalid_argument on malformed input.
MarkedTiling tiling_from_json(const std::string& text);
std::string tiling_to_json(const MarkedTiling& mt);

GluingTable table_from_json(const std::string& text);

}  // namespace flatcensus
