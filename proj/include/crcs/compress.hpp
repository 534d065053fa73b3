#pragma once

#include "crcs/wcf_index.hpp"

namespace crcs {

// Vertex slots saved by replacing a node set of `node_size` vertices that
// appears `frequency` times with a virtual reference:
//   frequency * (node_size - 1) - node_size.
long long space_gain(std::size_t node_size, std::size_t frequency);

// Replaces every node whose vertex set repeats often enough for a positive
// space gain (counted across all (k,t) forests) with a reference into the
// auxiliary table.
void compress(WcfIndex& idx);

// Restores inline vertex payloads and drops the auxiliary table; throws
// IoError on a dangling reference.
void expand(WcfIndex& idx);

}  // namespace crcs
