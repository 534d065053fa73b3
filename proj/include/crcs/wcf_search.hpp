#pragma once

#include <optional>
#include <vector>

#include "crcs/eef.hpp"
#include "crcs/wcf_index.hpp"

namespace crcs {

// Index-based dynamic-programming search. Same optimum contract as
// eef_query; throws ConfigError when index and network disagree on vertex or
// snapshot counts.
std::optional<Community> wcf_query(const DynamicNetwork& net, const WcfIndex& idx,
                                   const QueryParams& params,
                                   const SearchOptions& opts = {},
                                   SearchStats* stats = nullptr);

// Runs wcf_query for each alpha, reusing the C(1,.) retrievals.
std::vector<std::pair<double, std::optional<Community>>> alpha_sweep(
    const DynamicNetwork& net, const WcfIndex& idx, const QueryParams& params,
    const std::vector<double>& alphas);

}  // namespace crcs
