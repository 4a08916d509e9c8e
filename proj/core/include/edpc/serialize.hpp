#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edpc/belief.hpp"
#include "edpc/graph.hpp"
#include "edpc/propagation.hpp"

namespace edpc {

/// JSON array of {"focal": sorted community-id list or "outlier", "mass": x}.
std::string mass_to_json(const MassFunction& m);
MassFunction mass_from_json(std::string_view json_text, int frame_size);

/// Partition document:
/// {"centers": [external ids], "communities": c,
///  "nodes": [{"id":..., "bba": [...], "hard_all_focal": ids|"outlier",
///             "hard_singleton": id|"outlier"}]}
std::string partition_to_json(const Graph& graph, const CredalPartition& partition);

struct PartitionFile {
    std::vector<long long> centers; ///< external ids
    int communities = 0;
    std::vector<long long> ids;
    std::vector<MassFunction> masses;
    std::vector<int> hard_all_focal; ///< community id, kOutlier or kImprecise
    std::vector<int> hard_singleton; ///< community id or kOutlier
};

PartitionFile partition_from_json(std::string_view json_text);

} // namespace edpc
