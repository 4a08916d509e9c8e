#pragma once

#include <string>
#include <vector>

#include "edpc/graph.hpp"

namespace edpc {

/// Signal distribution after T propagation steps, one column per source node.
/// Column i equals (A + I)^T e_i. Entries are walk counts, computed in double:
/// exact as long as every count stays below 2^53.
struct InfluenceMatrix {
    int n = 0;
    int t_steps = 0;
    std::vector<double> values; ///< column-major: values[source * n + node]

    double at(int node, int source) const { return values[static_cast<std::size_t>(source) * n + node]; }
};

/// Symmetric nonnegative node dissimilarities with zero diagonal.
struct DissimilarityMatrix {
    int n = 0;
    std::vector<double> values; ///< row-major, full matrix

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

/// Propagates one unit of signal from every source for `t_steps` rounds.
/// Summation order within a column is fixed (self term, then neighbors
/// ascending), so results are bitwise reproducible.
InfluenceMatrix influence_matrix(const Graph& graph, int t_steps);

/// Euclidean distances between influence columns. With `unit_normalize` the
/// columns are scaled to unit L2 norm first (off by default; zero columns
/// cannot occur since the self entry is >= 1).
DissimilarityMatrix dissimilarity_matrix(const InfluenceMatrix& infl, bool unit_normalize = false);

/// Headerless row-major CSV of the full symmetric matrix.
std::string dissimilarity_csv(const DissimilarityMatrix& d);

} // namespace edpc
