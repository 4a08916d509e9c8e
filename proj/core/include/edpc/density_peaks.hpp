#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edpc/graph.hpp"
#include "edpc/signal_dissim.hpp"

namespace edpc {

/// Per-node decision-graph statistics. rho_star and delta_star are the
/// max-normalized values; gamma = rho_star * delta_star ranks center
/// candidates.
struct NodeStats {
    std::vector<double> rho;
    std::vector<double> delta;
    std::vector<double> rho_star;
    std::vector<double> delta_star;
    std::vector<double> gamma;

    int size() const noexcept { return static_cast<int>(rho.size()); }
};

/// k_i: degree plus the implicit self-loop, so always >= 1.
int degree_with_self(const Graph& graph, int node);

/// k_i + sum of k_j over true neighbors (self term not double counted).
std::vector<double> local_degree(const Graph& graph);

/// exp(-(1/k_i) * sum of squared neighbor dissimilarities) + local degree.
std::vector<double> local_density(const Graph& graph, const DissimilarityMatrix& d);

/// Distance to the nearest strictly denser node; the single densest node
/// (ties broken toward the lower index) takes its maximum distance instead.
std::vector<double> min_dissimilarity(const std::vector<double>& rho,
                                      const DissimilarityMatrix& d);

/// Elementwise division by the vector maxima. If max(delta) == 0 every
/// delta_star is 0 by convention.
std::pair<std::vector<double>, std::vector<double>> regularize(const std::vector<double>& rho,
                                                               const std::vector<double>& delta);

NodeStats compute_node_stats(const Graph& graph, const DissimilarityMatrix& d);

/// Classic cut-off density: number of other nodes closer than `cutoff`.
/// Baseline only; the detection pipeline does not use it.
std::vector<double> classic_dpc_density(const DissimilarityMatrix& d, double cutoff);

/// Ordered community centers; community t is the t-th center's community.
struct CenterSet {
    std::vector<int> nodes;

    int count() const noexcept { return static_cast<int>(nodes.size()); }
};

/// The `communities` nodes with the largest gamma, ties toward lower index,
/// ordered by descending gamma.
CenterSet select_centers_top_gamma(const NodeStats& stats, int communities);

/// Echoes the given list after validating range and distinctness.
CenterSet select_centers_manual(std::vector<int> nodes, int node_count);

struct DecisionGraphRow {
    int node;
    double rho_star;
    double delta_star;
    double gamma;
};

/// One row per node, sorted by gamma descending (index ascending on ties).
std::vector<DecisionGraphRow> decision_graph(const NodeStats& stats);

/// CSV with header `node,rho_star,delta_star,gamma`; the node column carries
/// external ids.
std::string decision_graph_csv(const NodeStats& stats, const Graph& graph);

} // namespace edpc
