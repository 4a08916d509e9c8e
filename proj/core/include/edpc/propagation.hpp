#pragma once

#include <optional>
#include <vector>

#include "edpc/belief.hpp"
#include "edpc/density_peaks.hpp"
#include "edpc/graph.hpp"
#include "edpc/signal_dissim.hpp"

namespace edpc {

struct PropagationParams {
    int t_steps = 3;
    double beta = 2.0;
    /// Explicit scale for the expansion discount; nullopt resolves via
    /// gamma_scale_auto.
    std::optional<double> gamma_scale;
    ReliabilityRule reliability = ReliabilityRule::max_normalized;
};

/// Credal community membership: one mass function per node plus the center
/// set. `labeled[v]` marks a finalized mass; overlap masses written by the
/// expansion round stay unlabeled until diffusion resolves them, so the
/// labeled <=> non-vacuous equivalence holds for finished partitions only.
struct CredalPartition {
    CenterSet centers;
    int frame_size = 0;
    std::vector<MassFunction> masses;
    std::vector<char> labeled;

    bool is_labeled(int v) const { return labeled[static_cast<std::size_t>(v)] != 0; }
    int labeled_count() const;
    /// Nodes still carrying the vacuous O* mass after detection.
    int outlier_count() const;
};

/// Center t gets the categorical mass on its own community; everyone else the
/// vacuous O* mass.
CredalPartition initialize(const Graph& graph, const CenterSet& centers);

/// 1 / median of d_ij^beta over ordered node-neighbor pairs (even-length
/// median averages the middle pair). Returns +infinity when the median is 0
/// (all-twin neighborhoods); expansion_alpha treats d = 0 as alpha = 1 in
/// that limit.
double gamma_scale_auto(const Graph& graph, const DissimilarityMatrix& d, double beta);

/// exp(-gamma * d^beta) with the d = 0 => 1 limit convention.
double expansion_alpha(double distance, double gamma_scale, double beta);

/// exp(-population variance of the center distances); 1 iff all equal.
double overlap_weight(const std::vector<double>& center_distances);

/// One-round expansion: a non-center node adjacent to centers of exactly one
/// community gets the simple mass {w_t: alpha, O*: 1-alpha} (minimum distance
/// over that community's centers) and becomes labeled. A node adjacent to
/// two or more communities gets the overlap mass {set: w, O*: 1-w} but stays
/// unlabeled: diffusion re-resolves it from neighbor evidence. Nodes adjacent
/// to no center stay vacuous.
CredalPartition expand_one_round(const Graph& graph, const DissimilarityMatrix& d,
                                 const CredalPartition& partition,
                                 const PropagationParams& params);

/// Fraction of true neighbors already labeled; 0 for isolated nodes.
double labeled_rate(const Graph& graph, const CredalPartition& partition, int node);

/// Sequentially assigns every reachable unlabeled node: pick the highest
/// labeled rate (ties: larger rho, then smaller index), combine the labeled
/// neighbors' evidence, mark labeled, repeat. Unreached nodes keep their
/// vacuous mass.
CredalPartition diffuse(const Graph& graph, const DissimilarityMatrix& d,
                        const std::vector<double>& rho, const CredalPartition& partition,
                        const PropagationParams& params);

/// Either a community count (top-gamma centers) or an explicit center list.
struct CenterSpec {
    std::optional<int> communities;
    std::vector<int> manual_centers;
};

/// Full pipeline: influence -> dissimilarity -> stats -> centers ->
/// initialize -> expand -> diffuse. Deterministic for fixed inputs.
CredalPartition detect(const Graph& graph, const PropagationParams& params,
                       const CenterSpec& spec);

} // namespace edpc
