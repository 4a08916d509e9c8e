#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edpc/errors.hpp"

namespace edpc {

/// Undirected simple graph over dense node indices 0..n-1.
///
/// No self-edges are stored; algorithms that need the a_ii = 1 convention
/// apply it themselves. Neighbor lists are sorted ascending. Every node
/// carries an external (input-file) integer id, kept for reporting.
class Graph {
public:
    Graph() = default;

    /// Edges may arrive in any orientation but must be self-loop free and
    /// duplicate free after canonicalization; endpoints must lie in [0, n).
    /// `external_ids` defaults to the identity 0..n-1.
    Graph(int node_count, std::vector<std::pair<int, int>> edges,
          std::vector<long long> external_ids = {});

    int node_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    /// Canonical edge list: u < v, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    std::span<const int> neighbors(int v) const;
    int degree(int v) const;

    long long external_id(int v) const;
    std::optional<int> index_of(long long external_id) const;

    bool same_structure(const Graph& other) const noexcept {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    void check_node(int v) const;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> adj_flat_;
    std::vector<int> adj_offset_;
    std::vector<long long> ids_;
    std::unordered_map<long long, int> id_to_index_;
};

/// Complete per-node community assignment, aligned with internal node indices.
struct GroundTruth {
    std::vector<int> labels;
};

enum class Indexing { zero_based, one_based };

/// Parses "u v" pairs, one edge per line; lines starting with '#' are comments.
/// Duplicate edges and reversals collapse; self-loops are dropped with a warning
/// on stderr. Node count is max index + 1 (isolated nodes implied by the range).
Graph load_edge_list(std::string_view text, Indexing indexing);

struct GmlFile {
    Graph graph;
    std::optional<GroundTruth> truth; ///< present iff every node carried `value`
};

/// Parses the GML subset `node [ id N (label "..") (value V) ]`,
/// `edge [ source A target B ]`. Node ids are remapped to dense indices in
/// order of appearance and kept as external ids. Integer `value`s are used as
/// labels directly; string values are densified by first appearance.
GmlFile load_gml(std::string_view text);

/// Parses "node_id label" lines (external ids). Every node must receive
/// exactly one label; conflicting duplicates and unknown ids are errors.
GroundTruth load_labels(std::string_view text, const Graph& graph);

/// Internal 0-based "u v" lines; reloading with Indexing::zero_based yields a
/// graph with the same structure.
std::string to_edge_list(const Graph& graph);

} // namespace edpc
