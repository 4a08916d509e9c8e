#include "edpc/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace edpc {

int CredalPartition::labeled_count() const {
    int count = 0;
    for (char flag : labeled) count += flag != 0;
    return count;
}

int CredalPartition::outlier_count() const {
    int count = 0;
    for (const MassFunction& m : masses) count += m.is_vacuous();
    return count;
}

CredalPartition initialize(const Graph& graph, const CenterSet& centers) {
    const int n = graph.node_count();
    const int c = centers.count();
    if (c < 1) throw validation_error("center set is empty");
    for (int v : centers.nodes)
        if (v < 0 || v >= n) throw validation_error("center index out of range");

    CredalPartition partition;
    partition.centers = centers;
    partition.frame_size = c;
    partition.masses.assign(n, MassFunction::vacuous(c));
    partition.labeled.assign(n, 0);
    for (int t = 0; t < c; ++t) {
        partition.masses[centers.nodes[t]] = MassFunction::categorical(t, c);
        partition.labeled[centers.nodes[t]] = 1;
    }
    return partition;
}

double gamma_scale_auto(const Graph& graph, const DissimilarityMatrix& d, double beta) {
    if (!(beta > 0.0)) throw validation_error("beta must be positive");
    if (graph.edge_count() == 0)
        throw validation_error("gamma scale is undefined on an edgeless graph");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(graph.edge_count()) * 2);
    for (int v = 0; v < graph.node_count(); ++v)
        for (int u : graph.neighbors(v)) values.push_back(std::pow(d.at(v, u), beta));
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size();
    double median = k % 2 == 1 ? values[k / 2] : (values[k / 2 - 1] + values[k / 2]) / 2.0;
    if (median == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / median;
}

double expansion_alpha(double distance, double gamma_scale, double beta) {
    if (distance == 0.0) return 1.0; // exp(-g*0) for every finite g
    return std::exp(-gamma_scale * std::pow(distance, beta));
}

double overlap_weight(const std::vector<double>& center_distances) {
    if (center_distances.empty()) throw validation_error("no center distances");
    double mean = 0.0;
    for (double x : center_distances) mean += x;
    mean /= static_cast<double>(center_distances.size());
    double var = 0.0;
    for (double x : center_distances) var += (x - mean) * (x - mean);
    var /= static_cast<double>(center_distances.size());
    return std::exp(-var);
}

CredalPartition expand_one_round(const Graph& graph, const DissimilarityMatrix& d,
                                 const CredalPartition& partition,
                                 const PropagationParams& params) {
    const int n = graph.node_count();
    const int c = partition.frame_size;
    if (!(params.beta > 0.0)) throw validation_error("beta must be positive");
    const double gamma = params.gamma_scale.has_value()
                             ? *params.gamma_scale
                             : gamma_scale_auto(graph, d, params.beta);
    if (!(gamma > 0.0)) throw validation_error("gamma scale must be positive");

    // a center's community is read off its categorical mass, so hand-built
    // partitions may legitimately point two centers at one community
    std::vector<int> community_of(n, -1);
    for (int t = 0; t < c; ++t) {
        const int v = partition.centers.nodes[t];
        const MassFunction& m = partition.masses[v];
        if (m.entries().size() != 1 || !m.entries()[0].first.is_singleton())
            throw validation_error("center " + std::to_string(v) +
                                   " must carry a categorical singleton mass");
        community_of[v] = m.entries()[0].first.community();
    }

    CredalPartition out = partition;
    for (int v = 0; v < n; ++v) {
        if (community_of[v] >= 0) continue;
        // minimum distance per adjacent center community
        std::map<int, double> dist_per_community;
        for (int u : graph.neighbors(v)) {
            int t = community_of[u];
            if (t < 0) continue;
            auto [it, inserted] = dist_per_community.emplace(t, d.at(v, u));
            if (!inserted) it->second = std::min(it->second, d.at(v, u));
        }
        if (dist_per_community.empty()) continue;
        if (dist_per_community.size() == 1) {
            auto [t, dist] = *dist_per_community.begin();
            double alpha = expansion_alpha(dist, gamma, params.beta);
            out.masses[v] = MassFunction::simple(FocalElement::singleton(t), alpha, c);
            out.labeled[v] = alpha > 0.0; // a vacuous result is no assignment
        } else {
            std::uint32_t mask = 0;
            std::vector<double> distances;
            distances.reserve(dist_per_community.size());
            for (auto [t, dist] : dist_per_community) {
                mask |= std::uint32_t{1} << t;
                distances.push_back(dist);
            }
            double w = overlap_weight(distances);
            out.masses[v] = MassFunction::simple(FocalElement::subset(mask), w, c);
            out.labeled[v] = 0; // overlap mass is provisional; diffusion resolves it
        }
    }
    return out;
}

double labeled_rate(const Graph& graph, const CredalPartition& partition, int node) {
    auto nbrs = graph.neighbors(node);
    if (nbrs.empty()) return 0.0;
    int labeled = 0;
    for (int u : nbrs) labeled += partition.is_labeled(u);
    return static_cast<double>(labeled) / static_cast<double>(nbrs.size());
}

CredalPartition diffuse(const Graph& graph, const DissimilarityMatrix& d,
                        const std::vector<double>& rho, const CredalPartition& partition,
                        const PropagationParams& params) {
    (void)d; // distance discounting applies in expansion only
    const int n = graph.node_count();
    if (static_cast<int>(rho.size()) != n) throw validation_error("rho length mismatch");

    CredalPartition out = partition;
    for (;;) {
        int next = -1;
        double next_psi = 0.0;
        for (int v = 0; v < n; ++v) {
            if (out.is_labeled(v)) continue;
            double psi = labeled_rate(graph, out, v);
            if (psi <= 0.0) continue;
            if (next < 0 || psi > next_psi ||
                (psi == next_psi && (rho[v] > rho[next] || (rho[v] == rho[next] && v < next)))) {
                next = v;
                next_psi = psi;
            }
        }
        if (next < 0) break;

        std::vector<MassFunction> evidence;
        for (int u : graph.neighbors(next))
            if (out.is_labeled(u)) evidence.push_back(out.masses[u]);
        out.masses[next] = combine_neighbor_evidence(evidence, params.reliability);
        out.labeled[next] = 1;
    }
    return out;
}

CredalPartition detect(const Graph& graph, const PropagationParams& params,
                       const CenterSpec& spec) {
    if (spec.communities.has_value() == !spec.manual_centers.empty())
        throw validation_error("exactly one of community count or manual centers is required");
    if (graph.node_count() == 0) throw validation_error("empty graph");

    InfluenceMatrix infl = influence_matrix(graph, params.t_steps);
    DissimilarityMatrix d = dissimilarity_matrix(infl);
    NodeStats stats = compute_node_stats(graph, d);
    CenterSet centers = spec.communities.has_value()
                            ? select_centers_top_gamma(stats, *spec.communities)
                            : select_centers_manual(spec.manual_centers, graph.node_count());

    CredalPartition partition = initialize(graph, centers);
    partition = expand_one_round(graph, d, partition, params);
    return diffuse(graph, d, stats.rho, partition, params);
}

} // namespace edpc
