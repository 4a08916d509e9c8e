#include "edpc/density_peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "detail/text_format.hpp"

namespace edpc {

int degree_with_self(const Graph& graph, int node) {
    return graph.degree(node) + 1;
}

std::vector<double> local_degree(const Graph& graph) {
    const int n = graph.node_count();
    std::vector<int> k(n);
    for (int v = 0; v < n; ++v) k[v] = graph.degree(v) + 1;
    std::vector<double> out(n);
    for (int v = 0; v < n; ++v) {
        long long sum = k[v];
        for (int u : graph.neighbors(v)) sum += k[u];
        out[v] = static_cast<double>(sum);
    }
    return out;
}

std::vector<double> local_density(const Graph& graph, const DissimilarityMatrix& d) {
    const int n = graph.node_count();
    if (d.n != n) throw validation_error("dissimilarity matrix dimension mismatch");
    std::vector<double> rho_d = local_degree(graph);
    std::vector<double> out(n);
    for (int v = 0; v < n; ++v) {
        double sum = 0.0;
        for (int u : graph.neighbors(v)) {
            double dij = d.at(v, u);
            sum += dij * dij;
        }
        out[v] = std::exp(-sum / degree_with_self(graph, v)) + rho_d[v];
    }
    return out;
}

namespace {

// Strict density order: rho descending, index ascending on ties.
bool denser(const std::vector<double>& rho, int a, int b) {
    return rho[a] > rho[b] || (rho[a] == rho[b] && a < b);
}

} // namespace

std::vector<double> min_dissimilarity(const std::vector<double>& rho,
                                      const DissimilarityMatrix& d) {
    const int n = static_cast<int>(rho.size());
    if (n == 0) throw validation_error("empty density vector");
    if (d.n != n) throw validation_error("dissimilarity matrix dimension mismatch");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return denser(rho, a, b); });

    std::vector<double> delta(n, 0.0);
    const int densest = order[0];
    for (int j = 0; j < n; ++j) delta[densest] = std::max(delta[densest], d.at(densest, j));
    for (int r = 1; r < n; ++r) {
        const int i = order[r];
        double best = std::numeric_limits<double>::infinity();
        for (int s = 0; s < r; ++s) best = std::min(best, d.at(i, order[s]));
        delta[i] = best;
    }
    return delta;
}

std::pair<std::vector<double>, std::vector<double>> regularize(const std::vector<double>& rho,
                                                               const std::vector<double>& delta) {
    if (rho.size() != delta.size()) throw validation_error("rho/delta length mismatch");
    if (rho.empty()) throw validation_error("empty statistics vectors");
    double max_rho = *std::max_element(rho.begin(), rho.end());
    double max_delta = *std::max_element(delta.begin(), delta.end());
    if (max_rho <= 0.0) throw validation_error("max(rho) must be positive");
    std::vector<double> rs(rho.size()), ds(delta.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rs[i] = rho[i] / max_rho;
    for (std::size_t i = 0; i < delta.size(); ++i)
        ds[i] = max_delta > 0.0 ? delta[i] / max_delta : 0.0;
    return {std::move(rs), std::move(ds)};
}

NodeStats compute_node_stats(const Graph& graph, const DissimilarityMatrix& d) {
    NodeStats stats;
    stats.rho = local_density(graph, d);
    stats.delta = min_dissimilarity(stats.rho, d);
    std::tie(stats.rho_star, stats.delta_star) = regularize(stats.rho, stats.delta);
    stats.gamma.resize(stats.rho.size());
    for (std::size_t i = 0; i < stats.gamma.size(); ++i)
        stats.gamma[i] = stats.rho_star[i] * stats.delta_star[i];
    return stats;
}

std::vector<double> classic_dpc_density(const DissimilarityMatrix& d, double cutoff) {
    if (!(cutoff > 0.0)) throw validation_error("cut-off distance must be positive");
    std::vector<double> out(d.n, 0.0);
    for (int i = 0; i < d.n; ++i) {
        int count = 0;
        for (int j = 0; j < d.n; ++j)
            if (j != i && d.at(i, j) < cutoff) ++count;
        out[i] = count;
    }
    return out;
}

CenterSet select_centers_top_gamma(const NodeStats& stats, int communities) {
    const int n = stats.size();
    if (communities < 1) throw validation_error("community count must be >= 1");
    if (communities > n)
        throw validation_error("community count " + std::to_string(communities) +
                               " exceeds node count " + std::to_string(n));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (stats.gamma[a] != stats.gamma[b]) return stats.gamma[a] > stats.gamma[b];
        return a < b;
    });
    order.resize(communities);
    return CenterSet{std::move(order)};
}

CenterSet select_centers_manual(std::vector<int> nodes, int node_count) {
    if (nodes.empty()) throw validation_error("manual center list is empty");
    if (static_cast<int>(nodes.size()) > node_count)
        throw validation_error("more centers than nodes");
    std::vector<int> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw validation_error("duplicate manual center");
    for (int v : nodes)
        if (v < 0 || v >= node_count)
            throw validation_error("center index out of range: " + std::to_string(v));
    return CenterSet{std::move(nodes)};
}

std::vector<DecisionGraphRow> decision_graph(const NodeStats& stats) {
    std::vector<DecisionGraphRow> rows;
    rows.reserve(stats.size());
    for (int v = 0; v < stats.size(); ++v)
        rows.push_back({v, stats.rho_star[v], stats.delta_star[v], stats.gamma[v]});
    std::sort(rows.begin(), rows.end(), [](const DecisionGraphRow& a, const DecisionGraphRow& b) {
        if (a.gamma != b.gamma) return a.gamma > b.gamma;
        return a.node < b.node;
    });
    return rows;
}

std::string decision_graph_csv(const NodeStats& stats, const Graph& graph) {
    if (stats.size() != graph.node_count())
        throw validation_error("stats/graph dimension mismatch");
    std::string out = "node,rho_star,delta_star,gamma\n";
    for (const DecisionGraphRow& row : decision_graph(stats)) {
        out += std::to_string(graph.external_id(row.node));
        out += ',';
        detail::append_double(out, row.rho_star);
        out += ',';
        detail::append_double(out, row.delta_star);
        out += ',';
        detail::append_double(out, row.gamma);
        out += '\n';
    }
    return out;
}

} // namespace edpc
