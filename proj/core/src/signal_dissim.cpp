#include "edpc/signal_dissim.hpp"

#include <cmath>

#include "detail/text_format.hpp"

namespace edpc {

InfluenceMatrix influence_matrix(const Graph& graph, int t_steps) {
    if (t_steps < 1) throw validation_error("t_steps must be >= 1");
    const int n = graph.node_count();
    InfluenceMatrix out;
    out.n = n;
    out.t_steps = t_steps;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);

    std::vector<double> x(n), y(n);
    for (int source = 0; source < n; ++source) {
        x.assign(n, 0.0);
        x[source] = 1.0;
        for (int step = 0; step < t_steps; ++step) {
            for (int v = 0; v < n; ++v) {
                double sum = x[v]; // self-loop term
                for (int u : graph.neighbors(v)) sum += x[u];
                y[v] = sum;
            }
            x.swap(y);
        }
        double* col = out.values.data() + static_cast<std::size_t>(source) * n;
        for (int v = 0; v < n; ++v) col[v] = x[v];
    }
    return out;
}

DissimilarityMatrix dissimilarity_matrix(const InfluenceMatrix& infl, bool unit_normalize) {
    const int n = infl.n;
    if (infl.values.size() != static_cast<std::size_t>(n) * n)
        throw validation_error("influence matrix storage does not match its dimension");

    std::vector<double> cols(infl.values);
    if (unit_normalize) {
        for (int s = 0; s < n; ++s) {
            double* col = cols.data() + static_cast<std::size_t>(s) * n;
            double norm2 = 0.0;
            for (int v = 0; v < n; ++v) norm2 += col[v] * col[v];
            double norm = std::sqrt(norm2);
            if (norm > 0.0)
                for (int v = 0; v < n; ++v) col[v] /= norm;
        }
    }

    DissimilarityMatrix out;
    out.n = n;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* ci = cols.data() + static_cast<std::size_t>(i) * n;
        for (int j = i + 1; j < n; ++j) {
            const double* cj = cols.data() + static_cast<std::size_t>(j) * n;
            double sum = 0.0;
            for (int v = 0; v < n; ++v) {
                double diff = ci[v] - cj[v];
                sum += diff * diff;
            }
            double d = std::sqrt(sum);
            out.values[static_cast<std::size_t>(i) * n + j] = d;
            out.values[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return out;
}

std::string dissimilarity_csv(const DissimilarityMatrix& d) {
    std::string out;
    for (int i = 0; i < d.n; ++i) {
        for (int j = 0; j < d.n; ++j) {
            if (j > 0) out += ',';
            detail::append_double(out, d.at(i, j));
        }
        out += '\n';
    }
    return out;
}

} // namespace edpc
