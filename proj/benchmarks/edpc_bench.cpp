#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

#include "edpc/density_peaks.hpp"
#include "edpc/evaluation.hpp"
#include "edpc/graph.hpp"
#include "edpc/propagation.hpp"
#include "edpc/signal_dissim.hpp"

namespace {

edpc::Graph random_graph(int n, double p, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(gen) < p) edges.emplace_back(u, v);
    return edpc::Graph(n, std::move(edges));
}

edpc::Graph load_karate() {
    std::ifstream in(std::string(EDPC_BENCH_DATA_DIR) + "/karate.gml", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return edpc::load_gml(buf.str()).graph;
}

void BM_InfluenceMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    edpc::Graph g = random_graph(n, 8.0 / n, 42);
    for (auto _ : state) {
        auto infl = edpc::influence_matrix(g, 3);
        benchmark::DoNotOptimize(infl.values.data());
    }
}
BENCHMARK(BM_InfluenceMatrix)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_DissimilarityMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    edpc::Graph g = random_graph(n, 8.0 / n, 43);
    auto infl = edpc::influence_matrix(g, 3);
    for (auto _ : state) {
        auto d = edpc::dissimilarity_matrix(infl);
        benchmark::DoNotOptimize(d.values.data());
    }
}
BENCHMARK(BM_DissimilarityMatrix)->Arg(64)->Arg(128)->Arg(256);

void BM_NodeStats(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    edpc::Graph g = random_graph(n, 8.0 / n, 44);
    auto d = edpc::dissimilarity_matrix(edpc::influence_matrix(g, 3));
    for (auto _ : state) {
        auto stats = edpc::compute_node_stats(g, d);
        benchmark::DoNotOptimize(stats.gamma.data());
    }
}
BENCHMARK(BM_NodeStats)->Arg(128)->Arg(512);

void BM_CombineNeighborEvidence(benchmark::State& state) {
    const int pieces = static_cast<int>(state.range(0));
    std::vector<edpc::MassFunction> evidence;
    for (int i = 0; i < pieces; ++i)
        evidence.push_back(
            edpc::MassFunction::simple(edpc::FocalElement::singleton(i % 4), 0.6, 4));
    for (auto _ : state) {
        auto m = edpc::combine_neighbor_evidence(evidence);
        benchmark::DoNotOptimize(&m);
    }
}
BENCHMARK(BM_CombineNeighborEvidence)->Arg(2)->Arg(8)->Arg(32);

void BM_DetectKarate(benchmark::State& state) {
    edpc::Graph g = load_karate();
    edpc::CenterSpec spec;
    spec.communities = 2;
    for (auto _ : state) {
        auto partition = edpc::detect(g, edpc::PropagationParams{}, spec);
        benchmark::DoNotOptimize(&partition);
    }
}
BENCHMARK(BM_DetectKarate);

void BM_DetectRandom(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    edpc::Graph g = random_graph(n, 10.0 / n, 45);
    edpc::CenterSpec spec;
    spec.communities = 4;
    for (auto _ : state) {
        auto partition = edpc::detect(g, edpc::PropagationParams{}, spec);
        benchmark::DoNotOptimize(&partition);
    }
}
BENCHMARK(BM_DetectRandom)->Arg(128)->Arg(256);

} // namespace

BENCHMARK_MAIN();
