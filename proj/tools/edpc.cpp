// edpc: evidential density-peaks community detection.
//
// Subcommands:
//   decision-graph  write the rho*/delta*/gamma CSV used to pick centers
//   detect          run the full pipeline and write the partition JSON
//   eval            score a partition JSON against ground truth (NMI)
//
// Exit codes: 0 success, 1 validation or parse error, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edpc/density_peaks.hpp"
#include "edpc/evaluation.hpp"
#include "edpc/graph.hpp"
#include "edpc/propagation.hpp"
#include "edpc/serialize.hpp"
#include "edpc/signal_dissim.hpp"

namespace {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on '" + path + "'");
    return buf.str();
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
    if (!path.has_value()) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + *path + "' for writing");
    out << text;
    if (!out) throw io_error("write failure on '" + *path + "'");
}

bool looks_like_gml(const std::string& path) {
    if (path.size() < 4) return false;
    std::string tail = path.substr(path.size() - 4);
    for (char& ch : tail) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return tail == ".gml";
}

edpc::GmlFile load_input(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    bool gml = format == "gml" || (format == "auto" && looks_like_gml(path));
    if (gml) return edpc::load_gml(text);
    return {edpc::load_edge_list(text, edpc::Indexing::zero_based), std::nullopt};
}

std::optional<double> parse_gamma(const std::string& gamma) {
    if (gamma == "auto") return std::nullopt;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(gamma, &used);
    } catch (const std::exception&) {
        throw edpc::validation_error("--gamma expects 'auto' or a positive number");
    }
    if (used != gamma.size() || !(value > 0.0))
        throw edpc::validation_error("--gamma expects 'auto' or a positive number");
    return value;
}

edpc::ReliabilityRule parse_reliability(const std::string& rule) {
    if (rule == "max_normalized") return edpc::ReliabilityRule::max_normalized;
    if (rule == "paper_eq15") return edpc::ReliabilityRule::paper_eq15;
    throw edpc::validation_error("--reliability expects max_normalized or paper_eq15");
}

// "id label" per line, '#' comments; conflicts are errors.
std::map<long long, int> parse_truth_map(const std::string& text) {
    std::map<long long, int> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        long long id = 0;
        int label = 0;
        std::string extra;
        try {
            id = std::stoll(first);
        } catch (const std::exception&) {
            throw edpc::parse_error("malformed node id '" + first + "'", number);
        }
        if (!(ls >> label) || (ls >> extra))
            throw edpc::parse_error("expected 'node_id label'", number);
        if (label < 0) throw edpc::validation_error("negative label at line " + std::to_string(number));
        auto [it, inserted] = out.emplace(id, label);
        if (!inserted && it->second != label)
            throw edpc::validation_error("conflicting labels for node " + std::to_string(id));
    }
    return out;
}

int run_decision_graph(const std::string& input, const std::string& format, int t_steps,
                       const std::optional<std::string>& output) {
    edpc::GmlFile file = load_input(input, format);
    edpc::InfluenceMatrix infl = edpc::influence_matrix(file.graph, t_steps);
    edpc::DissimilarityMatrix d = edpc::dissimilarity_matrix(infl);
    edpc::NodeStats stats = edpc::compute_node_stats(file.graph, d);
    write_output(output, edpc::decision_graph_csv(stats, file.graph));
    return 0;
}

int run_detect(const std::string& input, const std::string& format,
               const edpc::PropagationParams& params, std::optional<int> communities,
               const std::vector<long long>& center_ids,
               const std::optional<std::string>& output) {
    edpc::GmlFile file = load_input(input, format);
    edpc::CenterSpec spec;
    spec.communities = communities;
    for (long long id : center_ids) {
        auto idx = file.graph.index_of(id);
        if (!idx.has_value())
            throw edpc::validation_error("unknown center id " + std::to_string(id));
        spec.manual_centers.push_back(*idx);
    }

    edpc::CredalPartition partition = edpc::detect(file.graph, params, spec);

    std::ostream& summary = output.has_value() ? std::cout : std::cerr;
    summary << "centers:";
    for (int v : partition.centers.nodes) summary << ' ' << file.graph.external_id(v);
    summary << "\ncommunities: " << partition.frame_size
            << "\noutliers: " << partition.outlier_count() << "\n";

    write_output(output, edpc::partition_to_json(file.graph, partition));
    return 0;
}

int run_eval(const std::string& input, const std::string& labels_path, const std::string& mode,
             const std::optional<std::string>& output) {
    edpc::PartitionFile partition = edpc::partition_from_json(read_file(input));

    std::map<long long, int> truth_map;
    if (looks_like_gml(labels_path)) {
        edpc::GmlFile file = edpc::load_gml(read_file(labels_path));
        if (!file.truth.has_value())
            throw edpc::validation_error("GML file carries no 'value' ground truth: " +
                                         labels_path);
        for (int v = 0; v < file.graph.node_count(); ++v)
            truth_map.emplace(file.graph.external_id(v), file.truth->labels[v]);
    } else {
        truth_map = parse_truth_map(read_file(labels_path));
    }

    if (truth_map.size() != partition.ids.size())
        throw edpc::validation_error("node-set mismatch: partition has " +
                                     std::to_string(partition.ids.size()) + " nodes, truth has " +
                                     std::to_string(truth_map.size()));
    std::vector<int> truth;
    truth.reserve(partition.ids.size());
    for (long long id : partition.ids) {
        auto it = truth_map.find(id);
        if (it == truth_map.end())
            throw edpc::validation_error("node-set mismatch: no truth label for node " +
                                         std::to_string(id));
        truth.push_back(it->second);
    }

    const std::vector<int>& labels =
        mode == "all-focal" ? partition.hard_all_focal : partition.hard_singleton;
    double score = edpc::nmi_against_truth(labels, truth);
    std::printf("%.4f\n", score);

    if (output.has_value()) write_output(output, edpc::contingency_csv(labels, truth));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidential density-peaks community detection"};
    app.require_subcommand(1);

    std::string input, format = "auto", gamma = "auto", reliability = "max_normalized";
    std::string labels_path, mode = "singleton";
    std::optional<std::string> output;
    int t_steps = 3;
    double beta = 2.0;
    std::optional<int> communities;
    std::vector<long long> center_ids;

    CLI::App* dg = app.add_subcommand("decision-graph",
                                      "Write the node,rho_star,delta_star,gamma CSV");
    dg->add_option("--input", input, "Graph file")->required();
    dg->add_option("--format", format, "edge-list|gml (default: by extension)")
        ->check(CLI::IsMember({"auto", "edge-list", "gml"}));
    dg->add_option("--t-steps", t_steps, "Signal propagation steps (default 3)");
    dg->add_option("--output", output, "Output CSV path (default stdout)");

    CLI::App* detect = app.add_subcommand("detect", "Detect communities, write partition JSON");
    detect->add_option("--input", input, "Graph file")->required();
    detect->add_option("--format", format, "edge-list|gml (default: by extension)")
        ->check(CLI::IsMember({"auto", "edge-list", "gml"}));
    detect->add_option("--t-steps", t_steps, "Signal propagation steps (default 3)");
    detect->add_option("--beta", beta, "Discount exponent (default 2)");
    detect->add_option("--gamma", gamma, "Discount scale: auto or positive value (default auto)");
    detect->add_option("--communities", communities, "Number of communities (top-gamma centers)");
    detect->add_option("--centers", center_ids, "Comma-separated center node ids")
        ->delimiter(',');
    detect->add_option("--reliability", reliability, "max_normalized|paper_eq15")
        ->check(CLI::IsMember({"max_normalized", "paper_eq15"}));
    detect->add_option("--output", output, "Output JSON path (default stdout)");

    CLI::App* eval = app.add_subcommand("eval", "Score a partition JSON against ground truth");
    eval->add_option("--input", input, "Partition JSON")->required();
    eval->add_option("--labels", labels_path, "Ground truth: .gml with values or 'id label' lines")
        ->required();
    eval->add_option("--mode", mode, "singleton|all-focal (default singleton)")
        ->check(CLI::IsMember({"singleton", "all-focal"}));
    eval->add_option("--output", output, "Optional contingency CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dg->parsed()) return run_decision_graph(input, format, t_steps, output);
        if (detect->parsed()) {
            if (communities.has_value() == !center_ids.empty())
                throw edpc::validation_error(
                    "exactly one of --communities or --centers is required");
            edpc::PropagationParams params;
            params.t_steps = t_steps;
            params.beta = beta;
            params.gamma_scale = parse_gamma(gamma);
            params.reliability = parse_reliability(reliability);
            return run_detect(input, format, params, communities, center_ids, output);
        }
        if (eval->parsed()) return run_eval(input, labels_path, mode, output);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
