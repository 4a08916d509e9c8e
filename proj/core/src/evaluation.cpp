#include "edpc/evaluation.hpp"

#include <cmath>
#include <map>

namespace edpc {

std::vector<int> HardPartition::labels() const {
    std::vector<int> out;
    out.reserve(decisions.size());
    for (const FocalElement& f : decisions) {
        if (f.is_outlier())
            out.push_back(kOutlier);
        else if (f.is_singleton())
            out.push_back(f.community());
        else
            out.push_back(kImprecise);
    }
    return out;
}

HardPartition harden(const CredalPartition& partition, DecisionMode mode) {
    HardPartition hard;
    hard.mode = mode;
    hard.decisions.reserve(partition.masses.size());
    for (const MassFunction& m : partition.masses) hard.decisions.push_back(decide(m, mode));
    return hard;
}

double nmi_labels(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw validation_error("partition size mismatch");
    if (a.empty()) throw validation_error("empty partitions");
    const double n = static_cast<double>(a.size());

    std::map<int, int> count_a, count_b;
    std::map<std::pair<int, int>, int> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++count_a[a[i]];
        ++count_b[b[i]];
        ++joint[{a[i], b[i]}];
    }

    // a bijective contingency means the partitions agree up to relabeling;
    // short-circuiting keeps the score exactly 1 (and covers the case where
    // both sides are a single class)
    if (joint.size() == count_a.size() && joint.size() == count_b.size()) return 1.0;

    auto entropy = [n](const std::map<int, int>& counts) {
        double h = 0.0;
        for (const auto& [label, count] : counts) {
            double p = count / n;
            if (p > 0.0) h -= p * std::log(p);
        }
        return h;
    };
    const double ha = entropy(count_a);
    const double hb = entropy(count_b);

    double info = 0.0;
    for (const auto& [pair, count] : joint) {
        double pab = count / n;
        double pa = count_a[pair.first] / n;
        double pb = count_b[pair.second] / n;
        info += pab * std::log(pab / (pa * pb));
    }
    if (info <= 0.0) return 0.0;
    return 2.0 * info / (ha + hb);
}

double nmi_against_truth(std::span<const int> labels, std::span<const int> truth) {
    if (labels.size() != truth.size()) throw validation_error("partition size mismatch");
    std::vector<int> a, b;
    a.reserve(labels.size());
    b.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == HardPartition::kImprecise) continue;
        a.push_back(labels[i]);
        b.push_back(truth[i]);
    }
    if (a.empty()) throw validation_error("no precisely labeled nodes to score");
    return nmi_labels(a, b);
}

double nmi(const HardPartition& partition, const GroundTruth& truth) {
    return nmi_against_truth(partition.labels(), truth.labels);
}

std::string contingency_csv(std::span<const int> labels, std::span<const int> truth) {
    if (labels.size() != truth.size()) throw validation_error("partition size mismatch");
    std::map<std::pair<int, int>, int> joint;
    for (std::size_t i = 0; i < labels.size(); ++i) ++joint[{labels[i], truth[i]}];

    std::string out = "label,truth,count\n";
    for (const auto& [pair, count] : joint) {
        if (pair.first == HardPartition::kOutlier)
            out += "outlier";
        else if (pair.first == HardPartition::kImprecise)
            out += "imprecise";
        else
            out += std::to_string(pair.first);
        out += ',';
        out += std::to_string(pair.second);
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

std::string contingency_csv(const HardPartition& partition, const GroundTruth& truth) {
    return contingency_csv(partition.labels(), truth.labels);
}

} // namespace edpc
