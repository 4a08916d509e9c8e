#pragma once

#include <span>
#include <string>
#include <vector>

#include "edpc/belief.hpp"
#include "edpc/graph.hpp"
#include "edpc/propagation.hpp"

namespace edpc {

/// Hard decisions extracted from a credal partition. Under all_focal mode a
/// node may decide an imprecise subset; those are reported but excluded from
/// NMI. Outliers share the single reserved kOutlier label.
struct HardPartition {
    static constexpr int kOutlier = -1;
    static constexpr int kImprecise = -2;

    DecisionMode mode = DecisionMode::singletons_only;
    std::vector<FocalElement> decisions;

    /// Community id per node, kOutlier for O*, kImprecise for non-singleton
    /// subsets (all_focal mode only).
    std::vector<int> labels() const;
};

HardPartition harden(const CredalPartition& partition, DecisionMode mode);

/// Normalized mutual information 2 I(A;B) / (H(A) + H(B)), natural logs,
/// 0 log 0 = 0. Two zero-entropy partitions score 1; a single degenerate side
/// scores 0. Labels may be any ints; kOutlier participates as its own class.
double nmi_labels(std::span<const int> a, std::span<const int> b);

/// NMI between decision labels and ground truth: kImprecise nodes are dropped
/// (with their truth partners) before scoring.
double nmi(const HardPartition& partition, const GroundTruth& truth);
double nmi_against_truth(std::span<const int> labels, std::span<const int> truth);

/// Long-format contingency table `label,truth,count`, sorted; imprecise nodes
/// appear under the label "imprecise", outliers under "outlier".
std::string contingency_csv(const HardPartition& partition, const GroundTruth& truth);
std::string contingency_csv(std::span<const int> labels, std::span<const int> truth);

} // namespace edpc
