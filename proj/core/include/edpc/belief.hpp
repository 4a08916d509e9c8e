#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "edpc/errors.hpp"

namespace edpc {

/// A focal element: either a nonempty subset of the frame {w_1..w_c},
/// encoded as a bitmask (bit t = community t), or the distinguished
/// open-world outlier class O*. O* is deliberately distinct from the full
/// subset Omega.
class FocalElement {
public:
    static constexpr int kMaxFrame = 30;

    static constexpr FocalElement outlier() noexcept { return FocalElement(0); }
    static FocalElement subset(std::uint32_t mask);
    static FocalElement singleton(int community);
    static FocalElement omega(int frame_size);

    bool is_outlier() const noexcept { return mask_ == 0; }
    bool is_singleton() const noexcept { return mask_ != 0 && (mask_ & (mask_ - 1)) == 0; }
    std::uint32_t mask() const noexcept { return mask_; }

    /// The community of a singleton subset.
    int community() const;
    /// Sorted community ids of a subset; empty for O*.
    std::vector<int> communities() const;

    bool fits_frame(int frame_size) const noexcept;

    friend bool operator==(FocalElement, FocalElement) noexcept = default;

    /// Decision preference order: subsets by ascending mask, O* last.
    static bool decision_less(FocalElement a, FocalElement b) noexcept {
        if (a.is_outlier() != b.is_outlier()) return b.is_outlier();
        return a.mask_ < b.mask_;
    }

private:
    explicit constexpr FocalElement(std::uint32_t mask) noexcept : mask_(mask) {}
    std::uint32_t mask_;
};

/// A basic belief assignment: positive masses over focal elements, summing to
/// one (tolerance 1e-9). Entries are stored in decision order. Immutable.
class MassFunction {
public:
    static constexpr double kSumTolerance = 1e-9;
    /// Combination outputs prune masses below this and renormalize.
    static constexpr double kPruneThreshold = 1e-12;

    /// Validating constructor: rejects negative masses, subsets that do not
    /// fit the frame, and totals off unity (no silent renormalization).
    /// Duplicate focal entries accumulate; zero entries are dropped.
    MassFunction(std::vector<std::pair<FocalElement, double>> entries, int frame_size);

    static MassFunction vacuous(int frame_size);
    static MassFunction categorical(int community, int frame_size);
    /// {focal: alpha, O*: 1 - alpha}.
    static MassFunction simple(FocalElement focal, double alpha, int frame_size);

    int frame_size() const noexcept { return frame_size_; }
    double mass(FocalElement f) const noexcept;
    std::span<const std::pair<FocalElement, double>> entries() const noexcept { return entries_; }
    bool is_vacuous() const noexcept;

    friend bool operator==(const MassFunction&, const MassFunction&) = default;

private:
    friend MassFunction dempster_combine(const MassFunction&, const MassFunction&);
    friend MassFunction dubois_prade_combine(const MassFunction&, const MassFunction&);
    friend MassFunction discount(const MassFunction&, double);

    struct unchecked_tag {};
    MassFunction(unchecked_tag, std::vector<std::pair<FocalElement, double>> entries,
                 int frame_size);
    static MassFunction from_accumulated(std::vector<std::pair<FocalElement, double>> entries,
                                         int frame_size);

    std::vector<std::pair<FocalElement, double>> entries_;
    int frame_size_ = 0;
};

/// Conjunctive combination with conflict renormalization. O* intersects as
/// the neutral total-ignorance element. Throws on total conflict (K = 1).
MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2);

/// Conjunctive combination that transfers each disjoint product to the union
/// of the pair. Total (never fails); conserves mass without renormalization.
MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2);

/// Reliability discounting: scales every focal mass by alpha and moves the
/// remainder onto O*.
MassFunction discount(const MassFunction& m, double alpha);

enum class ReliabilityRule {
    max_normalized, ///< group weight s_k / max_j s_j (reproduces the worked example)
    paper_eq15      ///< literal s_k / sum_j s_j
};

/// Two-step combination of neighbor evidence: group by dominant non-O* focal
/// element, Dempster-combine within groups, discount each group by its
/// size-based reliability, then Dubois-Prade-combine the groups in ascending
/// focal order. Vacuous inputs are neutral and ignored.
MassFunction combine_neighbor_evidence(std::span<const MassFunction> bbas,
                                       ReliabilityRule rule = ReliabilityRule::max_normalized);

enum class DecisionMode { all_focal, singletons_only };

/// Maximum-mass assignment over the allowed focal set. Ties prefer the
/// smaller bitmask, subsets before O*. In singletons_only mode a node with no
/// positive singleton mass decides O*.
FocalElement decide(const MassFunction& m, DecisionMode mode);

} // namespace edpc
