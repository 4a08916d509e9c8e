#include "edpc/belief.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace edpc {

FocalElement FocalElement::subset(std::uint32_t mask) {
    if (mask == 0) throw validation_error("subset focal element must be nonempty");
    return FocalElement(mask);
}

FocalElement FocalElement::singleton(int community) {
    if (community < 0 || community >= kMaxFrame)
        throw validation_error("community id out of range: " + std::to_string(community));
    return FocalElement(std::uint32_t{1} << community);
}

FocalElement FocalElement::omega(int frame_size) {
    if (frame_size < 1 || frame_size > kMaxFrame)
        throw validation_error("frame size out of range: " + std::to_string(frame_size));
    return FocalElement((std::uint32_t{1} << frame_size) - 1);
}

int FocalElement::community() const {
    if (!is_singleton()) throw validation_error("focal element is not a singleton");
    int c = 0;
    std::uint32_t m = mask_;
    while ((m & 1u) == 0) { m >>= 1; ++c; }
    return c;
}

std::vector<int> FocalElement::communities() const {
    std::vector<int> out;
    for (int c = 0; c < kMaxFrame; ++c)
        if (mask_ & (std::uint32_t{1} << c)) out.push_back(c);
    return out;
}

bool FocalElement::fits_frame(int frame_size) const noexcept {
    if (frame_size < 1 || frame_size > kMaxFrame) return false;
    return (mask_ & ~((std::uint32_t{1} << frame_size) - 1)) == 0;
}

namespace {

void sort_decision_order(std::vector<std::pair<FocalElement, double>>& entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return FocalElement::decision_less(a.first, b.first);
    });
}

// Merges duplicate focal elements in place; input must be sorted.
void merge_duplicates(std::vector<std::pair<FocalElement, double>>& entries) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (out > 0 && entries[out - 1].first == entries[i].first)
            entries[out - 1].second += entries[i].second;
        else
            entries[out++] = entries[i];
    }
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(out), entries.end());
}

} // namespace

MassFunction::MassFunction(std::vector<std::pair<FocalElement, double>> entries, int frame_size)
    : frame_size_(frame_size) {
    if (frame_size < 1 || frame_size > FocalElement::kMaxFrame)
        throw validation_error("frame size out of range: " + std::to_string(frame_size));
    double total = 0.0;
    for (const auto& [focal, m] : entries) {
        if (m < 0.0) throw validation_error("negative mass");
        if (!focal.fits_frame(frame_size))
            throw validation_error("focal element does not fit frame of size " +
                                   std::to_string(frame_size));
        total += m;
    }
    if (std::abs(total - 1.0) > kSumTolerance)
        throw validation_error("masses sum to " + std::to_string(total) + ", expected 1");
    sort_decision_order(entries);
    merge_duplicates(entries);
    std::erase_if(entries, [](const auto& e) { return e.second == 0.0; });
    entries_ = std::move(entries);
}

MassFunction::MassFunction(unchecked_tag, std::vector<std::pair<FocalElement, double>> entries,
                           int frame_size)
    : entries_(std::move(entries)), frame_size_(frame_size) {}

MassFunction MassFunction::from_accumulated(std::vector<std::pair<FocalElement, double>> entries,
                                            int frame_size) {
    sort_decision_order(entries);
    merge_duplicates(entries);
    std::erase_if(entries, [](const auto& e) { return e.second < kPruneThreshold; });
    double total = 0.0;
    for (const auto& [focal, m] : entries) total += m;
    if (total <= 0.0) throw validation_error("combination produced an empty mass function");
    for (auto& [focal, m] : entries) m /= total;
    return MassFunction(unchecked_tag{}, std::move(entries), frame_size);
}

MassFunction MassFunction::vacuous(int frame_size) {
    return MassFunction({{FocalElement::outlier(), 1.0}}, frame_size);
}

MassFunction MassFunction::categorical(int community, int frame_size) {
    return MassFunction({{FocalElement::singleton(community), 1.0}}, frame_size);
}

MassFunction MassFunction::simple(FocalElement focal, double alpha, int frame_size) {
    if (alpha < 0.0 || alpha > 1.0) throw validation_error("alpha out of [0,1]");
    return MassFunction({{focal, alpha}, {FocalElement::outlier(), 1.0 - alpha}}, frame_size);
}

double MassFunction::mass(FocalElement f) const noexcept {
    for (const auto& [focal, m] : entries_)
        if (focal == f) return m;
    return 0.0;
}

bool MassFunction::is_vacuous() const noexcept {
    return entries_.size() == 1 && entries_[0].first.is_outlier();
}

namespace {

void require_same_frame(const MassFunction& m1, const MassFunction& m2) {
    if (m1.frame_size() != m2.frame_size())
        throw validation_error("frame size mismatch in combination");
}

// O* behaves as total ignorance: O* meet X = X. A subset/subset intersection
// of zero is the empty set (conflict), never O*.
struct Meet {
    bool empty;
    FocalElement element;
};

Meet meet(FocalElement a, FocalElement b) {
    if (a.is_outlier()) return {false, b};
    if (b.is_outlier()) return {false, a};
    std::uint32_t m = a.mask() & b.mask();
    if (m == 0) return {true, FocalElement::outlier()};
    return {false, FocalElement::subset(m)};
}

using Accumulator = std::map<std::uint64_t, double>;

// Key: O* sorts last so the accumulated entries come out in decision order.
std::uint64_t key_of(FocalElement f) {
    return f.is_outlier() ? ~std::uint64_t{0} : f.mask();
}

FocalElement key_to_focal(std::uint64_t key) {
    return key == ~std::uint64_t{0} ? FocalElement::outlier()
                                    : FocalElement::subset(static_cast<std::uint32_t>(key));
}

std::vector<std::pair<FocalElement, double>> to_entries(const Accumulator& acc) {
    std::vector<std::pair<FocalElement, double>> entries;
    entries.reserve(acc.size());
    for (const auto& [key, m] : acc) entries.emplace_back(key_to_focal(key), m);
    return entries;
}

} // namespace

MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
    require_same_frame(m1, m2);
    Accumulator acc;
    double conflict = 0.0;
    for (const auto& [fa, ma] : m1.entries()) {
        for (const auto& [fb, mb] : m2.entries()) {
            Meet mt = meet(fa, fb);
            if (mt.empty)
                conflict += ma * mb;
            else
                acc[key_of(mt.element)] += ma * mb;
        }
    }
    if (conflict >= 1.0 - MassFunction::kSumTolerance)
        throw validation_error("total conflict: Dempster combination undefined");
    return MassFunction::from_accumulated(to_entries(acc), m1.frame_size());
}

MassFunction dubois_prade_combine(const MassFunction& m1, const MassFunction& m2) {
    require_same_frame(m1, m2);
    Accumulator acc;
    for (const auto& [fa, ma] : m1.entries()) {
        for (const auto& [fb, mb] : m2.entries()) {
            Meet mt = meet(fa, fb);
            if (mt.empty)
                acc[key_of(FocalElement::subset(fa.mask() | fb.mask()))] += ma * mb;
            else
                acc[key_of(mt.element)] += ma * mb;
        }
    }
    return MassFunction::from_accumulated(to_entries(acc), m1.frame_size());
}

MassFunction discount(const MassFunction& m, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("discount factor out of [0,1]");
    Accumulator acc;
    for (const auto& [focal, mass] : m.entries()) acc[key_of(focal)] += alpha * mass;
    acc[key_of(FocalElement::outlier())] += 1.0 - alpha;
    return MassFunction::from_accumulated(to_entries(acc), m.frame_size());
}

namespace {

// Dominant non-O* focal element: largest mass, smaller mask on ties.
// Vacuous inputs have none.
std::uint32_t group_key(const MassFunction& m) {
    std::uint32_t best_mask = 0;
    double best_mass = -1.0;
    for (const auto& [focal, mass] : m.entries()) {
        if (focal.is_outlier()) continue;
        if (mass > best_mass || (mass == best_mass && focal.mask() < best_mask)) {
            best_mass = mass;
            best_mask = focal.mask();
        }
    }
    return best_mask;
}

} // namespace

MassFunction combine_neighbor_evidence(std::span<const MassFunction> bbas, ReliabilityRule rule) {
    if (bbas.empty()) throw validation_error("no evidence to combine");
    const int frame = bbas.front().frame_size();

    // group by dominant focal element; map iteration gives deterministic order
    std::map<std::uint32_t, std::vector<const MassFunction*>> groups;
    for (const MassFunction& m : bbas) {
        if (m.frame_size() != frame) throw validation_error("frame size mismatch in evidence");
        if (m.is_vacuous()) continue;
        groups[group_key(m)].push_back(&m);
    }
    if (groups.empty()) return MassFunction::vacuous(frame);

    double denom = 0.0;
    if (rule == ReliabilityRule::paper_eq15) {
        for (const auto& [key, members] : groups) denom += static_cast<double>(members.size());
    } else {
        for (const auto& [key, members] : groups)
            denom = std::max(denom, static_cast<double>(members.size()));
    }

    std::vector<MassFunction> discounted;
    discounted.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        MassFunction fused = *members.front();
        for (std::size_t i = 1; i < members.size(); ++i)
            fused = dempster_combine(fused, *members[i]);
        discounted.push_back(discount(fused, static_cast<double>(members.size()) / denom));
    }

    MassFunction result = discounted.front();
    for (std::size_t i = 1; i < discounted.size(); ++i)
        result = dubois_prade_combine(result, discounted[i]);
    return result;
}

FocalElement decide(const MassFunction& m, DecisionMode mode) {
    const FocalElement* best = nullptr;
    double best_mass = 0.0;
    for (const auto& [focal, mass] : m.entries()) {
        if (mode == DecisionMode::singletons_only && !focal.is_singleton()) continue;
        if (mass <= 0.0) continue;
        if (best == nullptr || mass > best_mass ||
            (mass == best_mass && FocalElement::decision_less(focal, *best))) {
            best = &focal;
            best_mass = mass;
        }
    }
    return best != nullptr ? *best : FocalElement::outlier();
}

} // namespace edpc
