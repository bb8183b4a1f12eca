#include "ppmsync/dss_search.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "ppmsync/error.hpp"

namespace ppmsync {

namespace {

// Slot labels, ordered: canonical forms are the lexicographically smallest rotation.
enum Label : std::uint8_t { kZero = 0, kOne = 1, kFree = 2 };

// Backtracking over slot labels for a fixed split (|D0|, |D1|) = (want0, want1).
// Slot 0 always holds a D0 element: every marker has a rotation starting with
// D0, and that rotation is smaller than any rotation starting with D1 or free.
class SplitSearch {
public:
    SplitSearch(std::uint32_t n, std::uint64_t rho, std::uint32_t want0, std::uint32_t want1,
                std::uint64_t& nodes, std::uint64_t node_limit)
        : n_(n), rho_(rho), want0_(want0), want1_(want1), nodes_(nodes), limit_(node_limit),
          labels_(n, kFree), counts_(n, 0), still_equal_(n, 0), deficit_(rho * (n - 1))
    {
    }

    std::optional<Dss> run()
    {
        if (!place(0, kZero)) return std::nullopt;
        still_equal_[0] = 0;
        const bool found = extend(1);
        if (!found) unplace(0, kZero);
        if (!found) return std::nullopt;
        return Dss(n_, sets_[0], sets_[1]);
    }

private:
    std::uint64_t pairs_left() const
    {
        return std::uint64_t{want0_} * want1_ - std::uint64_t{cur(0)} * cur(1);
    }
    std::uint32_t cur(int which) const { return static_cast<std::uint32_t>(sets_[which].size()); }

    void bump(std::uint32_t d, bool up)
    {
        if (up) {
            if (counts_[d]++ < rho_) --deficit_;
        } else {
            if (--counts_[d] < rho_) ++deficit_;
        }
    }

    // Adds slot to the set for label and updates the census against the other set.
    bool place(std::uint32_t slot, Label label)
    {
        labels_[slot] = label;
        if (label == kFree) return true;
        const int which = label == kZero ? 0 : 1;
        for (auto other : sets_[1 - which]) {
            bump((slot + n_ - other) % n_, true);
            bump((other + n_ - slot) % n_, true);
        }
        sets_[which].push_back(slot);
        return true;
    }

    void unplace(std::uint32_t slot, Label label)
    {
        labels_[slot] = kFree;
        if (label == kFree) return;
        const int which = label == kZero ? 0 : 1;
        sets_[which].pop_back();
        for (auto other : sets_[1 - which]) {
            bump((slot + n_ - other) % n_, false);
            bump((other + n_ - slot) % n_, false);
        }
    }

    // Full cyclic comparison for rotations whose prefix still ties with the sequence.
    bool canonical_leaf() const
    {
        for (std::uint32_t s = 1; s < n_; ++s) {
            if (!still_equal_[s]) continue;
            for (std::uint32_t j = n_ - s; j < n_; ++j) {
                const auto rotated = labels_[(s + j) % n_];
                if (rotated < labels_[j]) return false;
                if (rotated > labels_[j]) break;
            }
        }
        return true;
    }

    bool extend(std::uint32_t slot)
    {
        if (++nodes_ > limit_) {
            throw WorkLimitExceeded("search_optimal_dss: node limit " + std::to_string(limit_) + " exceeded");
        }
        if (deficit_ > 2 * pairs_left()) return false;
        if (cur(0) == want0_ && cur(1) == want1_) {
            // Remaining slots are free; the labels already default to kFree.
            if (deficit_ != 0) return false;
            return finish_free_tail(slot);
        }
        if (slot == n_) return false;
        const auto need = (want0_ - cur(0)) + (want1_ - cur(1));
        if (need > n_ - slot) return false;

        for (Label label : {kZero, kOne, kFree}) {
            if (label == kZero && cur(0) == want0_) continue;
            if (label == kOne && cur(1) == want1_) continue;
            if (label == kFree && need == n_ - slot) continue;

            place(slot, label);
            std::vector<std::uint32_t> flipped;
            if (advance_rotations(slot, flipped) && extend(slot + 1)) return true;
            for (auto s : flipped) still_equal_[s] = 1;
            still_equal_[slot] = 0;
            unplace(slot, label);
        }
        return false;
    }

    // Updates the rotation-tie flags for a newly labelled slot. Returns false if
    // some rotation is already known to be smaller.
    bool advance_rotations(std::uint32_t slot, std::vector<std::uint32_t>& flipped)
    {
        for (std::uint32_t s = 1; s < slot; ++s) {
            if (!still_equal_[s]) continue;
            const auto rotated = labels_[slot];
            const auto original = labels_[slot - s];
            if (rotated < original) return false;
            if (rotated > original) {
                still_equal_[s] = 0;
                flipped.push_back(s);
            }
        }
        // A rotation starting here ties so far iff it starts with the same label as slot 0.
        still_equal_[slot] = labels_[slot] == kZero ? 1 : 0;
        return true;
    }

    bool finish_free_tail(std::uint32_t slot)
    {
        std::vector<std::uint32_t> flipped;
        std::uint32_t s = slot;
        bool ok = true;
        for (; s < n_; ++s) {
            labels_[s] = kFree;
            if (!advance_rotations(s, flipped)) {
                ok = false;
                break;
            }
        }
        ok = ok && canonical_leaf();
        if (ok) return true;
        for (auto f : flipped) still_equal_[f] = 1;
        for (std::uint32_t t = slot; t < n_; ++t) still_equal_[t] = 0;
        return false;
    }

    std::uint32_t n_;
    std::uint64_t rho_;
    std::uint32_t want0_;
    std::uint32_t want1_;
    std::uint64_t& nodes_;
    std::uint64_t limit_;
    std::vector<Label> labels_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint8_t> still_equal_;
    std::uint64_t deficit_;
    ResidueSet sets_[2];
};

} // namespace

SearchResult search_optimal_dss(std::uint32_t n, std::uint64_t rho, const SearchOptions& options)
{
    if (n < 2 || n > kMaxSearchOrder) {
        throw InvalidArgument("search_optimal_dss: order must lie in [2, " + std::to_string(kMaxSearchOrder) +
                              "], got " + std::to_string(n));
    }
    if (rho == 0) throw InvalidArgument("search_optimal_dss: target index must be positive");
    const std::uint64_t best_cross = std::uint64_t{n / 2} * (n - n / 2);
    if (rho * (n - 1) > 2 * best_cross) {
        throw Infeasible("search_optimal_dss: no two-set marker over Z_" + std::to_string(n) + " reaches index " +
                         std::to_string(rho) + " (at most " + std::to_string(2 * best_cross) +
                         " outer differences for " + std::to_string(n - 1) + " residues)");
    }

    const auto floor = static_cast<std::uint32_t>(std::max<std::uint64_t>(2, levenshtein_bound(n, rho)));
    const std::uint32_t start =
        options.from_redundancy == 0 ? floor : std::clamp<std::uint32_t>(options.from_redundancy, 2, floor);

    std::vector<RedundancyExclusion> excluded;
    for (std::uint32_t r = 2; r < start; ++r) {
        excluded.push_back({r, RedundancyExclusion::Method::levenshtein_bound, 0, 0, 0});
    }

    std::uint64_t nodes = 0;
    for (std::uint32_t r = start; r <= n; ++r) {
        RedundancyExclusion record{r, RedundancyExclusion::Method::exhaustive, 0, 0, 0};
        const auto before = nodes;
        for (std::uint32_t a = 1; 2 * a <= r; ++a) {
            const auto b = r - a;
            ++record.splits;
            if (2 * std::uint64_t{a} * b < rho * (n - 1)) {
                ++record.splits_counting_pruned;
                continue;
            }
            SplitSearch split(n, rho, a, b, nodes, options.node_limit);
            if (auto found = split.run()) {
                return SearchResult{std::move(*found), r, std::move(excluded), nodes};
            }
        }
        record.nodes = nodes - before;
        excluded.push_back(record);
    }
    throw Infeasible("search_optimal_dss: no marker of index " + std::to_string(rho) + " over Z_" +
                     std::to_string(n));
}

} // namespace ppmsync
