#pragma once

#include <cstdint>
#include <vector>

#include "ppmsync/dss.hpp"

namespace ppmsync {

/// Largest order accepted by search_optimal_dss.
inline constexpr std::uint32_t kMaxSearchOrder = 40;

struct SearchOptions {
    /// First redundancy to enumerate. 0 means start at the Levenshtein floor and
    /// record the smaller redundancies as excluded by that bound. Values above
    /// the floor are clamped to it.
    std::uint32_t from_redundancy = 0;
    /// Abort with WorkLimitExceeded after this many search nodes.
    std::uint64_t node_limit = 4'000'000'000ULL;
};

/// How one redundancy value was ruled out.
struct RedundancyExclusion {
    enum class Method { levenshtein_bound, exhaustive };
    std::uint32_t redundancy = 0;
    Method method = Method::exhaustive;
    /// Size splits (|D0|, |D1|), |D0| <= |D1|, examined for this redundancy.
    std::uint32_t splits = 0;
    /// Splits discarded at the root because 2|D0||D1| < rho (n - 1).
    std::uint32_t splits_counting_pruned = 0;
    std::uint64_t nodes = 0;
};

struct SearchResult {
    Dss dss;
    std::uint32_t redundancy = 0;
    /// One entry per redundancy below the result, in increasing order.
    std::vector<RedundancyExclusion> excluded;
    /// Search nodes over all redundancies, including the successful one.
    std::uint64_t nodes = 0;
};

/// Minimum-redundancy two-set marker of index >= rho over Z_n, by exhaustive
/// backtracking with translation and swap symmetry removed. The returned
/// marker is the first canonical solution in enumeration order, so results
/// are deterministic.
SearchResult search_optimal_dss(std::uint32_t n, std::uint64_t rho, const SearchOptions& options = {});

} // namespace ppmsync
