#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppmsync/ooc.hpp"

namespace ppmsync {

enum class Scheme { ppm, mppm, eppm, aeppm, geppm };

std::string_view scheme_name(Scheme s) noexcept;
/// Case-insensitive; throws InvalidArgument for an unknown tag.
Scheme parse_scheme(std::string_view tag);

/// One small M-ary modulation scheme with its literal defining sets.
struct CatalogEntry {
    std::string id;
    Scheme scheme;
    std::uint32_t m;
    std::uint32_t q;
    std::uint32_t k;
    /// Minimum distance as listed for the scheme.
    std::uint32_t listed_distance;
    /// Defining OOC for PPM, EPPM and GEPPM rows.
    std::optional<OpticalOrthogonalCode> ooc;
    /// Every available word in deterministic order; symbols use the first m.
    std::vector<Support> words;
    std::string note;

    /// The first m words as a constant-weight book; empty for mixed-weight schemes.
    std::optional<Codebook> book() const;
    /// Exact minimum pairwise distance over the first m words.
    std::uint32_t measured_distance() const;
};

const std::vector<CatalogEntry>& catalog();

/// Finds the unique row matching M and scheme, narrowed by Q and K when given.
/// Throws NotFound listing the candidate ids when zero or several rows match.
const CatalogEntry& catalog_lookup(std::uint32_t m, Scheme scheme, std::optional<std::uint32_t> q = std::nullopt,
                                   std::optional<std::uint32_t> k = std::nullopt);
const CatalogEntry& catalog_lookup(std::string_view id);

/// Comma-separated list of every catalog id.
std::string catalog_ids();

} // namespace ppmsync
