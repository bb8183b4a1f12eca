#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppmsync/dss.hpp"
#include "ppmsync/ooc.hpp"

namespace ppmsync {

/// A binary word of fixed length as one byte per slot.
using Bits = std::vector<std::uint8_t>;

/// Last i bits of x followed by the first n - i bits of y; 1 <= i <= n - 1.
Bits splice(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, std::uint32_t i);

/// The (x, y, i, z) attaining a comma-free minimum.
struct SpliceWitness {
    std::size_t x = 0;
    std::size_t y = 0;
    std::uint32_t offset = 0;
    std::size_t z = 0;
    std::uint32_t distance = 0;
};

struct CommaFreeOptions {
    /// Cap on x-y-i-z comparisons; 0 reads PPMSYNC_WORKLIMIT, else a built-in default.
    std::uint64_t work_limit = 0;
    /// Restrict distances to these coordinates as well (empty: not computed).
    std::vector<std::uint32_t> restricted_coordinates;
};

struct CommaFreeResult {
    /// False when the work limit stopped the enumeration before it started.
    bool certified = false;
    /// Required comparisons, |W|^3 (n - 1).
    std::uint64_t work = 0;
    /// Exact comma-free index with its witness, when certified.
    std::optional<std::uint32_t> index;
    std::optional<SpliceWitness> witness;
    /// The same minimum over the restricted coordinates only.
    std::optional<std::uint32_t> restricted_index;
    std::optional<SpliceWitness> restricted_witness;
};

/// Default work cap when neither the caller nor PPMSYNC_WORKLIMIT sets one.
inline constexpr std::uint64_t kDefaultWorkLimit = 4'000'000'000ULL;

/// Minimum Hamming distance between any splice of two words and any word,
/// by exhaustive enumeration. All words must share one length n >= 2.
CommaFreeResult comma_free_index(std::span<const Bits> words, const CommaFreeOptions& options = {});

/// Marker layout merged with a payload book: 0s on D0, 1s on D1, payload
/// bits on the free coordinates in ascending order.
class SelfSyncCode {
public:
    SelfSyncCode(Dss marker, Codebook payload);

    std::uint32_t n() const noexcept { return marker_.n(); }
    const Dss& marker() const noexcept { return marker_; }
    const Codebook& payload() const noexcept { return payload_; }
    const std::vector<std::uint32_t>& free_positions() const noexcept { return free_; }
    const std::vector<Bits>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    std::uint32_t weight() const noexcept
    {
        return payload_.weight() + static_cast<std::uint32_t>(marker_.d1().size());
    }
    /// Sorted D0 and D1 coordinates.
    std::vector<std::uint32_t> marker_coordinates() const;

    /// Runs the exhaustive check (full and marker-restricted) and stores it.
    const CommaFreeResult& certify(std::uint64_t work_limit = 0);
    const std::optional<CommaFreeResult>& certificate() const noexcept { return certificate_; }
    /// Certified comma-free index; empty until certify() succeeds.
    std::optional<std::uint32_t> certified_index() const;

private:
    Dss marker_;
    Codebook payload_;
    std::vector<std::uint32_t> free_;
    std::vector<Bits> words_;
    std::optional<CommaFreeResult> certificate_;
};

/// Throws InvalidArgument with the expected free capacity on a length mismatch.
SelfSyncCode combine(const Dss& marker, const Codebook& payload);

/// floor((index - 1) / 2) bit flips; throws InvalidArgument if uncertified.
std::uint32_t hard_sync_tolerance(const SelfSyncCode& code);
std::uint32_t hard_sync_tolerance(std::uint32_t certified_index);

/// One outer marker over Z_{n'} whose free slots carry f inner intervals.
class FrameLayout {
public:
    /// Throws InvalidArgument unless n' - |D0'| - |D1'| = f * n.
    FrameLayout(Dss outer, std::uint32_t inner_length, std::uint32_t f);

    const Dss& outer() const noexcept { return outer_; }
    std::uint32_t inner_length() const noexcept { return inner_; }
    std::uint32_t symbols_per_frame() const noexcept { return f_; }
    std::uint32_t frame_length() const noexcept { return outer_.n(); }
    /// Frame slots for inner interval j, in order.
    std::span<const std::uint32_t> interval_slots(std::uint32_t j) const;

private:
    Dss outer_;
    std::uint32_t inner_;
    std::uint32_t f_;
    std::vector<std::uint32_t> free_;
};

FrameLayout build_frame_layout(const Dss& outer, const SelfSyncCode& inner, std::uint32_t f);

} // namespace ppmsync
