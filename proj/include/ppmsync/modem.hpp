#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppmsync/ooc.hpp"
#include "ppmsync/selfsync.hpp"

namespace ppmsync {

/// Slot amplitudes; clean streams hold 0 and 1. A stream may start inside an
/// interval: the first complete interval begins at true_offset.
struct SlotStream {
    std::vector<double> slots;
    std::uint32_t true_offset = 0;
};

/// Concatenated words for the symbol indices; throws InvalidArgument on a bad index.
SlotStream encode(std::span<const std::size_t> symbols, const SelfSyncCode& code);

/// Drops the first (n - offset) mod n slots so the first complete interval
/// starts at offset; throws InvalidArgument if offset >= n.
SlotStream misalign(SlotStream stream, std::uint32_t n, std::uint32_t offset);

/// Per-slot noise deviation for unit pulses such that the pairwise error
/// probability at distance D is erfc(sqrt(D gamma log2(M) / (2 Q))) / 2.
double noise_sigma(double gamma, std::uint32_t q, std::uint64_t m);

/// Adds i.i.d. N(0, sigma^2) noise from the stream seeded by seed.
SlotStream awgn(SlotStream stream, double sigma, std::uint64_t seed);

/// Number of complete intervals scored at every candidate offset.
std::size_t scored_intervals(std::size_t stream_length, std::uint32_t n);

/// Offset in [0, n) minimizing hard-decision marker mismatches (slot > 1/2 is
/// a 1), summed over scored_intervals() intervals. Ties go to the smaller offset.
std::uint32_t hard_sync(std::span<const double> stream, const Dss& marker);
/// Offset maximizing the sum over D1 minus the sum over D0. Ties go to the smaller offset.
std::uint32_t soft_sync(std::span<const double> stream, const Dss& marker);

/// Index of the word with the largest correlation; ties go to the smaller index.
std::size_t demodulate(std::span<const double> interval, const Codebook& book);

struct NeighborShells {
    /// Words at distance 2(k - 1) and 2k from each word, by word index.
    std::vector<std::uint64_t> near;
    std::vector<std::uint64_t> far;
    /// Every word has the same shell counts.
    bool uniform = false;
};

/// Distance census of a book expanded from an index-one OOC. Throws
/// ValidationFailure naming the pair if a third distance occurs.
NeighborShells neighbor_census(const Codebook& book);

/// Closed-form shell counts k^2 |C| - k and (v - k^2)|C| + k - 1.
std::int64_t near_neighbors(std::int64_t v, std::int64_t k, std::int64_t code_size);
std::int64_t far_neighbors(std::int64_t v, std::int64_t k, std::int64_t code_size);

/// Two-shell union bound on symbol error for an index-one OOC book with
/// M = v |C| symbols, log base 2, clamped to [0, 1]. Plain PPM is v = Q, k = 1, |C| = 1.
double ser_union_bound(std::uint32_t v, std::uint32_t k, std::uint32_t code_size, double gamma);

/// Union bound from the book's full distance spectrum, averaged over words.
double ser_union_bound(const Codebook& book, double gamma);

struct ChannelSpec {
    double gamma = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1;
};

struct Interval95 {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval at 95% confidence.
Interval95 wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct SimReport {
    double gamma = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    double ser_mc = 0.0;
    Interval95 ser_ci;
    double ser_bound = 0.0;
    /// Present when a marker was simulated.
    std::optional<std::uint64_t> sync_errors;
    std::optional<double> sync_err_mc;
    const char* rng = nullptr;
};

/// Uniform symbols through AWGN with correlation decoding. With a code, each
/// trial also sends three words at a random misalignment and soft-syncs them.
SimReport monte_carlo(const Codebook& book, const ChannelSpec& spec, const SelfSyncCode* code = nullptr);

} // namespace ppmsync
