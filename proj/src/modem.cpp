#include "ppmsync/modem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ppmsync/error.hpp"
#include "ppmsync/parallel.hpp"
#include "ppmsync/rng.hpp"

namespace ppmsync {

namespace {

void require_gamma(double gamma)
{
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("signal-to-noise ratio must be positive");
}

// Pairwise error probability at Hamming distance d for a book of m words of length q.
double pairwise_error(double d, double gamma, double q, double m)
{
    return 0.5 * std::erfc(std::sqrt(d * gamma * std::log2(m) / (2.0 * q)));
}

template <class Score>
std::uint32_t best_offset(std::span<const double> stream, const Dss& marker, Score score)
{
    const auto n = marker.n();
    const auto intervals = scored_intervals(stream.size(), n);
    std::uint32_t best = 0;
    double best_score = 0.0;
    for (std::uint32_t o = 0; o < n; ++o) {
        double total = 0.0;
        for (std::size_t j = 0; j < intervals; ++j) {
            const auto base = o + j * n;
            for (auto a : marker.d0()) total += score(stream[base + a], false);
            for (auto a : marker.d1()) total += score(stream[base + a], true);
        }
        if (o == 0 || total > best_score) {
            best = o;
            best_score = total;
        }
    }
    return best;
}

} // namespace

SlotStream encode(std::span<const std::size_t> symbols, const SelfSyncCode& code)
{
    SlotStream out;
    out.slots.reserve(symbols.size() * code.n());
    for (auto s : symbols) {
        if (s >= code.size()) {
            throw InvalidArgument("encode: symbol " + std::to_string(s) + " outside alphabet of " +
                                  std::to_string(code.size()));
        }
        for (auto b : code.words()[s]) out.slots.push_back(b);
    }
    return out;
}

SlotStream misalign(SlotStream stream, std::uint32_t n, std::uint32_t offset)
{
    if (offset >= n) throw InvalidArgument("misalign: offset must be below the interval length");
    const auto drop = std::min<std::size_t>((n - offset) % n, stream.slots.size());
    stream.slots.erase(stream.slots.begin(), stream.slots.begin() + static_cast<std::ptrdiff_t>(drop));
    stream.true_offset = offset;
    return stream;
}

double noise_sigma(double gamma, std::uint32_t q, std::uint64_t m)
{
    require_gamma(gamma);
    if (q == 0 || m < 2) throw InvalidArgument("noise_sigma: needs Q >= 1 and M >= 2");
    return std::sqrt(static_cast<double>(q) / (4.0 * gamma * std::log2(static_cast<double>(m))));
}

SlotStream awgn(SlotStream stream, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0)) throw InvalidArgument("awgn: deviation must be non-negative");
    SplitMix64 rng(seed);
    for (auto& s : stream.slots) s += sigma * rng.gaussian();
    return stream;
}

std::size_t scored_intervals(std::size_t stream_length, std::uint32_t n)
{
    if (stream_length + 1 < n) return 0;
    return (stream_length + 1 - n) / n;
}

std::uint32_t hard_sync(std::span<const double> stream, const Dss& marker)
{
    // Negated mismatch count, so larger is better as in soft_sync.
    return best_offset(stream, marker, [](double v, bool one) { return (v > 0.5) == one ? 0.0 : -1.0; });
}

std::uint32_t soft_sync(std::span<const double> stream, const Dss& marker)
{
    return best_offset(stream, marker, [](double v, bool one) { return one ? v : -v; });
}

std::size_t demodulate(std::span<const double> interval, const Codebook& book)
{
    if (interval.size() != book.length()) throw InvalidArgument("demodulate: interval length differs from Q");
    std::size_t best = 0;
    double best_score = 0.0;
    for (std::size_t w = 0; w < book.size(); ++w) {
        double s = 0.0;
        for (auto slot : book.word(w)) s += interval[slot];
        if (w == 0 || s > best_score) {
            best = w;
            best_score = s;
        }
    }
    return best;
}

NeighborShells neighbor_census(const Codebook& book)
{
    const auto k = book.weight();
    if (k == 0) throw InvalidArgument("neighbor_census: empty words");
    const auto near_d = 2 * (k - 1);
    const auto far_d = 2 * k;
    NeighborShells out;
    out.near.assign(book.size(), 0);
    out.far.assign(book.size(), 0);
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            if (i == j) continue;
            const auto d = hamming_distance(book.word(i), book.word(j));
            if (d == near_d) {
                ++out.near[i];
            } else if (d == far_d) {
                ++out.far[i];
            } else {
                throw ValidationFailure("neighbor_census: words " + std::to_string(i) + " and " + std::to_string(j) +
                                        " are at distance " + std::to_string(d) + ", outside the shells " +
                                        std::to_string(near_d) + " and " + std::to_string(far_d));
            }
        }
    }
    out.uniform = std::all_of(out.near.begin(), out.near.end(), [&](auto c) { return c == out.near.front(); }) &&
                  std::all_of(out.far.begin(), out.far.end(), [&](auto c) { return c == out.far.front(); });
    return out;
}

std::int64_t near_neighbors(std::int64_t, std::int64_t k, std::int64_t code_size) { return k * k * code_size - k; }

std::int64_t far_neighbors(std::int64_t v, std::int64_t k, std::int64_t code_size)
{
    return (v - k * k) * code_size + k - 1;
}

double ser_union_bound(std::uint32_t v, std::uint32_t k, std::uint32_t code_size, double gamma)
{
    require_gamma(gamma);
    if (k == 0 || code_size == 0 || v < k) throw InvalidArgument("ser_union_bound: needs v >= k >= 1 and |C| >= 1");
    const double m = static_cast<double>(v) * code_size;
    if (m < 2) throw InvalidArgument("ser_union_bound: needs at least two symbols");
    const double nd = static_cast<double>(near_neighbors(v, k, code_size));
    const double fd = static_cast<double>(far_neighbors(v, k, code_size));
    const double q = v;
    const double p = nd * pairwise_error(2.0 * (k - 1), gamma, q, m) + fd * pairwise_error(2.0 * k, gamma, q, m);
    return std::clamp(p, 0.0, 1.0);
}

double ser_union_bound(const Codebook& book, double gamma)
{
    require_gamma(gamma);
    if (book.size() < 2) throw InvalidArgument("ser_union_bound: needs at least two symbols");
    std::map<std::uint32_t, std::uint64_t> spectrum;
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (std::size_t j = 0; j < book.size(); ++j) {
            if (i != j) ++spectrum[hamming_distance(book.word(i), book.word(j))];
        }
    }
    const double m = static_cast<double>(book.size());
    double p = 0.0;
    for (auto [d, count] : spectrum) p += static_cast<double>(count) * pairwise_error(d, gamma, book.length(), m);
    return std::clamp(p / m, 0.0, 1.0);
}

Interval95 wilson_interval(std::uint64_t successes, std::uint64_t trials)
{
    if (trials == 0) throw InvalidArgument("wilson_interval: no trials");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

SimReport monte_carlo(const Codebook& book, const ChannelSpec& spec, const SelfSyncCode* code)
{
    if (spec.trials == 0) throw InvalidArgument("monte_carlo: trials must be at least 1");
    require_gamma(spec.gamma);
    const double sigma = noise_sigma(spec.gamma, book.length(), book.size());

    const std::size_t chunks = std::min<std::uint64_t>(worker_count(), spec.trials);
    std::vector<std::uint64_t> symbol_errors(chunks, 0);
    std::vector<std::uint64_t> sync_errors(chunks, 0);
    parallel_chunks(spec.trials, chunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        std::vector<double> rx(book.length());
        for (std::size_t t = begin; t < end; ++t) {
            auto rng = SplitMix64::for_trial(spec.seed, t);
            const auto sent = static_cast<std::size_t>(rng.below(book.size()));
            std::fill(rx.begin(), rx.end(), 0.0);
            for (auto slot : book.word(sent)) rx[slot] = 1.0;
            for (auto& r : rx) r += sigma * rng.gaussian();
            if (demodulate(rx, book) != sent) ++symbol_errors[chunk];

            if (code) {
                const std::size_t symbols[3] = {static_cast<std::size_t>(rng.below(code->size())),
                                                static_cast<std::size_t>(rng.below(code->size())),
                                                static_cast<std::size_t>(rng.below(code->size()))};
                const auto offset = static_cast<std::uint32_t>(rng.below(code->n()));
                auto stream = misalign(encode(symbols, *code), code->n(), offset);
                for (auto& s : stream.slots) s += sigma * rng.gaussian();
                if (soft_sync(stream.slots, code->marker()) != offset) ++sync_errors[chunk];
            }
        }
    });

    SimReport r;
    r.gamma = spec.gamma;
    r.seed = spec.seed;
    r.trials = spec.trials;
    for (auto e : symbol_errors) r.symbol_errors += e;
    r.ser_mc = static_cast<double>(r.symbol_errors) / static_cast<double>(spec.trials);
    r.ser_ci = wilson_interval(r.symbol_errors, spec.trials);
    r.ser_bound = ser_union_bound(book, spec.gamma);
    if (code) {
        std::uint64_t s = 0;
        for (auto e : sync_errors) s += e;
        r.sync_errors = s;
        r.sync_err_mc = static_cast<double>(s) / static_cast<double>(spec.trials);
    }
    r.rng = kRngName;
    return r;
}

} // namespace ppmsync
