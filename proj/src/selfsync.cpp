#include "ppmsync/selfsync.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <string>

#include "ppmsync/error.hpp"
#include "ppmsync/parallel.hpp"

namespace ppmsync {

namespace {

using Blocks = std::vector<std::uint64_t>;

Blocks pack(std::span<const std::uint8_t> bits)
{
    Blocks out((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return out;
}

std::uint32_t distance(const Blocks& a, const Blocks& b, const Blocks* mask)
{
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto x = a[i] ^ b[i];
        if (mask) x &= (*mask)[i];
        d += static_cast<std::uint32_t>(std::popcount(x));
    }
    return d;
}

std::uint64_t env_work_limit()
{
    if (const char* env = std::getenv("PPMSYNC_WORKLIMIT")) {
        try {
            const auto v = std::stoull(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return kDefaultWorkLimit;
}

struct Best {
    std::uint32_t full = std::numeric_limits<std::uint32_t>::max();
    SpliceWitness full_witness;
    std::uint32_t restricted = std::numeric_limits<std::uint32_t>::max();
    SpliceWitness restricted_witness;
};

} // namespace

Bits splice(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y, std::uint32_t i)
{
    if (x.size() != y.size()) throw InvalidArgument("splice: words differ in length");
    const auto n = static_cast<std::uint32_t>(x.size());
    if (i < 1 || i >= n) {
        throw InvalidArgument("splice: offset " + std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    Bits out;
    out.reserve(n);
    out.insert(out.end(), x.end() - i, x.end());
    out.insert(out.end(), y.begin(), y.end() - i);
    return out;
}

CommaFreeResult comma_free_index(std::span<const Bits> words, const CommaFreeOptions& options)
{
    if (words.empty()) throw InvalidArgument("comma_free_index: no words");
    const auto n = static_cast<std::uint32_t>(words.front().size());
    if (n < 2) throw InvalidArgument("comma_free_index: words must have length at least 2");
    for (const auto& w : words) {
        if (w.size() != n) throw InvalidArgument("comma_free_index: words differ in length");
    }
    for (auto c : options.restricted_coordinates) {
        if (c >= n) throw InvalidArgument("comma_free_index: restricted coordinate out of range");
    }

    const auto m = static_cast<std::uint64_t>(words.size());
    CommaFreeResult result;
    result.work = m * m * m * (n - 1);
    const auto limit = options.work_limit ? options.work_limit : env_work_limit();
    if (m > 2'000'000 || result.work > limit) return result;

    std::vector<Blocks> packed;
    packed.reserve(words.size());
    for (const auto& w : words) packed.push_back(pack(w));
    const bool restricted = !options.restricted_coordinates.empty();
    Blocks mask(packed.front().size(), 0);
    for (auto c : options.restricted_coordinates) mask[c / 64] |= std::uint64_t{1} << (c % 64);

    const std::size_t chunks = std::min<std::size_t>(worker_count(), words.size());
    std::vector<Best> partial(chunks);
    parallel_chunks(words.size(), chunks, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        Best best;
        Blocks sp(packed.front().size());
        for (std::size_t x = begin; x < end; ++x) {
            for (std::size_t y = 0; y < words.size(); ++y) {
                for (std::uint32_t i = 1; i < n; ++i) {
                    std::fill(sp.begin(), sp.end(), 0);
                    for (std::uint32_t j = 0; j < n; ++j) {
                        const auto bit = j < i ? words[x][n - i + j] : words[y][j - i];
                        if (bit) sp[j / 64] |= std::uint64_t{1} << (j % 64);
                    }
                    for (std::size_t z = 0; z < words.size(); ++z) {
                        const auto d = distance(sp, packed[z], nullptr);
                        if (d < best.full) {
                            best.full = d;
                            best.full_witness = {x, y, i, z, d};
                        }
                        if (restricted) {
                            const auto r = distance(sp, packed[z], &mask);
                            if (r < best.restricted) {
                                best.restricted = r;
                                best.restricted_witness = {x, y, i, z, r};
                            }
                        }
                        if (best.full == 0) {
                            partial[chunk] = best;
                            return;
                        }
                    }
                }
            }
        }
        partial[chunk] = best;
    });

    Best overall;
    for (const auto& p : partial) {
        if (p.full < overall.full) {
            overall.full = p.full;
            overall.full_witness = p.full_witness;
        }
        if (p.restricted < overall.restricted) {
            overall.restricted = p.restricted;
            overall.restricted_witness = p.restricted_witness;
        }
    }
    result.certified = true;
    result.index = overall.full;
    result.witness = overall.full_witness;
    if (restricted) {
        result.restricted_index = overall.restricted;
        result.restricted_witness = overall.restricted_witness;
    }
    return result;
}

SelfSyncCode::SelfSyncCode(Dss marker, Codebook payload) : marker_(std::move(marker)), payload_(std::move(payload))
{
    if (payload_.length() != marker_.free_capacity()) {
        throw InvalidArgument("combine: payload length " + std::to_string(payload_.length()) +
                              " does not match the marker's free capacity " +
                              std::to_string(marker_.free_capacity()));
    }
    std::vector<std::uint8_t> role(marker_.n(), 2);
    for (auto a : marker_.d0()) role[a] = 0;
    for (auto a : marker_.d1()) role[a] = 1;
    for (std::uint32_t c = 0; c < marker_.n(); ++c) {
        if (role[c] == 2) free_.push_back(c);
    }
    words_.reserve(payload_.size());
    for (std::size_t w = 0; w < payload_.size(); ++w) {
        Bits word(marker_.n(), 0);
        for (auto a : marker_.d1()) word[a] = 1;
        for (auto slot : payload_.word(w)) word[free_[slot]] = 1;
        words_.push_back(std::move(word));
    }
}

std::vector<std::uint32_t> SelfSyncCode::marker_coordinates() const
{
    std::vector<std::uint32_t> out(marker_.d0().begin(), marker_.d0().end());
    out.insert(out.end(), marker_.d1().begin(), marker_.d1().end());
    std::sort(out.begin(), out.end());
    return out;
}

const CommaFreeResult& SelfSyncCode::certify(std::uint64_t work_limit)
{
    CommaFreeOptions options;
    options.work_limit = work_limit;
    options.restricted_coordinates = marker_coordinates();
    certificate_ = comma_free_index(words_, options);
    return *certificate_;
}

std::optional<std::uint32_t> SelfSyncCode::certified_index() const
{
    if (!certificate_ || !certificate_->certified) return std::nullopt;
    return certificate_->index;
}

SelfSyncCode combine(const Dss& marker, const Codebook& payload) { return SelfSyncCode(marker, payload); }

std::uint32_t hard_sync_tolerance(std::uint32_t certified_index)
{
    return certified_index == 0 ? 0 : (certified_index - 1) / 2;
}

std::uint32_t hard_sync_tolerance(const SelfSyncCode& code)
{
    const auto index = code.certified_index();
    if (!index) throw InvalidArgument("hard_sync_tolerance: code has no certified comma-free index");
    return hard_sync_tolerance(*index);
}

FrameLayout::FrameLayout(Dss outer, std::uint32_t inner_length, std::uint32_t f)
    : outer_(std::move(outer)), inner_(inner_length), f_(f)
{
    if (f_ == 0) throw InvalidArgument("frame layout: at least one symbol per frame is required");
    if (inner_ == 0) throw InvalidArgument("frame layout: inner interval length must be positive");
    const auto need = std::uint64_t{f_} * inner_;
    if (outer_.free_capacity() != need) {
        throw InvalidArgument("frame layout: outer free capacity " + std::to_string(outer_.free_capacity()) +
                              " differs from f * n = " + std::to_string(need) + "; an outer order n' with n' - " +
                              std::to_string(outer_.redundancy()) + " = " + std::to_string(need) +
                              " is required, i.e. n' = " + std::to_string(need + outer_.redundancy()));
    }
    std::vector<std::uint8_t> used(outer_.n(), 0);
    for (auto a : outer_.d0()) used[a] = 1;
    for (auto a : outer_.d1()) used[a] = 1;
    for (std::uint32_t c = 0; c < outer_.n(); ++c) {
        if (!used[c]) free_.push_back(c);
    }
}

std::span<const std::uint32_t> FrameLayout::interval_slots(std::uint32_t j) const
{
    if (j >= f_) throw InvalidArgument("frame layout: interval " + std::to_string(j) + " out of range");
    return std::span<const std::uint32_t>(free_).subspan(std::size_t{j} * inner_, inner_);
}

FrameLayout build_frame_layout(const Dss& outer, const SelfSyncCode& inner, std::uint32_t f)
{
    return FrameLayout(outer, inner.n(), f);
}

} // namespace ppmsync
