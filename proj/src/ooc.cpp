#include "ppmsync/ooc.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ppmsync/error.hpp"

namespace ppmsync {

namespace {

std::string describe(const Support& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

// Periodic correlation profile: profile[i] = #{(a, b) : a in x, b in y, b - a = i (mod v)}.
std::vector<std::uint32_t> correlation_profile(const Support& x, const Support& y, std::uint32_t v)
{
    std::vector<std::uint32_t> profile(v, 0);
    for (auto a : x) {
        for (auto b : y) ++profile[(b + v - a) % v];
    }
    return profile;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::uint32_t hamming_distance(const Support& a, const Support& b)
{
    std::size_t i = 0, j = 0, common = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++common;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return static_cast<std::uint32_t>(a.size() + b.size() - 2 * common);
}

Support cyclic_shift(const Support& word, std::uint32_t shift, std::uint32_t length)
{
    Support out;
    out.reserve(word.size());
    for (auto x : word) out.push_back(static_cast<Residue>((x + shift) % length));
    std::sort(out.begin(), out.end());
    return out;
}

Correlations max_correlations(std::uint32_t v, std::span<const Support> codewords)
{
    for (const auto& c : codewords) {
        for (auto x : c) {
            if (x >= v) throw InvalidArgument("max_correlations: element " + std::to_string(x) + " outside Z_" +
                                              std::to_string(v));
        }
    }
    Correlations out;
    for (std::size_t i = 0; i < codewords.size(); ++i) {
        const auto self = correlation_profile(codewords[i], codewords[i], v);
        for (std::uint32_t s = 1; s < v; ++s) out.max_auto = std::max(out.max_auto, self[s]);
        for (std::size_t j = i + 1; j < codewords.size(); ++j) {
            const auto cross = correlation_profile(codewords[i], codewords[j], v);
            out.max_cross = std::max(out.max_cross, *std::max_element(cross.begin(), cross.end()));
        }
    }
    return out;
}

OpticalOrthogonalCode::OpticalOrthogonalCode(std::uint32_t v, std::uint32_t k, std::uint32_t lambda,
                                             std::vector<Support> codewords)
    : v_(v), k_(k), lambda_(lambda), codewords_(std::move(codewords))
{
    if (codewords_.empty()) throw ValidationFailure("OOC: at least one codeword is required");
    if (k_ <= lambda_) throw ValidationFailure("OOC: weight must exceed the index");
    if (k_ > v_) throw ValidationFailure("OOC: weight exceeds length");
    for (auto& c : codewords_) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
            throw ValidationFailure("OOC: codeword " + describe(c) + " repeats an element");
        }
        if (c.size() != k_) {
            throw ValidationFailure("OOC: codeword " + describe(c) + " does not have weight " + std::to_string(k_));
        }
        if (c.back() >= v_) {
            throw ValidationFailure("OOC: codeword " + describe(c) + " leaves Z_" + std::to_string(v_));
        }
    }
    const auto corr = max_correlations(v_, codewords_);
    if (corr.max_auto > lambda_) {
        throw ValidationFailure("OOC: off-peak autocorrelation " + std::to_string(corr.max_auto) +
                                " exceeds lambda = " + std::to_string(lambda_));
    }
    if (corr.max_cross > lambda_) {
        throw ValidationFailure("OOC: cross-correlation " + std::to_string(corr.max_cross) +
                                " exceeds lambda = " + std::to_string(lambda_));
    }
}

std::uint64_t johnson_bound(std::uint64_t v, std::uint64_t k, std::uint64_t lambda)
{
    if (k == 0 || k <= lambda) throw InvalidArgument("johnson_bound: requires k > lambda >= 0");
    if (v <= k) throw InvalidArgument("johnson_bound: requires v > k");
    // Innermost factor first: floor((v-lambda)/(k-lambda)), then outward to (v-1)/(k-1), then 1/k.
    std::uint64_t bound = 1;
    for (auto j = lambda; j >= 1; --j) bound = (v - j) * bound / (k - j);
    return bound / k;
}

bool is_optimal(const OpticalOrthogonalCode& code)
{
    if (code.v() <= code.k()) return false;
    return code.size() == johnson_bound(code.v(), code.k(), code.lambda());
}

Codebook::Codebook(std::uint32_t length, std::vector<Support> words) : length_(length), words_(std::move(words))
{
    if (words_.empty()) throw ValidationFailure("Codebook: at least one word is required");
    weight_ = static_cast<std::uint32_t>(words_.front().size());
    std::set<Support> seen;
    for (auto& w : words_) {
        std::sort(w.begin(), w.end());
        if (std::adjacent_find(w.begin(), w.end()) != w.end()) {
            throw ValidationFailure("Codebook: word " + describe(w) + " repeats a slot");
        }
        if (w.size() != weight_) {
            throw ValidationFailure("Codebook: word " + describe(w) + " breaks constant weight " +
                                    std::to_string(weight_));
        }
        if (!w.empty() && w.back() >= length_) {
            throw ValidationFailure("Codebook: word " + describe(w) + " exceeds length " + std::to_string(length_));
        }
        if (!seen.insert(w).second) throw ValidationFailure("Codebook: duplicate word " + describe(w));
    }
    if (words_.size() >= 2) {
        std::uint32_t best = 2 * weight_;
        for (std::size_t i = 0; i < words_.size() && best > 2; ++i) {
            for (std::size_t j = i + 1; j < words_.size(); ++j) best = std::min(best, hamming_distance(words_[i], words_[j]));
        }
        min_distance_ = best;
    }
}

Codebook Codebook::first(std::size_t m) const
{
    if (m == 0 || m > words_.size()) {
        throw InvalidArgument("Codebook::first: cannot take " + std::to_string(m) + " of " +
                              std::to_string(words_.size()) + " words");
    }
    return Codebook(length_, std::vector<Support>(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(m)));
}

std::vector<std::uint8_t> Codebook::bits(std::size_t i) const
{
    std::vector<std::uint8_t> out(length_, 0);
    for (auto x : words_.at(i)) out[x] = 1;
    return out;
}

bool Codebook::cyclically_closed() const
{
    const std::set<Support> all(words_.begin(), words_.end());
    return std::all_of(words_.begin(), words_.end(), [&](const Support& w) {
        for (std::uint32_t s = 1; s < length_; ++s) {
            if (!all.contains(cyclic_shift(w, s, length_))) return false;
        }
        return true;
    });
}

Codebook expand_orbits(const OpticalOrthogonalCode& code)
{
    std::vector<Support> words;
    words.reserve(code.size() * code.v());
    for (const auto& c : code.codewords()) {
        for (std::uint32_t s = 0; s < code.v(); ++s) words.push_back(cyclic_shift(c, s, code.v()));
    }
    // Codebook rejects duplicates, which can only arise if k <= lambda slipped through.
    return Codebook(code.v(), std::move(words));
}

std::uint32_t min_distance(const Codebook& book)
{
    const auto d = book.cached_min_distance();
    if (!d) throw InvalidArgument("min_distance: undefined for a single-word codebook");
    return *d;
}

Rational eppm_min_distance(std::uint32_t q, std::uint32_t k)
{
    if (k == 0 || q <= k) throw InvalidArgument("eppm_min_distance: requires Q > K >= 1");
    return Rational(2 * std::int64_t{k} * (q - k), q - 1);
}

std::optional<std::uint32_t> is_difference_set(std::span<const Residue> block, std::uint32_t v)
{
    if (v < 2 || block.empty()) return std::nullopt;
    std::vector<std::uint32_t> counts(v, 0);
    for (auto a : block) {
        for (auto b : block) {
            if (a != b) ++counts[(a + v - b) % v];
        }
    }
    const auto mu = counts[1];
    if (std::any_of(counts.begin() + 1, counts.end(), [mu](auto c) { return c != mu; })) return std::nullopt;
    return mu;
}

Codebook ppm_codebook(std::uint32_t q)
{
    if (q < 1) throw InvalidArgument("ppm_codebook: Q must be positive");
    std::vector<Support> words;
    for (Residue i = 0; i < q; ++i) words.push_back({i});
    return Codebook(q, std::move(words));
}

Codebook mppm_codebook(std::uint32_t q, std::uint32_t k)
{
    if (k == 0 || k > q) throw InvalidArgument("mppm_codebook: requires 1 <= K <= Q");
    if (binomial(q, k) > 5'000'000) throw InvalidArgument("mppm_codebook: too many words");
    std::vector<Support> words;
    Support current(k);
    for (std::uint32_t i = 0; i < k; ++i) current[i] = i;
    while (true) {
        words.push_back(current);
        // Next k-combination in lexicographic order.
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && current[i] == q - k + static_cast<std::uint32_t>(i)) --i;
        if (i < 0) break;
        ++current[i];
        for (auto j = static_cast<std::uint32_t>(i) + 1; j < k; ++j) current[j] = current[j - 1] + 1;
    }
    return Codebook(q, std::move(words));
}

} // namespace ppmsync
