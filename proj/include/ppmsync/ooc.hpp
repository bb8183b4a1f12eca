#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ppmsync/rational.hpp"
#include "ppmsync/types.hpp"

namespace ppmsync {

/// Support of a binary word: the sorted slot indices carrying a pulse.
using Support = ResidueSet;

/// Hamming distance between two words given by their supports.
std::uint32_t hamming_distance(const Support& a, const Support& b);

/// Support shifted cyclically by s slots in Z_length, re-sorted.
Support cyclic_shift(const Support& word, std::uint32_t shift, std::uint32_t length);

struct Correlations {
    /// Largest off-peak periodic autocorrelation over all codewords and shifts.
    std::uint32_t max_auto = 0;
    /// Largest periodic cross-correlation over distinct codeword pairs and all shifts.
    std::uint32_t max_cross = 0;
};

/// Measures a candidate code. Throws InvalidArgument only if an element is out of range.
Correlations max_correlations(std::uint32_t v, std::span<const Support> codewords);

/// (v, k, lambda) optical orthogonal code in set representation.
class OpticalOrthogonalCode {
public:
    /// Validates weights, range, k > lambda and both correlation constraints;
    /// throws ValidationFailure naming the first violation.
    OpticalOrthogonalCode(std::uint32_t v, std::uint32_t k, std::uint32_t lambda, std::vector<Support> codewords);

    std::uint32_t v() const noexcept { return v_; }
    std::uint32_t k() const noexcept { return k_; }
    std::uint32_t lambda() const noexcept { return lambda_; }
    const std::vector<Support>& codewords() const noexcept { return codewords_; }
    std::size_t size() const noexcept { return codewords_.size(); }

    /// Measured correlation maxima (<= lambda by construction).
    Correlations correlations() const { return max_correlations(v_, codewords_); }

private:
    std::uint32_t v_;
    std::uint32_t k_;
    std::uint32_t lambda_;
    std::vector<Support> codewords_;
};

/// Nested-floor upper bound on the number of codewords of a (v, k, lambda) OOC.
std::uint64_t johnson_bound(std::uint64_t v, std::uint64_t k, std::uint64_t lambda);

bool is_optimal(const OpticalOrthogonalCode& code);

/// A constant-weight modulation alphabet: words of length Q and weight K.
class Codebook {
public:
    /// Throws ValidationFailure unless the words are distinct, in range and of equal weight.
    Codebook(std::uint32_t length, std::vector<Support> words);

    std::uint32_t length() const noexcept { return length_; }
    std::uint32_t weight() const noexcept { return weight_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Support>& words() const noexcept { return words_; }
    const Support& word(std::size_t i) const { return words_.at(i); }

    /// Cached minimum pairwise distance; empty for a single-word book.
    std::optional<std::uint32_t> cached_min_distance() const noexcept { return min_distance_; }

    /// The first m words, in order.
    Codebook first(std::size_t m) const;

    /// 0/1 vector of length Q for word i.
    std::vector<std::uint8_t> bits(std::size_t i) const;

    /// True when every cyclic shift of every word is also a word.
    bool cyclically_closed() const;

private:
    std::uint32_t length_;
    std::uint32_t weight_ = 0;
    std::vector<Support> words_;
    std::optional<std::uint32_t> min_distance_;
};

/// Every cyclic shift of every codeword, codeword-major then by shift 0..v-1.
Codebook expand_orbits(const OpticalOrthogonalCode& code);

/// Exact minimum pairwise Hamming distance; throws InvalidArgument for a single-word book.
std::uint32_t min_distance(const Codebook& book);

/// 2K(Q-K)/(Q-1), the minimum distance of expurgated PPM.
Rational eppm_min_distance(std::uint32_t q, std::uint32_t k);

/// The common multiplicity mu when every nonzero difference of block occurs
/// exactly mu times in Z_v, otherwise empty.
std::optional<std::uint32_t> is_difference_set(std::span<const Residue> block, std::uint32_t v);

/// Plain PPM: the Q weight-one words {0}, {1}, ..., {Q-1}.
Codebook ppm_codebook(std::uint32_t q);

/// Multipulse PPM: all weight-K words of length Q, lexicographic by support.
Codebook mppm_codebook(std::uint32_t q, std::uint32_t k);

} // namespace ppmsync
