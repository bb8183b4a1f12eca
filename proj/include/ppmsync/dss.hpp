#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ppmsync/rational.hpp"
#include "ppmsync/types.hpp"

namespace ppmsync {

/// Two disjoint, non-empty subsets of Z_n used as a synchronization marker:
/// slots in d0 always carry 0, slots in d1 always carry 1.
class Dss {
public:
    /// Sorts both sets. Throws InvalidArgument on out-of-range elements,
    /// duplicates, empty sets, overlap, or n < 2.
    Dss(std::uint32_t n, ResidueSet d0, ResidueSet d1);

    std::uint32_t n() const noexcept { return n_; }
    const ResidueSet& d0() const noexcept { return d0_; }
    const ResidueSet& d1() const noexcept { return d1_; }
    std::uint32_t redundancy() const noexcept { return static_cast<std::uint32_t>(d0_.size() + d1_.size()); }
    std::uint32_t free_capacity() const noexcept { return n_ - redundancy(); }

    /// The same marker with the roles of the two sets exchanged.
    Dss swapped() const { return Dss(n_, d1_, d0_); }

    friend bool operator==(const Dss&, const Dss&) = default;

private:
    std::uint32_t n_;
    ResidueSet d0_;
    ResidueSet d1_;
};

struct DssReport {
    std::uint64_t index = 0;
    bool perfect = false;
    bool regular = false;
    std::uint32_t redundancy = 0;
    Rational redundancy_rate;
    /// ceil(sqrt(2 * index * (n - 1)))
    std::uint64_t levenshtein_floor = 0;
    /// redundancy^2 == 2 * index * (n - 1) exactly.
    bool meets_levenshtein = false;
    /// redundancy == levenshtein_floor (the rounded-up bound).
    bool meets_levenshtein_floor = false;
};

/// counts[d] = number of ordered pairs (a, b) taken from different sets with
/// a - b = d (mod n). counts has n entries; counts[0] is always 0.
std::vector<std::uint64_t> outer_difference_census(const Dss& dss);

/// Index, perfection, regularity and bound data, all from the brute-force census.
DssReport verify(const Dss& dss);

/// ceil(sqrt(2 rho (n - 1))), computed exactly in integers.
std::uint64_t levenshtein_bound(std::uint64_t n, std::uint64_t rho);

/// Optimal index-one marker for any n >= 2.
Dss construct_index1(std::uint32_t n);

/// Optimal index-two marker for any n >= 2. Throws ConstructionInapplicable
/// if the recipe's sets collide after reduction.
Dss construct_index2(std::uint32_t n);

/// {C_0^{2e}, C_e^{2e}} over Z_p for a prime p with 2e | p - 1.
Dss construct_cyclotomic_pair(std::uint64_t p, std::uint32_t e);

/// Perfect regular markers over Z_{16 m^2 + 1} (quartic classes) and
/// Z_{108 m^2 + 1} (sextic classes). Throw ConstructionInapplicable when the
/// order is not prime.
Dss construct_quartic_family(std::uint32_t m);
Dss construct_sextic_family(std::uint32_t m);

/// Closed-form index of the quartic-class marker over Z_n, n prime = 1 (mod 4).
std::uint64_t predicted_index_4n1(std::uint64_t n);

/// Closed-form index of the sextic-class marker over Z_n, n prime = 1 (mod 6).
/// The formula fixes x mod 3 but not the sign of y, so both signs are evaluated.
struct SexticIndexPrediction {
    bool two_is_cubic_residue = false;
    std::int64_t x = 0;
    std::int64_t y = 0;
    /// Formula value with +y and -y; empty when that sign yields a non-integral term.
    std::optional<std::uint64_t> with_positive_y;
    std::optional<std::uint64_t> with_negative_y;
};
SexticIndexPrediction sextic_index_candidates(std::uint64_t n);

/// The candidate confirmed by census of construct_cyclotomic_pair(n, 3).
struct ReconciledIndex {
    std::uint64_t index = 0;
    /// +1 or -1 for the sign of y that matched; 0 when y does not enter the formula.
    int y_sign = 0;
};
/// Throws ValidationFailure if neither sign reproduces the census.
ReconciledIndex predicted_index_6n1(std::uint64_t n);

/// Sizes and index of a two-set marker, without the sets themselves.
struct DssParameters {
    std::uint64_t n = 0;
    std::uint64_t d0_size = 0;
    std::uint64_t d1_size = 0;
    std::uint64_t index = 0;
    friend bool operator==(const DssParameters&, const DssParameters&) = default;
};

DssParameters parameters_of(const Dss& dss);

/// Parameter arithmetic of the recursive lift from Z_n, n = (q^{t+1}-1)/(q-1),
/// to Z_{n'}, n' = (q^{2t+2}-1)/(q-1). Returns the plain lift and the
/// variant that adds i*n elements to set i. No sets are built.
std::pair<DssParameters, DssParameters> recursive_parameters(std::uint64_t q, std::uint64_t t,
                                                             const DssParameters& base);

bool is_prime_power(std::uint64_t q);

} // namespace ppmsync
