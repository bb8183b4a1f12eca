#pragma once

#include <cstdint>
#include <vector>

#include "ppmsync/types.hpp"

// Prime-field arithmetic feeding the cyclotomic DSS constructions.
// Everything here is a pure function of its arguments.

namespace ppmsync::numtheory {

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Smallest positive integer of multiplicative order p-1 modulo the odd prime p.
std::uint64_t primitive_root(std::uint64_t p);

/// The e-th cyclotomic classes of F_p built from the smallest primitive root:
/// class i = { alpha^(i + t e) mod p : 0 <= t < (p-1)/e }.
class CyclotomicTable {
public:
    CyclotomicTable(std::uint64_t p, std::uint32_t e);

    std::uint64_t p() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint64_t alpha() const noexcept { return alpha_; }
    /// (p-1)/e, the common class size.
    std::uint64_t class_size() const noexcept { return (p_ - 1) / e_; }

    /// Sorted members of class i.
    const ResidueSet& cls(std::uint32_t i) const;
    const std::vector<ResidueSet>& classes() const noexcept { return classes_; }

    /// Index of the class containing x, or -1 for x == 0 (mod p).
    int class_of(std::uint64_t x) const noexcept;

private:
    std::uint64_t p_;
    std::uint32_t e_;
    std::uint64_t alpha_;
    std::vector<ResidueSet> classes_;
    std::vector<std::int32_t> class_of_;
};

inline CyclotomicTable cyclotomic_classes(std::uint64_t p, std::uint32_t e) { return {p, e}; }

/// |(C_i + 1) ∩ C_j|, by enumeration over class i.
std::uint64_t cyclotomic_number(const CyclotomicTable& table, std::uint32_t i, std::uint32_t j);
std::uint64_t cyclotomic_number(std::uint64_t p, std::uint32_t e, std::uint32_t i, std::uint32_t j);

/// A representation n = x^2 + c y^2 with y >= 0.
struct QuadraticForm {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

/// n = x^2 + 4y^2 with x = 1 (mod 4), for a prime n = 1 (mod 4).
QuadraticForm decompose_x2_4y2(std::uint64_t n);

/// n = x^2 + 3y^2 with x = 1 (mod 3), for a prime n = 1 (mod 6).
QuadraticForm decompose_x2_3y2(std::uint64_t n);

/// a^((n-1)/3) == 1 (mod n), for a prime n = 1 (mod 3).
bool is_cubic_residue(std::uint64_t a, std::uint64_t n);

} // namespace ppmsync::numtheory
