#pragma once

#include <cstdint>
#include <vector>

namespace ppmsync {

/// An element of Z_n, always reduced into [0, n).
using Residue = std::uint32_t;

/// Sorted, duplicate-free set of residues. Also used as the support of a binary word.
using ResidueSet = std::vector<Residue>;

/// Largest ring order accepted anywhere in the library.
inline constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

} // namespace ppmsync
