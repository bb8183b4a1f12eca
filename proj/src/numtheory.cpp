#include "ppmsync/numtheory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ppmsync/error.hpp"

namespace ppmsync::numtheory {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void require_field_order(std::uint64_t p, const char* what)
{
    if (p < 3 || p >= kMaxOrder || !is_prime(p)) {
        throw InvalidArgument(std::string(what) + ": " + std::to_string(p) +
                              " is not an odd prime below 2^31");
    }
}

// Finds x with n - c*y^2 = x^2 and x = 1 (mod modulus), scanning y upward.
QuadraticForm decompose(std::uint64_t n, std::uint64_t c, std::int64_t modulus)
{
    for (std::uint64_t y = 0; c * y * y <= n; ++y) {
        const auto rest = n - c * y * y;
        const auto x = isqrt(rest);
        if (x * x != rest) continue;
        const auto sx = static_cast<std::int64_t>(x);
        const auto sy = static_cast<std::int64_t>(y);
        if (floor_mod(sx, modulus) == 1) return {sx, sy};
        if (floor_mod(-sx, modulus) == 1) return {-sx, sy};
    }
    throw InternalError("no decomposition n = x^2 + " + std::to_string(c) + "y^2 for n = " +
                        std::to_string(n));
}

} // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : kBases) {
        if (n % p == 0) return n == p;
    }
    auto d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : kBases) {
        auto x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> factors;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        factors.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

std::uint64_t primitive_root(std::uint64_t p)
{
    require_field_order(p, "primitive_root");
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        const bool generates = std::all_of(factors.begin(), factors.end(),
                                           [&](auto q) { return pow_mod(g, (p - 1) / q, p) != 1; });
        if (generates) return g;
    }
    throw InternalError("no primitive root found for " + std::to_string(p));
}

CyclotomicTable::CyclotomicTable(std::uint64_t p, std::uint32_t e) : p_(p), e_(e)
{
    require_field_order(p, "cyclotomic_classes");
    if (e == 0 || (p - 1) % e != 0) {
        throw InvalidArgument("cyclotomic_classes: order " + std::to_string(e) + " does not divide p-1 = " +
                              std::to_string(p - 1));
    }
    alpha_ = primitive_root(p);
    classes_.assign(e, {});
    class_of_.assign(p, -1);
    // Walk alpha^0, alpha^1, ...; exponent s lands in class s mod e.
    std::uint64_t power = 1;
    for (std::uint64_t s = 0; s < p - 1; ++s) {
        const auto i = static_cast<std::uint32_t>(s % e);
        classes_[i].push_back(static_cast<Residue>(power));
        class_of_[power] = static_cast<std::int32_t>(i);
        power = mul_mod(power, alpha_, p);
    }
    for (auto& c : classes_) std::sort(c.begin(), c.end());
}

const ResidueSet& CyclotomicTable::cls(std::uint32_t i) const
{
    if (i >= e_) throw InvalidArgument("cyclotomic class index " + std::to_string(i) + " out of range");
    return classes_[i];
}

int CyclotomicTable::class_of(std::uint64_t x) const noexcept
{
    return class_of_[x % p_];
}

std::uint64_t cyclotomic_number(const CyclotomicTable& table, std::uint32_t i, std::uint32_t j)
{
    if (i >= table.e() || j >= table.e()) {
        throw InvalidArgument("cyclotomic_number: class index out of range for order " +
                              std::to_string(table.e()));
    }
    std::uint64_t count = 0;
    for (auto x : table.cls(i)) {
        if (table.class_of(x + 1) == static_cast<int>(j)) ++count;
    }
    return count;
}

std::uint64_t cyclotomic_number(std::uint64_t p, std::uint32_t e, std::uint32_t i, std::uint32_t j)
{
    return cyclotomic_number(CyclotomicTable(p, e), i, j);
}

QuadraticForm decompose_x2_4y2(std::uint64_t n)
{
    if (n >= kMaxOrder || n % 4 != 1 || !is_prime(n)) {
        throw InvalidArgument("decompose_x2_4y2: " + std::to_string(n) + " is not a prime = 1 (mod 4)");
    }
    return decompose(n, 4, 4);
}

QuadraticForm decompose_x2_3y2(std::uint64_t n)
{
    if (n >= kMaxOrder || n % 6 != 1 || !is_prime(n)) {
        throw InvalidArgument("decompose_x2_3y2: " + std::to_string(n) + " is not a prime = 1 (mod 6)");
    }
    return decompose(n, 3, 3);
}

bool is_cubic_residue(std::uint64_t a, std::uint64_t n)
{
    if (n % 3 != 1 || !is_prime(n)) {
        throw InvalidArgument("is_cubic_residue: modulus " + std::to_string(n) + " is not a prime = 1 (mod 3)");
    }
    if (a % n == 0) throw InvalidArgument("is_cubic_residue: argument shares a factor with the modulus");
    return pow_mod(a, (n - 1) / 3, n) == 1;
}

} // namespace ppmsync::numtheory
