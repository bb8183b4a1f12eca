#include "ppmsync/dss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppmsync/error.hpp"
#include "ppmsync/numtheory.hpp"

namespace ppmsync {

namespace {

std::uint64_t isqrt_ceil(std::uint64_t v)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while (r * r < v) ++r;
    return r;
}

void normalize(ResidueSet& s, std::uint32_t n, const char* name)
{
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
        throw InvalidArgument(std::string("Dss: duplicate element in ") + name);
    }
    if (!s.empty() && s.back() >= n) {
        throw InvalidArgument(std::string("Dss: element ") + std::to_string(s.back()) + " of " + name +
                              " is not below n = " + std::to_string(n));
    }
}

// Reduces a recipe's raw elements mod n; a collision is a recipe failure.
ResidueSet reduce_recipe(const std::vector<std::uint64_t>& raw, std::uint32_t n, const char* recipe)
{
    ResidueSet out;
    out.reserve(raw.size());
    for (auto v : raw) out.push_back(static_cast<Residue>(v % n));
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw ConstructionInapplicable(std::string(recipe) + ": elements collide mod " + std::to_string(n));
    }
    return out;
}

Dss checked_marker(std::uint32_t n, ResidueSet d0, ResidueSet d1, const char* recipe)
{
    std::vector<Residue> common;
    std::set_intersection(d0.begin(), d0.end(), d1.begin(), d1.end(), std::back_inserter(common));
    if (!common.empty()) {
        throw ConstructionInapplicable(std::string(recipe) + ": the two sets overlap over Z_" + std::to_string(n));
    }
    return Dss(n, std::move(d0), std::move(d1));
}

std::uint64_t exact_div(std::int64_t num, std::int64_t den, const char* what)
{
    if (num < 0 || num % den != 0) {
        throw InternalError(std::string(what) + ": non-integral or negative index term");
    }
    return static_cast<std::uint64_t>(num / den);
}

std::optional<std::uint64_t> integral_min(std::initializer_list<std::int64_t> terms, std::int64_t den)
{
    std::optional<std::uint64_t> best;
    for (auto t : terms) {
        if (t < 0 || t % den != 0) return std::nullopt;
        const auto v = static_cast<std::uint64_t>(t / den);
        if (!best || v < *best) best = v;
    }
    return best;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp)
{
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base) {
            throw InvalidArgument("recursive_parameters: order overflows 64 bits");
        }
        r *= base;
    }
    return r;
}

} // namespace

Dss::Dss(std::uint32_t n, ResidueSet d0, ResidueSet d1) : n_(n), d0_(std::move(d0)), d1_(std::move(d1))
{
    if (n_ < 2) throw InvalidArgument("Dss: order must be at least 2, got " + std::to_string(n_));
    if (d0_.empty() || d1_.empty()) throw InvalidArgument("Dss: both sets must be non-empty");
    normalize(d0_, n_, "d0");
    normalize(d1_, n_, "d1");
    std::vector<Residue> common;
    std::set_intersection(d0_.begin(), d0_.end(), d1_.begin(), d1_.end(), std::back_inserter(common));
    if (!common.empty()) {
        throw InvalidArgument("Dss: sets are not disjoint (both contain " + std::to_string(common.front()) + ")");
    }
}

std::vector<std::uint64_t> outer_difference_census(const Dss& dss)
{
    const auto n = dss.n();
    std::vector<std::uint64_t> counts(n, 0);
    for (auto a : dss.d0()) {
        for (auto b : dss.d1()) {
            ++counts[(a + n - b) % n];
            ++counts[(b + n - a) % n];
        }
    }
    return counts;
}

std::uint64_t levenshtein_bound(std::uint64_t n, std::uint64_t rho)
{
    if (n == 0) return 0;
    return isqrt_ceil(2 * rho * (n - 1));
}

DssReport verify(const Dss& dss)
{
    const auto counts = outer_difference_census(dss);
    const auto [lo, hi] = std::minmax_element(counts.begin() + 1, counts.end());

    DssReport r;
    r.index = *lo;
    r.perfect = *lo == *hi;
    r.regular = dss.d0().size() == dss.d1().size();
    r.redundancy = dss.redundancy();
    r.redundancy_rate = Rational(r.redundancy, dss.n());
    r.levenshtein_floor = levenshtein_bound(dss.n(), r.index);
    const auto r2 = static_cast<std::uint64_t>(r.redundancy) * r.redundancy;
    r.meets_levenshtein = r.index > 0 && r2 == 2 * r.index * (dss.n() - 1);
    r.meets_levenshtein_floor = r.redundancy == r.levenshtein_floor;
    return r;
}

Dss construct_index1(std::uint32_t n)
{
    if (n < 2) throw InvalidArgument("construct_index1: order must be at least 2, got " + std::to_string(n));
    // tau1 = ceil(sqrt((n-1)/2)): smallest t with 2 t^2 >= n - 1.
    std::uint64_t tau1 = 1;
    while (2 * tau1 * tau1 < n - 1) ++tau1;
    const std::uint64_t tau0 = (n - 1 + 2 * tau1 - 1) / (2 * tau1);

    std::vector<std::uint64_t> d0;
    std::vector<std::uint64_t> d1;
    for (std::uint64_t i = 1; i <= tau1; ++i) d0.push_back(i * tau0 + 1);
    for (std::uint64_t i = 1; i <= tau0; ++i) d1.push_back(i);
    return checked_marker(n, reduce_recipe(d0, n, "construct_index1"), reduce_recipe(d1, n, "construct_index1"),
                          "construct_index1");
}

Dss construct_index2(std::uint32_t n)
{
    if (n < 2) throw InvalidArgument("construct_index2: order must be at least 2, got " + std::to_string(n));
    const auto tau1 = isqrt_ceil(n - 1);
    const std::uint64_t tau0 = (n - 1 + tau1 - 1) / tau1;

    std::vector<std::uint64_t> d0{tau0 + 1};
    for (std::uint64_t i = 0; i + 2 <= tau1; ++i) d0.push_back(n - i * tau0);
    std::vector<std::uint64_t> d1;
    for (std::uint64_t i = 1; i <= tau0; ++i) d1.push_back(i);
    return checked_marker(n, reduce_recipe(d0, n, "construct_index2"), reduce_recipe(d1, n, "construct_index2"),
                          "construct_index2");
}

Dss construct_cyclotomic_pair(std::uint64_t p, std::uint32_t e)
{
    if (e == 0 || p < 3 || (p - 1) % (2 * static_cast<std::uint64_t>(e)) != 0) {
        throw InvalidArgument("construct_cyclotomic_pair: 2e = " + std::to_string(2 * std::uint64_t{e}) +
                              " does not divide p - 1 for p = " + std::to_string(p));
    }
    const numtheory::CyclotomicTable table(p, 2 * e);
    return Dss(static_cast<std::uint32_t>(p), table.cls(0), table.cls(e));
}

Dss construct_quartic_family(std::uint32_t m)
{
    const auto n = 16 * std::uint64_t{m} * m + 1;
    if (m == 0 || !numtheory::is_prime(n)) {
        throw ConstructionInapplicable("quartic family: 16m^2+1 = " + std::to_string(n) + " is not prime");
    }
    return construct_cyclotomic_pair(n, 2);
}

Dss construct_sextic_family(std::uint32_t m)
{
    const auto n = 108 * std::uint64_t{m} * m + 1;
    if (m == 0 || !numtheory::is_prime(n)) {
        throw ConstructionInapplicable("sextic family: 108m^2+1 = " + std::to_string(n) + " is not prime");
    }
    return construct_cyclotomic_pair(n, 3);
}

std::uint64_t predicted_index_4n1(std::uint64_t n)
{
    const auto [x, y] = numtheory::decompose_x2_4y2(n);
    const auto sn = static_cast<std::int64_t>(n);
    if (n % 8 == 1) {
        return std::min(exact_div(sn - 3 + 2 * x, 8, "predicted_index_4n1"),
                        exact_div(sn + 1 - 2 * x, 8, "predicted_index_4n1"));
    }
    return std::min(exact_div(sn - 3 - 2 * x, 8, "predicted_index_4n1"),
                    exact_div(sn + 1 + 2 * x, 8, "predicted_index_4n1"));
}

SexticIndexPrediction sextic_index_candidates(std::uint64_t n)
{
    const auto form = numtheory::decompose_x2_3y2(n);
    SexticIndexPrediction out;
    out.x = form.x;
    out.y = form.y;
    out.two_is_cubic_residue = numtheory::is_cubic_residue(2, n);
    const auto sn = static_cast<std::int64_t>(n);
    const auto x = form.x;
    if (out.two_is_cubic_residue) {
        const auto v = integral_min({sn - 5 + 4 * x, sn + 1 - 2 * x}, 18);
        out.with_positive_y = v;
        out.with_negative_y = v;
        return out;
    }
    for (int sign : {1, -1}) {
        const auto y = sign * form.y;
        auto v = integral_min({sn - 5 + 4 * x + 6 * y, sn + 1 - 2 * x - 12 * y, sn + 1 - 2 * x + 6 * y}, 18);
        (sign > 0 ? out.with_positive_y : out.with_negative_y) = v;
    }
    return out;
}

ReconciledIndex predicted_index_6n1(std::uint64_t n)
{
    const auto candidates = sextic_index_candidates(n);
    const auto census_index = verify(construct_cyclotomic_pair(n, 3)).index;
    if (candidates.two_is_cubic_residue) {
        if (candidates.with_positive_y == census_index) return {census_index, 0};
    } else {
        if (candidates.with_positive_y == census_index) return {census_index, 1};
        if (candidates.with_negative_y == census_index) return {census_index, -1};
    }
    throw ValidationFailure("predicted_index_6n1: neither sign of y reproduces the census index " +
                            std::to_string(census_index) + " for n = " + std::to_string(n));
}

DssParameters parameters_of(const Dss& dss)
{
    return {dss.n(), dss.d0().size(), dss.d1().size(), verify(dss).index};
}

bool is_prime_power(std::uint64_t q)
{
    if (q < 2) return false;
    const auto factors = numtheory::prime_factors(q);
    return factors.size() == 1;
}

std::pair<DssParameters, DssParameters> recursive_parameters(std::uint64_t q, std::uint64_t t,
                                                             const DssParameters& base)
{
    if (!is_prime_power(q)) throw InvalidArgument("recursive_parameters: q = " + std::to_string(q) +
                                                  " is not a prime power");
    if (t == 0) throw InvalidArgument("recursive_parameters: t must be positive");
    const auto qt1 = checked_pow(q, t + 1);
    const auto n = (qt1 - 1) / (q - 1);
    if (base.n != n) {
        throw InvalidArgument("recursive_parameters: base order " + std::to_string(base.n) +
                              " does not match (q^(t+1)-1)/(q-1) = " + std::to_string(n));
    }
    const auto n_lift = (checked_pow(q, 2 * t + 2) - 1) / (q - 1);
    const auto cross = 2 * (q - 1) * base.d0_size * base.d1_size;

    DssParameters plain{n_lift, qt1 * base.d0_size, qt1 * base.d1_size, std::min(base.index * qt1, cross)};
    DssParameters padded{n_lift, qt1 * base.d0_size, qt1 * base.d1_size + n,
                         std::min(base.index * qt1, cross + 2 * base.d0_size)};
    return {plain, padded};
}

} // namespace ppmsync
