#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "ppmsync/dss.hpp"
#include "ppmsync/dss_search.hpp"
#include "ppmsync/error.hpp"
#include "ppmsync/numtheory.hpp"

using namespace ppmsync;

namespace {

// Independent census: difference multiset keyed by residue.
std::map<std::uint32_t, std::uint64_t> census_oracle(std::uint32_t n, const ResidueSet& a, const ResidueSet& b)
{
    std::map<std::uint32_t, std::uint64_t> m;
    for (std::uint32_t d = 1; d < n; ++d) m[d] = 0;
    for (auto x : a) {
        for (auto y : b) {
            ++m[((x + n) - y) % n];
            ++m[((y + n) - x) % n];
        }
    }
    m.erase(0);
    return m;
}

std::uint64_t index_oracle(const Dss& d)
{
    std::uint64_t lo = UINT64_MAX;
    for (auto [_, c] : census_oracle(d.n(), d.d0(), d.d1())) lo = std::min(lo, c);
    return lo;
}

bool prime(std::uint64_t n) { return numtheory::is_prime(n); }

} // namespace

TEST_CASE("Dss validation")
{
    CHECK_THROWS_AS(Dss(1, {0}, {0}), InvalidArgument);
    CHECK_THROWS_AS(Dss(8, {}, {1}), InvalidArgument);
    CHECK_THROWS_AS(Dss(8, {1, 1}, {2}), InvalidArgument);
    CHECK_THROWS_AS(Dss(8, {8}, {2}), InvalidArgument);
    CHECK_THROWS_AS(Dss(8, {1, 2}, {2, 3}), InvalidArgument);
    const Dss d(8, {5, 3}, {2, 1});
    CHECK(d.d0() == ResidueSet{3, 5});
    CHECK(d.free_capacity() == 4);
}

TEST_CASE("outer difference census")
{
    const auto z8 = outer_difference_census(Dss(8, {1, 2}, {3, 5}));
    CHECK(z8 == std::vector<std::uint64_t>{0, 1, 1, 1, 2, 1, 1, 1});
    CHECK(outer_difference_census(Dss(2, {0}, {1})) == std::vector<std::uint64_t>{0, 2});
    const auto z26 = outer_difference_census(Dss(26, {1, 2, 3, 4, 5}, {0, 6, 11, 16, 21}));
    CHECK(std::all_of(z26.begin() + 1, z26.end(), [](auto c) { return c == 2; }));
}

TEST_CASE("verify reports")
{
    const auto z8 = verify(Dss(8, {1, 2}, {3, 5}));
    CHECK(z8.index == 1);
    CHECK_FALSE(z8.perfect);
    CHECK(z8.regular);
    CHECK(z8.redundancy == 4);
    CHECK(z8.levenshtein_floor == 4);
    CHECK_FALSE(z8.meets_levenshtein);
    CHECK(z8.meets_levenshtein_floor);
    CHECK(z8.redundancy_rate == Rational(1, 2));

    const auto z26 = verify(Dss(26, {1, 2, 3, 4, 5}, {0, 6, 11, 16, 21}));
    CHECK(z26.index == 2);
    CHECK(z26.perfect);
    CHECK(z26.regular);
    CHECK(z26.redundancy == 10);
    CHECK(z26.levenshtein_floor == 10);
    CHECK(z26.meets_levenshtein);

    const auto z37 = verify(construct_cyclotomic_pair(37, 2));
    CHECK(z37.index == 4);
    CHECK(z37.redundancy == 18);
    CHECK(z37.levenshtein_floor == 17);
}

TEST_CASE("levenshtein bound")
{
    CHECK(levenshtein_bound(37, 4) == 17);
    CHECK(levenshtein_bound(2, 1) == 2);
    CHECK(levenshtein_bound(17, 2) == 8);
    CHECK(levenshtein_bound(26, 2) == 10);
    for (std::uint64_t n = 2; n < 300; ++n) {
        for (std::uint64_t rho = 1; rho < 20; ++rho) {
            const auto b = levenshtein_bound(n, rho);
            CHECK(b * b >= 2 * rho * (n - 1));
            CHECK((b - 1) * (b - 1) < 2 * rho * (n - 1));
        }
    }
}

TEST_CASE("index-one construction")
{
    const auto z8 = construct_index1(8);
    CHECK(z8.d1() == ResidueSet{1, 2});
    CHECK(z8.d0() == ResidueSet{3, 5});
    const auto z17 = construct_index1(17);
    CHECK(z17.d1() == ResidueSet{1, 2, 3});
    CHECK(z17.d0() == ResidueSet{4, 7, 10});
    CHECK(z17.redundancy() == 6);
    const auto z2 = construct_index1(2);
    CHECK(z2.d1() == ResidueSet{1});
    CHECK(z2.d0() == ResidueSet{0});
    CHECK_THROWS_AS(construct_index1(1), InvalidArgument);

    for (std::uint32_t n = 2; n <= 400; ++n) {
        const auto d = construct_index1(n);
        CHECK(index_oracle(d) >= 1);
        CHECK(d.redundancy() == levenshtein_bound(n, 1));
    }
}

TEST_CASE("index-two construction")
{
    const auto z26 = construct_index2(26);
    CHECK(z26.d1() == ResidueSet{1, 2, 3, 4, 5});
    CHECK(z26.d0() == ResidueSet{0, 6, 11, 16, 21});
    const auto z10 = construct_index2(10);
    CHECK(z10.d1() == ResidueSet{1, 2, 3});
    CHECK(z10.d0() == ResidueSet{0, 4, 7});
    CHECK(verify(z10).index == 2);
    CHECK(verify(z10).perfect);
    const auto z5 = construct_index2(5);
    CHECK(z5.d1() == ResidueSet{1, 2});
    CHECK(z5.d0() == ResidueSet{0, 3});
    CHECK(construct_index2(2) == Dss(2, {0}, {1}));
    CHECK_THROWS_AS(construct_index2(1), InvalidArgument);

    for (std::uint32_t n = 2; n <= 400; ++n) {
        const auto d = construct_index2(n);
        CHECK(index_oracle(d) >= 2);
        CHECK(d.redundancy() == levenshtein_bound(n, 2));
    }
}

TEST_CASE("cyclotomic pair construction")
{
    const auto z17 = construct_cyclotomic_pair(17, 2);
    CHECK(z17.d0() == ResidueSet{1, 4, 13, 16});
    CHECK(z17.d1() == ResidueSet{2, 8, 9, 15});
    CHECK(verify(z17).index == 2);
    const auto z109 = construct_cyclotomic_pair(109, 3);
    CHECK(z109.d0().size() == 18);
    CHECK(verify(z109).index == 6);
    const auto z37 = construct_cyclotomic_pair(37, 2);
    CHECK(z37.d0().size() == 9);
    CHECK(verify(z37).index == 4);
    CHECK_THROWS_AS(construct_cyclotomic_pair(19, 2), InvalidArgument);
    CHECK_THROWS_AS(construct_quartic_family(7), ConstructionInapplicable);
}

TEST_CASE("closed-form indices agree with the census")
{
    CHECK(predicted_index_4n1(37) == 4);
    CHECK(predicted_index_4n1(17) == 2);
    CHECK(predicted_index_4n1(257) == 32);
    CHECK(predicted_index_6n1(109).index == 6);
    CHECK(predicted_index_6n1(433).index == 24);
    CHECK(predicted_index_6n1(3889).index == 216);
    CHECK_THROWS_AS(predicted_index_4n1(19), InvalidArgument);

    for (std::uint64_t n = 5; n <= 2000; ++n) {
        if (!prime(n)) continue;
        if (n % 4 == 1) CHECK(predicted_index_4n1(n) == index_oracle(construct_cyclotomic_pair(n, 2)));
        if (n % 6 == 1) {
            const auto r = predicted_index_6n1(n);
            CHECK(r.index == index_oracle(construct_cyclotomic_pair(n, 3)));
            // Exactly one sign of y gives integral terms when 2 is not a cubic residue.
            const auto c = sextic_index_candidates(n);
            if (!c.two_is_cubic_residue) CHECK(c.with_positive_y.has_value() != c.with_negative_y.has_value());
        }
    }
}

TEST_CASE("constructed markers respect the Levenshtein bound and swap symmetry")
{
    std::mt19937 gen(7);
    std::vector<Dss> markers;
    for (std::uint32_t m : {1U, 4U, 5U, 6U, 9U, 10U}) markers.push_back(construct_quartic_family(m));
    for (std::uint32_t m : {1U, 2U, 6U}) markers.push_back(construct_sextic_family(m));
    std::uniform_int_distribution<std::uint32_t> pick(5, 2000);
    for (int i = 0; i < 50; ++i) {
        const auto n = pick(gen);
        markers.push_back(construct_index1(n));
        markers.push_back(construct_index2(n));
    }
    for (const auto& d : markers) {
        const auto r = verify(d);
        CHECK(r.index == index_oracle(d));
        CHECK(r.redundancy >= levenshtein_bound(d.n(), r.index));
        if (r.meets_levenshtein) {
            CHECK(r.perfect);
            CHECK(r.regular);
        }
        std::uint64_t total = 0;
        for (auto c : outer_difference_census(d)) total += c;
        CHECK(total == 2 * d.d0().size() * d.d1().size());
        const auto s = verify(d.swapped());
        CHECK(s.index == r.index);
        CHECK(s.perfect == r.perfect);
        CHECK(s.regular == r.regular);
        CHECK(s.redundancy == r.redundancy);
    }
}

TEST_CASE("recursive parameters")
{
    const auto base = parameters_of(construct_index1(7));
    CHECK(base == DssParameters{7, 2, 2, 1});
    const auto [plain, padded] = recursive_parameters(2, 2, base);
    CHECK(plain == DssParameters{63, 16, 16, 8});
    CHECK(padded == DssParameters{63, 16, 23, 8});
    const auto [zero, zero_padded] = recursive_parameters(2, 2, DssParameters{7, 2, 2, 0});
    CHECK(zero.index == 0);
    CHECK(zero_padded.index == 0);
    CHECK_THROWS_AS(recursive_parameters(2, 2, DssParameters{8, 2, 2, 1}), InvalidArgument);
    CHECK_THROWS_AS(recursive_parameters(6, 1, DssParameters{7, 2, 2, 1}), InvalidArgument);
    CHECK(is_prime_power(9));
    CHECK_FALSE(is_prime_power(12));
}

TEST_CASE("optimal search")
{
    const auto z8 = search_optimal_dss(8, 1);
    CHECK(z8.redundancy == 4);
    CHECK(verify(z8.dss).index >= 1);
    CHECK(z8.excluded.size() == 2);

    const auto z2 = search_optimal_dss(2, 1);
    CHECK(z2.redundancy == 2);
    CHECK(z2.dss == Dss(2, {0}, {1}));

    const auto z17 = search_optimal_dss(17, 2);
    CHECK(z17.redundancy == 8);
    CHECK(verify(z17.dss).index >= 2);

    CHECK_THROWS_AS(search_optimal_dss(41, 1), InvalidArgument);
    CHECK_THROWS_AS(search_optimal_dss(8, 5), Infeasible);
    SearchOptions tiny;
    tiny.node_limit = 3;
    CHECK_THROWS_AS(search_optimal_dss(30, 3, tiny), WorkLimitExceeded);
}

TEST_CASE("search matches exhaustive subset enumeration for small orders")
{
    // Oracle: all (D0, D1) label assignments over Z_n, n <= 10.
    for (std::uint32_t n = 2; n <= 10; ++n) {
        for (std::uint64_t rho = 1; rho <= 3; ++rho) {
            std::uint32_t best = UINT32_MAX;
            std::uint32_t total = 1;
            for (std::uint32_t i = 0; i < n; ++i) total *= 3;
            for (std::uint32_t code = 0; code < total; ++code) {
                ResidueSet a, b;
                auto c = code;
                for (std::uint32_t i = 0; i < n; ++i, c /= 3) {
                    if (c % 3 == 1) a.push_back(i);
                    if (c % 3 == 2) b.push_back(i);
                }
                if (a.empty() || b.empty()) continue;
                const auto r = static_cast<std::uint32_t>(a.size() + b.size());
                if (r >= best) continue;
                if (index_oracle(Dss(n, a, b)) >= rho) best = r;
            }
            if (best == UINT32_MAX) {
                CHECK_THROWS_AS(search_optimal_dss(n, rho), Infeasible);
            } else {
                SearchOptions from_two;
                from_two.from_redundancy = 2;
                const auto found = search_optimal_dss(n, rho, from_two);
                CHECK(found.redundancy == best);
                CHECK(index_oracle(found.dss) >= rho);
            }
        }
    }
}
