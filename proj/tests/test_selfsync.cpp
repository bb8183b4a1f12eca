#include <doctest.h>

#include <algorithm>

#include "ppmsync/dss.hpp"
#include "ppmsync/dss_search.hpp"
#include "ppmsync/error.hpp"
#include "ppmsync/ooc.hpp"
#include "ppmsync/selfsync.hpp"

using namespace ppmsync;

namespace {

// Oracle: textbook definition with explicit vectors and no early exit.
std::uint32_t naive_index(const std::vector<Bits>& words, const std::vector<std::uint32_t>* coords = nullptr)
{
    const auto n = static_cast<std::uint32_t>(words.front().size());
    std::uint32_t best = UINT32_MAX;
    for (const auto& x : words) {
        for (const auto& y : words) {
            for (std::uint32_t i = 1; i < n; ++i) {
                Bits s;
                for (std::uint32_t j = n - i; j < n; ++j) s.push_back(x[j]);
                for (std::uint32_t j = 0; j < n - i; ++j) s.push_back(y[j]);
                for (const auto& z : words) {
                    std::uint32_t d = 0;
                    for (std::uint32_t t = 0; t < n; ++t) {
                        if (coords && !std::binary_search(coords->begin(), coords->end(), t)) continue;
                        d += s[t] != z[t];
                    }
                    best = std::min(best, d);
                }
            }
        }
    }
    return best;
}

std::vector<Bits> to_bits(const Codebook& book)
{
    std::vector<Bits> out;
    for (std::size_t i = 0; i < book.size(); ++i) out.push_back(book.bits(i));
    return out;
}

std::string render(const Bits& b)
{
    std::string s;
    for (auto x : b) s += x ? '1' : '0';
    return s;
}

} // namespace

TEST_CASE("splice")
{
    const Bits x{1, 1, 0, 1, 0, 0, 0, 0};
    CHECK(splice(x, x, 1) == Bits{0, 1, 1, 0, 1, 0, 0, 0});
    CHECK_THROWS_AS(splice(x, x, 8), InvalidArgument);
    CHECK_THROWS_AS(splice(x, x, 0), InvalidArgument);
    const Bits y{0, 0, 1, 1, 1, 0, 0, 1};
    CHECK(splice(x, y, 3) == Bits{0, 0, 0, 0, 0, 1, 1, 1});
    for (std::uint32_t i = 1; i < 8; ++i) {
        const auto s = splice(x, x, i);
        for (std::uint32_t t = 0; t < 8; ++t) CHECK(s[t] == x[(t + 8 - i) % 8]);
    }
}

TEST_CASE("combine lays out marker and payload")
{
    const Dss z8(8, {3, 5}, {1, 2});
    const auto code = combine(z8, ppm_codebook(4));
    CHECK(code.size() == 4);
    CHECK(code.free_positions() == std::vector<std::uint32_t>{0, 4, 6, 7});
    CHECK(code.words()[0] == Bits{1, 1, 1, 0, 0, 0, 0, 0});
    CHECK(code.weight() == 3);
    for (const auto& w : code.words()) CHECK(std::count(w.begin(), w.end(), 1) == 3);

    const auto c26 = combine(construct_index2(26).swapped(), mppm_codebook(16, 2));
    for (const auto& w : c26.words()) {
        auto s = render(w);
        for (auto p : c26.free_positions()) s[p] = '*';
        CHECK(s == "1000001****1****1****1****");
    }
    CHECK_THROWS_AS(combine(construct_index2(26), ppm_codebook(15)), InvalidArgument);
}

TEST_CASE("the Z_8 marker word matches its layout")
{
    // Marker with D1 = {1,2} rendered with the payload pulse on free slot 0.
    const auto code = combine(construct_index1(8).swapped(), ppm_codebook(4));
    CHECK(code.marker().d0() == ResidueSet{1, 2});
    CHECK(code.words()[0] == Bits{1, 0, 0, 1, 0, 1, 0, 0});
}

TEST_CASE("comma-free index agrees with the naive definition")
{
    std::vector<SelfSyncCode> codes;
    codes.push_back(combine(construct_index1(8), ppm_codebook(4)));
    codes.push_back(combine(construct_index1(8).swapped(), mppm_codebook(4, 2)));
    codes.push_back(combine(construct_index2(10), ppm_codebook(4)));
    codes.push_back(combine(construct_cyclotomic_pair(17, 2), mppm_codebook(9, 2)));
    codes.push_back(combine(Dss(9, {0}, {1}), mppm_codebook(7, 3)));
    for (auto& code : codes) {
        const auto& r = code.certify();
        REQUIRE(r.certified);
        const auto coords = code.marker_coordinates();
        CHECK(*r.index == naive_index(code.words()));
        CHECK(*r.restricted_index == naive_index(code.words(), &coords));
        CHECK(*r.restricted_index <= *r.index);
        CHECK(*r.restricted_index >= verify(code.marker()).index);
        const auto& w = *r.witness;
        const auto s = splice(code.words()[w.x], code.words()[w.y], w.offset);
        std::uint32_t d = 0;
        for (std::uint32_t t = 0; t < code.n(); ++t) d += s[t] != code.words()[w.z][t];
        CHECK(d == w.distance);
        CHECK(d == *r.index);
    }
}

TEST_CASE("orbit books without a marker are not comma-free")
{
    const auto book = expand_orbits(OpticalOrthogonalCode(8, 3, 1, {{0, 1, 3}}));
    const auto r = comma_free_index(to_bits(book));
    REQUIRE(r.certified);
    CHECK(*r.index == 0);
    CHECK(r.witness->x == r.witness->y);
}

TEST_CASE("Theorem-one guarantee over small markers and payloads")
{
    // Every optimal marker for n <= 14, rho <= 2, with PPM and MPPM payloads of matching length.
    for (std::uint32_t n = 4; n <= 14; ++n) {
        for (std::uint64_t rho = 1; rho <= 2; ++rho) {
            const auto found = search_optimal_dss(n, rho);
            const auto q = found.dss.free_capacity();
            if (q < 2) continue;
            for (const auto& payload : {ppm_codebook(q), mppm_codebook(q, 2)}) {
                if (payload.size() > 40) continue;
                for (const auto& marker : {found.dss, found.dss.swapped()}) {
                    auto code = combine(marker, payload);
                    const auto& r = code.certify();
                    REQUIRE(r.certified);
                    CHECK(*r.restricted_index >= verify(marker).index);
                    CHECK(*r.index >= *r.restricted_index);
                    for (const auto& w : code.words()) {
                        CHECK(static_cast<std::uint32_t>(std::count(w.begin(), w.end(), 1)) == code.weight());
                        for (auto a : marker.d0()) CHECK(w[a] == 0);
                        for (auto a : marker.d1()) CHECK(w[a] == 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("comma-free distance is invariant under cyclic relabeling")
{
    auto code = combine(construct_index2(10), mppm_codebook(4, 2));
    const auto base = *code.certify().index;
    for (std::uint32_t s = 1; s < code.n(); ++s) {
        std::vector<Bits> rotated;
        for (const auto& w : code.words()) {
            Bits r(w.size());
            for (std::size_t t = 0; t < w.size(); ++t) r[(t + s) % w.size()] = w[t];
            rotated.push_back(r);
        }
        CHECK(*comma_free_index(rotated).index == base);
    }
}

TEST_CASE("work limit and tolerance")
{
    auto code = combine(construct_index2(26), mppm_codebook(16, 2));
    const auto& r = code.certify(1000);
    CHECK_FALSE(r.certified);
    CHECK_FALSE(code.certified_index().has_value());
    CHECK_THROWS_AS(hard_sync_tolerance(code), InvalidArgument);

    CHECK(hard_sync_tolerance(2U) == 0);
    CHECK(hard_sync_tolerance(1U) == 0);
    for (std::uint32_t m = 1; m <= 10; ++m) CHECK(hard_sync_tolerance(2 * m * m) == m * m - 1);
}

TEST_CASE("frame layouts")
{
    const auto inner = combine(construct_index1(8), ppm_codebook(4));
    // Smallest index-one outer marker with 16 free slots.
    std::optional<Dss> outer;
    for (std::uint32_t np = 17; np <= 40 && !outer; ++np) {
        auto found = search_optimal_dss(np, 1);
        if (found.dss.free_capacity() == 16) outer = found.dss;
    }
    REQUIRE(outer.has_value());
    const auto layout = build_frame_layout(*outer, inner, 2);
    CHECK(layout.frame_length() == outer->n());
    CHECK(layout.interval_slots(0).size() == 8);
    CHECK(layout.interval_slots(1).size() == 8);
    CHECK(layout.interval_slots(0).back() < layout.interval_slots(1).front());
    for (auto s : layout.interval_slots(0)) {
        CHECK_FALSE(std::binary_search(outer->d0().begin(), outer->d0().end(), s));
        CHECK_FALSE(std::binary_search(outer->d1().begin(), outer->d1().end(), s));
    }
    CHECK_THROWS_AS(layout.interval_slots(2), InvalidArgument);

    const auto single = build_frame_layout(Dss(10, {0}, {1}), inner, 1);
    CHECK(single.symbols_per_frame() == 1);

    // 15 free slots cannot hold two 8-slot intervals.
    CHECK_THROWS_AS(build_frame_layout(Dss(17, {0}, {1}), inner, 2), InvalidArgument);
}
