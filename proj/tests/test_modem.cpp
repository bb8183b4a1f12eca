#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ppmsync/catalog.hpp"
#include "ppmsync/dss.hpp"
#include "ppmsync/error.hpp"
#include "ppmsync/modem.hpp"
#include "ppmsync/rng.hpp"

using namespace ppmsync;

namespace {

SelfSyncCode z8_ppm() { return combine(construct_index1(8), ppm_codebook(4)); }

std::vector<std::size_t> digits(std::size_t value, std::size_t base, std::size_t count)
{
    std::vector<std::size_t> out(count);
    for (auto& d : out) {
        d = value % base;
        value /= base;
    }
    return out;
}

} // namespace

TEST_CASE("encode")
{
    const auto code = z8_ppm();
    CHECK(encode(std::vector<std::size_t>{}, code).slots.empty());
    const auto one = encode(std::vector<std::size_t>{0}, code);
    CHECK(one.slots.size() == 8);
    CHECK(std::accumulate(one.slots.begin(), one.slots.end(), 0.0) == 3.0);
    const auto three = encode(std::vector<std::size_t>{0, 1, 2}, code);
    CHECK(three.slots.size() == 24);
    for (std::size_t j = 0; j < 3; ++j) {
        for (auto a : code.marker().d0()) CHECK(three.slots[j * 8 + a] == 0.0);
        for (auto a : code.marker().d1()) CHECK(three.slots[j * 8 + a] == 1.0);
    }
    CHECK_THROWS_AS(encode(std::vector<std::size_t>{4}, code), InvalidArgument);
}

TEST_CASE("misalignment convention")
{
    const auto code = z8_ppm();
    const auto s = encode(std::vector<std::size_t>{0, 1, 2}, code);
    const auto m = misalign(s, 8, 3);
    CHECK(m.true_offset == 3);
    CHECK(m.slots.size() == 19);
    // The second word starts at the offset.
    for (std::uint32_t t = 0; t < 8; ++t) CHECK(m.slots[3 + t] == code.words()[1][t]);
    CHECK(misalign(s, 8, 0).slots.size() == 24);
    CHECK_THROWS_AS(misalign(s, 8, 8), InvalidArgument);
}

TEST_CASE("AWGN channel")
{
    SlotStream clean;
    clean.slots.assign(1'000'000, 0.0);
    const double sigma = noise_sigma(4.0, 16, 16);
    CHECK(sigma == doctest::Approx(std::sqrt(16.0 / (4.0 * 4.0 * 4.0))));
    const auto a = awgn(clean, sigma, 42);
    const auto b = awgn(clean, sigma, 42);
    CHECK(a.slots == b.slots);
    CHECK(awgn(clean, sigma, 43).slots != a.slots);
    double sum = 0.0, sq = 0.0;
    for (auto x : a.slots) {
        sum += x;
        sq += x * x;
    }
    const double n = static_cast<double>(a.slots.size());
    const double var = sq / n - (sum / n) * (sum / n);
    CHECK(std::abs(var / (sigma * sigma) - 1.0) < 0.01);
    const auto quiet = awgn(encode(std::vector<std::size_t>{1}, z8_ppm()), noise_sigma(1e12, 16, 16), 1);
    for (std::size_t t = 0; t < 8; ++t) CHECK(quiet.slots[t] == doctest::Approx(z8_ppm().words()[1][t]).epsilon(1e-5));
}

TEST_CASE("hard and soft sync on clean streams")
{
    const auto code = z8_ppm();
    for (std::size_t msg = 0; msg < 256; ++msg) {
        const auto symbols = digits(msg, 4, 4);
        for (std::uint32_t o = 0; o < 8; ++o) {
            const auto s = misalign(encode(symbols, code), 8, o);
            CHECK(hard_sync(s.slots, code.marker()) == o);
            CHECK(soft_sync(s.slots, code.marker()) == o);
        }
    }
    const std::vector<double> zeros(40, 0.0);
    CHECK(hard_sync(zeros, code.marker()) == 0);
    const std::vector<double> flat(40, 0.7);
    CHECK(soft_sync(flat, code.marker()) == 0);
    CHECK(scored_intervals(24, 8) == 2);
    CHECK(scored_intervals(23, 8) == 2);
    CHECK(scored_intervals(22, 8) == 1);
}

TEST_CASE("hard sync corrects flips up to the tolerance")
{
    // Index-4 marker over Z_37 tolerates one flip.
    auto code = combine(construct_cyclotomic_pair(37, 2), ppm_codebook(19));
    REQUIRE(code.certify().certified);
    const auto tolerance = hard_sync_tolerance(*code.certified_index());
    CHECK(tolerance >= 1);
    const std::vector<std::size_t> symbols{3, 11, 7, 18};
    for (std::uint32_t o = 0; o < 37; ++o) {
        const auto clean = misalign(encode(symbols, code), 37, o);
        for (std::uint32_t flip = 0; flip < 37; ++flip) {
            auto s = clean.slots;
            s[o + flip] = 1.0 - s[o + flip];
            CHECK(hard_sync(s, code.marker()) == o);
        }
    }
}

TEST_CASE("soft decisions dominate at high SNR")
{
    const auto code = combine(construct_index2(26), mppm_codebook(16, 2));
    std::uint64_t hard_ok = 0, soft_ok = 0;
    for (std::uint64_t t = 0; t < 10'000; ++t) {
        auto rng = SplitMix64::for_trial(99, t);
        const std::vector<std::size_t> symbols{rng.below(120), rng.below(120), rng.below(120)};
        const auto o = static_cast<std::uint32_t>(rng.below(26));
        auto s = misalign(encode(symbols, code), 26, o);
        s = awgn(s, 0.05, rng.next());
        hard_ok += hard_sync(s.slots, code.marker()) == o;
        soft_ok += soft_sync(s.slots, code.marker()) == o;
    }
    CHECK(soft_ok >= hard_ok);
    CHECK(soft_ok == 10'000);
}

TEST_CASE("demodulation")
{
    const auto& entry = catalog_lookup(8, Scheme::eppm);
    const auto book = *entry.book();
    for (std::size_t w = 0; w < book.size(); ++w) {
        const auto bits = book.bits(w);
        CHECK(demodulate(std::vector<double>(bits.begin(), bits.end()), book) == w);
        // Any two flips stay within half the minimum distance of 6.
        for (std::uint32_t a = 0; a < book.length(); ++a) {
            for (std::uint32_t b = a + 1; b < book.length(); ++b) {
                std::vector<double> r(bits.begin(), bits.end());
                r[a] = 1.0 - r[a];
                r[b] = 1.0 - r[b];
                CHECK(demodulate(r, book) == w);
                std::vector<double> scaled(r.size());
                for (std::size_t i = 0; i < r.size(); ++i) scaled[i] = -3.0 + 2.5 * r[i];
                CHECK(demodulate(scaled, book) == demodulate(r, book));
            }
        }
    }
    CHECK(demodulate(std::vector<double>(11, 0.0), book) == 0);
    CHECK_THROWS_AS(demodulate(std::vector<double>(10, 0.0), book), InvalidArgument);
}

TEST_CASE("neighbor shells")
{
    const auto b1641 = *catalog_lookup(16, Scheme::geppm, 16, 4).book();
    const auto s1 = neighbor_census(b1641);
    CHECK(s1.uniform);
    CHECK(s1.near.front() == 12);
    CHECK(s1.far.front() == 3);
    const auto s2 = neighbor_census(*catalog_lookup(8, Scheme::geppm).book());
    CHECK(s2.near.front() == 6);
    CHECK(s2.far.front() == 1);
    const auto s3 = neighbor_census(*catalog_lookup(32, Scheme::geppm, 16).book());
    CHECK(s3.near.front() == 15);
    CHECK(s3.far.front() == 16);
    CHECK(near_neighbors(16, 3, 2) == 15);
    CHECK(far_neighbors(16, 3, 2) == 16);
    CHECK_THROWS_AS(neighbor_census(mppm_codebook(7, 3)), ValidationFailure);
}

TEST_CASE("union bound")
{
    CHECK(ser_union_bound(16, 4, 1, 1e6) == 0.0);
    CHECK_THROWS_AS(ser_union_bound(16, 4, 1, 0.0), InvalidArgument);
    double previous = 2.0;
    for (double g = 1.0; g <= 100.0; g += 0.5) {
        const double b = ser_union_bound(16, 4, 1, g);
        CHECK(b < previous);
        previous = b;
        const double ppm = ser_union_bound(16, 1, 1, g);
        if (ppm < 1.0) CHECK(b < ppm);
        CHECK(b <= ppm);
    }

    // The spectrum form reproduces the two-shell form on index-one books.
    for (const auto* id : {"GEPPM-8-8-3", "GEPPM-16-16-4", "GEPPM-32-16-3"}) {
        const auto& e = catalog_lookup(id);
        const auto book = *e.book();
        for (double g : {0.5, 2.0, 8.0, 30.0}) {
            CHECK(ser_union_bound(book, g) ==
                  doctest::Approx(ser_union_bound(e.ooc->v(), e.ooc->k(), static_cast<std::uint32_t>(e.ooc->size()), g))
                      .epsilon(1e-12));
        }
    }
    CHECK(ser_union_bound(ppm_codebook(16), 5.0) == doctest::Approx(ser_union_bound(16, 1, 1, 5.0)).epsilon(1e-12));
}

TEST_CASE("union bound grows with the code size at low SNR")
{
    for (std::uint32_t v = 7; v < 80; ++v) {
        for (std::uint32_t k = 2; k <= 5 && k * k <= v; ++k) {
            for (std::uint32_t c = 1; c + 1 <= (v - 1) / (k * (k - 1)); ++c) {
                for (double g = 0.1; g <= 2.0; g += 0.1) {
                    CHECK(ser_union_bound(v, k, c + 1, g) >= ser_union_bound(v, k, c, g));
                }
            }
        }
    }
    // At high SNR the extra bit per symbol wins and the bound falls.
    CHECK(ser_union_bound(16, 3, 2, 20.0) < ser_union_bound(16, 3, 1, 20.0));
}

TEST_CASE("Wilson interval")
{
    const auto zero = wilson_interval(0, 100);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(0.036994).epsilon(1e-4));
    const auto half = wilson_interval(50, 100);
    CHECK(half.lo == doctest::Approx(0.403832).epsilon(1e-4));
    CHECK(half.hi == doctest::Approx(0.596168).epsilon(1e-4));
    CHECK_THROWS_AS(wilson_interval(0, 0), InvalidArgument);
}

TEST_CASE("Monte Carlo harness")
{
    const auto book = *catalog_lookup(16, Scheme::geppm, 16, 4).book();
    ChannelSpec quiet{1e9, 5, 10'000};
    CHECK(monte_carlo(book, quiet).ser_mc == 0.0);

    ChannelSpec moderate{10.0, 7, 20'000};
    const auto a = monte_carlo(book, moderate);
    const auto b = monte_carlo(book, moderate);
    CHECK(a.symbol_errors == b.symbol_errors);
    CHECK(a.ser_ci.lo <= a.ser_mc);
    CHECK(a.ser_mc <= a.ser_ci.hi);
    const double se = std::sqrt(a.ser_mc * (1.0 - a.ser_mc) / 20'000.0);
    CHECK(a.ser_mc <= a.ser_bound + 3.0 * se);

    const auto code = combine(construct_index2(26), book);
    const auto withsync = monte_carlo(book, ChannelSpec{1e9, 3, 2'000}, &code);
    REQUIRE(withsync.sync_err_mc.has_value());
    CHECK(*withsync.sync_err_mc == 0.0);
    CHECK_THROWS_AS(monte_carlo(book, ChannelSpec{1.0, 1, 0}), InvalidArgument);
    CHECK(std::string(a.rng) == kRngName);
}
