#include "ppmsync/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "ppmsync/error.hpp"

namespace ppmsync {

namespace {

std::vector<Support> orbit_words(std::initializer_list<Support> bases, std::uint32_t v)
{
    std::vector<Support> out;
    for (const auto& b : bases) {
        for (std::uint32_t s = 0; s < v; ++s) out.push_back(cyclic_shift(b, s, v));
    }
    return out;
}

CatalogEntry from_ooc(Scheme scheme, std::uint32_t m, std::uint32_t d, OpticalOrthogonalCode code, std::string note)
{
    const auto q = code.v();
    const auto k = code.k();
    auto words = expand_orbits(code).words();
    std::string id = std::string(scheme_name(scheme)) + "-" + std::to_string(m) + "-" + std::to_string(q) + "-" +
                     std::to_string(k);
    return CatalogEntry{std::move(id), scheme, m, q, k, d, std::move(code), std::move(words), std::move(note)};
}

std::vector<CatalogEntry> build_catalog()
{
    std::vector<CatalogEntry> rows;
    auto ppm = [&](std::uint32_t q) {
        rows.push_back(from_ooc(Scheme::ppm, q, 2, OpticalOrthogonalCode(q, 1, 0, {{0}}), "single pulse"));
    };

    ppm(8);
    rows.push_back(from_ooc(Scheme::geppm, 8, 4, OpticalOrthogonalCode(8, 3, 1, {{0, 1, 3}}), "optimal (8,3,1) OOC"));
    rows.push_back(from_ooc(Scheme::eppm, 8, 6, OpticalOrthogonalCode(11, 5, 2, {{0, 2, 3, 4, 8}}),
                            "(11,5,2) difference set"));

    ppm(16);
    {
        // Shifts of the (11,5,2) difference set followed by shifts of its complement.
        CatalogEntry aeppm{"AEPPM-16-11-5",
                           Scheme::aeppm,
                           16,
                           11,
                           5,
                           5,
                           std::nullopt,
                           orbit_words({{0, 2, 3, 4, 8}, {1, 5, 6, 7, 9, 10}}, 11),
                           "difference set and complement, mixed weights 5 and 6"};
        rows.push_back(std::move(aeppm));
    }
    rows.push_back(from_ooc(Scheme::geppm, 16, 6, OpticalOrthogonalCode(16, 4, 1, {{0, 1, 3, 7}}),
                            "optimal (16,4,1) OOC"));
    rows.push_back(from_ooc(Scheme::geppm, 16, 8, OpticalOrthogonalCode(16, 8, 4, {{0, 1, 2, 3, 4, 7, 9, 12}}),
                            "single-codeword (16,8,4) OOC from an almost difference set"));
    rows.push_back(from_ooc(Scheme::eppm, 16, 10,
                            OpticalOrthogonalCode(19, 9, 4, {{0, 3, 4, 5, 6, 8, 10, 15, 16}}),
                            "(19,9,4) Paley difference set"));

    ppm(32);
    {
        auto words = mppm_codebook(7, 3).words();
        rows.push_back(CatalogEntry{"MPPM-32-7-3", Scheme::mppm, 32, 7, 3, 2, std::nullopt, std::move(words),
                                    "all 35 weight-3 words of length 7, lexicographic"});
    }
    rows.push_back(from_ooc(Scheme::geppm, 32, 4, OpticalOrthogonalCode(16, 3, 1, {{0, 1, 3}, {0, 4, 9}}),
                            "optimal (16,3,1) OOC"));
    rows.push_back(from_ooc(Scheme::geppm, 32, 14,
                            OpticalOrthogonalCode(37, 10, 3, {{0, 1, 2, 3, 5, 8, 12, 16, 21, 31}}),
                            "single-codeword (37,10,3) OOC from an almost difference set"));
    rows.push_back(from_ooc(
        Scheme::eppm, 32, 18,
        OpticalOrthogonalCode(35, 17, 8, {{0, 1, 3, 4, 7, 9, 11, 12, 13, 14, 16, 17, 21, 27, 28, 29, 33}}),
        "(35,17,8) difference set"));
    return rows;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view scheme_name(Scheme s) noexcept
{
    switch (s) {
    case Scheme::ppm: return "PPM";
    case Scheme::mppm: return "MPPM";
    case Scheme::eppm: return "EPPM";
    case Scheme::aeppm: return "AEPPM";
    case Scheme::geppm: return "GEPPM";
    }
    return "?";
}

Scheme parse_scheme(std::string_view tag)
{
    const auto t = lower(tag);
    for (auto s : {Scheme::ppm, Scheme::mppm, Scheme::eppm, Scheme::aeppm, Scheme::geppm}) {
        if (t == lower(scheme_name(s))) return s;
    }
    throw InvalidArgument("unknown scheme '" + std::string(tag) + "' (expected PPM, MPPM, EPPM, AEPPM or GEPPM)");
}

std::optional<Codebook> CatalogEntry::book() const
{
    const auto first = words.begin();
    const auto last = first + static_cast<std::ptrdiff_t>(m);
    if (std::any_of(first, last, [&](const Support& w) { return w.size() != first->size(); })) return std::nullopt;
    return Codebook(q, std::vector<Support>(first, last));
}

std::uint32_t CatalogEntry::measured_distance() const
{
    if (auto b = book()) return min_distance(*b);
    std::uint32_t best = UINT32_MAX;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) best = std::min(best, hamming_distance(words[i], words[j]));
    }
    return best;
}

const std::vector<CatalogEntry>& catalog()
{
    static const std::vector<CatalogEntry> rows = build_catalog();
    return rows;
}

std::string catalog_ids()
{
    std::string out;
    for (const auto& e : catalog()) {
        if (!out.empty()) out += ", ";
        out += e.id;
    }
    return out;
}

const CatalogEntry& catalog_lookup(std::uint32_t m, Scheme scheme, std::optional<std::uint32_t> q,
                                   std::optional<std::uint32_t> k)
{
    std::vector<const CatalogEntry*> hits;
    for (const auto& e : catalog()) {
        if (e.m == m && e.scheme == scheme && (!q || e.q == *q) && (!k || e.k == *k)) hits.push_back(&e);
    }
    if (hits.size() == 1) return *hits.front();
    std::string what = std::string(scheme_name(scheme)) + " with M = " + std::to_string(m);
    if (hits.empty()) throw NotFound("catalog: no entry for " + what + "; available: " + catalog_ids());
    std::string ids;
    for (auto* h : hits) ids += (ids.empty() ? "" : ", ") + h->id;
    throw NotFound("catalog: " + what + " is ambiguous; specify Q or K to pick one of: " + ids);
}

const CatalogEntry& catalog_lookup(std::string_view id)
{
    const auto want = lower(id);
    for (const auto& e : catalog()) {
        if (lower(e.id) == want) return e;
    }
    throw NotFound("catalog: no entry '" + std::string(id) + "'; available: " + catalog_ids());
}

} // namespace ppmsync
