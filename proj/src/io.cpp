#include "ppmsync/io.hpp"

#include <string>

#include "ppmsync/error.hpp"

namespace ppmsync {

namespace {

template <class T>
T field(const Json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) throw InvalidArgument(std::string("missing field '") + name + "'");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("field '") + name + "' has the wrong type");
    }
}

Json sets_to_json(const std::vector<Support>& sets)
{
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

Json witness_or_null(const std::optional<SpliceWitness>& w) { return w ? to_json(*w) : Json(nullptr); }

} // namespace

Json to_json(const Dss& dss) { return {{"n", dss.n()}, {"d0", dss.d0()}, {"d1", dss.d1()}}; }

Json to_json(const DssReport& r)
{
    return {{"index", r.index},
            {"perfect", r.perfect},
            {"regular", r.regular},
            {"redundancy", r.redundancy},
            {"redundancy_rate", {{"num", r.redundancy_rate.num()}, {"den", r.redundancy_rate.den()}}},
            {"levenshtein_floor", r.levenshtein_floor},
            {"meets_levenshtein", r.meets_levenshtein},
            {"meets_levenshtein_floor", r.meets_levenshtein_floor}};
}

Json to_json(const SearchResult& result)
{
    Json excluded = Json::array();
    for (const auto& e : result.excluded) {
        excluded.push_back({{"redundancy", e.redundancy},
                            {"method", e.method == RedundancyExclusion::Method::exhaustive ? "exhaustive"
                                                                                             : "levenshtein_bound"},
                            {"splits", e.splits},
                            {"splits_counting_pruned", e.splits_counting_pruned},
                            {"nodes", e.nodes}});
    }
    return {{"dss", to_json(result.dss)},
            {"redundancy", result.redundancy},
            {"report", to_json(verify(result.dss))},
            {"excluded", excluded},
            {"nodes", result.nodes}};
}

Json to_json(const OpticalOrthogonalCode& code)
{
    return {{"v", code.v()}, {"k", code.k()}, {"lambda", code.lambda()}, {"codewords", sets_to_json(code.codewords())}};
}

Json to_json(const Codebook& book)
{
    Json j{{"length", book.length()}, {"weight", book.weight()}, {"size", book.size()}};
    j["min_distance"] = book.cached_min_distance() ? Json(*book.cached_min_distance()) : Json(nullptr);
    j["words"] = sets_to_json(book.words());
    return j;
}

Json to_json(const SpliceWitness& w)
{
    return {{"x", w.x}, {"y", w.y}, {"offset", w.offset}, {"z", w.z}, {"distance", w.distance}};
}

Json to_json(const CommaFreeResult& r)
{
    return {{"certified", r.certified},
            {"work", r.work},
            {"index", r.index ? Json(*r.index) : Json(nullptr)},
            {"witness", witness_or_null(r.witness)},
            {"restricted_index", r.restricted_index ? Json(*r.restricted_index) : Json(nullptr)},
            {"restricted_witness", witness_or_null(r.restricted_witness)}};
}

Json to_json(const SelfSyncCode& code)
{
    Json words = Json::array();
    for (const auto& w : code.words()) {
        std::string line;
        for (auto b : w) line += b ? '1' : '0';
        words.push_back(line);
    }
    Json j{{"n", code.n()},
           {"weight", code.weight()},
           {"marker", to_json(code.marker())},
           {"payload", {{"length", code.payload().length()}, {"words", sets_to_json(code.payload().words())}}},
           {"free_positions", code.free_positions()},
           {"words", words}};
    j["certificate"] = code.certificate() ? to_json(*code.certificate()) : Json(nullptr);
    return j;
}

Json to_json(const SimReport& r)
{
    Json j{{"gamma", r.gamma},
           {"seed", r.seed},
           {"trials", r.trials},
           {"rng", r.rng ? r.rng : ""},
           {"symbol_errors", r.symbol_errors},
           {"ser_mc", r.ser_mc},
           {"ser_mc_lo", r.ser_ci.lo},
           {"ser_mc_hi", r.ser_ci.hi},
           {"ser_bound", r.ser_bound}};
    j["sync_errors"] = r.sync_errors ? Json(*r.sync_errors) : Json(nullptr);
    j["sync_err"] = r.sync_err_mc ? Json(*r.sync_err_mc) : Json(nullptr);
    return j;
}

Dss dss_from_json(const Json& j)
{
    return Dss(field<std::uint32_t>(j, "n"), field<ResidueSet>(j, "d0"), field<ResidueSet>(j, "d1"));
}

OpticalOrthogonalCode ooc_from_json(const Json& j)
{
    return OpticalOrthogonalCode(field<std::uint32_t>(j, "v"), field<std::uint32_t>(j, "k"),
                                 field<std::uint32_t>(j, "lambda"), field<std::vector<Support>>(j, "codewords"));
}

Codebook payload_from_json(const Json& j)
{
    if (!j.is_object()) throw InvalidArgument("payload must be a JSON object");
    auto trim = [&](Codebook book) {
        if (j.contains("m")) return book.first(field<std::size_t>(j, "m"));
        return book;
    };
    if (j.contains("catalog")) {
        const auto& entry = catalog_lookup(field<std::string>(j, "catalog"));
        if (j.contains("m")) {
            const auto m = field<std::size_t>(j, "m");
            if (m > entry.words.size()) throw InvalidArgument("payload: m exceeds the catalog word count");
            return Codebook(entry.q, std::vector<Support>(entry.words.begin(),
                                                          entry.words.begin() + static_cast<std::ptrdiff_t>(m)));
        }
        auto book = entry.book();
        if (!book) throw InvalidArgument("payload: catalog entry " + entry.id + " is not constant-weight");
        return *book;
    }
    if (j.contains("ooc")) return trim(expand_orbits(ooc_from_json(j.at("ooc"))));
    if (j.contains("words")) return trim(Codebook(field<std::uint32_t>(j, "length"), field<std::vector<Support>>(j, "words")));
    if (j.contains("scheme")) {
        const auto scheme = parse_scheme(field<std::string>(j, "scheme"));
        const auto q = field<std::uint32_t>(j, "q");
        if (scheme == Scheme::ppm) return trim(ppm_codebook(q));
        if (scheme == Scheme::mppm) return trim(mppm_codebook(q, field<std::uint32_t>(j, "k")));
        throw InvalidArgument("payload: scheme " + std::string(scheme_name(scheme)) +
                              " needs an explicit \"ooc\" or \"catalog\" entry");
    }
    throw InvalidArgument("payload: expected one of \"scheme\", \"catalog\", \"ooc\" or \"words\"");
}

std::string export_codebook(const Codebook& book)
{
    std::string out = std::to_string(book.length()) + " " + std::to_string(book.weight()) + " " +
                      std::to_string(book.size()) + " " + std::to_string(book.cached_min_distance().value_or(0)) +
                      "\n";
    for (std::size_t i = 0; i < book.size(); ++i) {
        for (auto b : book.bits(i)) out += b ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace ppmsync
