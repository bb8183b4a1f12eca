#pragma once

#include <json.hpp>

#include "ppmsync/catalog.hpp"
#include "ppmsync/dss.hpp"
#include "ppmsync/dss_search.hpp"
#include "ppmsync/modem.hpp"
#include "ppmsync/ooc.hpp"
#include "ppmsync/selfsync.hpp"

namespace ppmsync {

using Json = nlohmann::ordered_json;

Json to_json(const Dss& dss);
Json to_json(const DssReport& report);
Json to_json(const SearchResult& result);
Json to_json(const OpticalOrthogonalCode& code);
Json to_json(const Codebook& book);
Json to_json(const SpliceWitness& w);
Json to_json(const CommaFreeResult& result);
/// Marker, payload words, free positions, full words and any certificate.
Json to_json(const SelfSyncCode& code);
Json to_json(const SimReport& report);

/// Parsers throw InvalidArgument with the offending field on malformed input.
Dss dss_from_json(const Json& j);
OpticalOrthogonalCode ooc_from_json(const Json& j);

/// A payload description, one of:
///   {"scheme": "PPM", "q": Q}
///   {"scheme": "MPPM", "q": Q, "k": K}
///   {"catalog": id}
///   {"ooc": {...}}              orbit expansion
///   {"length": Q, "words": [[...], ...]}
/// each optionally with "m" to keep only the first m words.
Codebook payload_from_json(const Json& j);

/// Text header "Q K M d" followed by one 0/1 line per word; d is 0 for one word.
std::string export_codebook(const Codebook& book);

} // namespace ppmsync
