#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "hermcubic/cubics.hpp"
#include "hermcubic/search.hpp"
#include "hermcubic/sequences.hpp"

namespace hermcubic {

using Json = nlohmann::ordered_json;

/// Reports serialize without wall-clock fields so identical runs give identical bytes;
/// callers place timing under a separate "timestamp" object.
Json to_json(const Arrangement& a, std::uint64_t count);
Json to_json(const SearchReport& r);
Json to_json(const IncidenceReport& r);
Json to_json(const RandomSampleReport& r);
Json to_json(const BoundTable& t);

/// "value,count" rows.
std::string histogram_csv(const std::map<std::uint64_t, std::uint64_t>& h);

}  // namespace hermcubic
