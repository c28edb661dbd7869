#pragma once

#include <json.hpp>

#include "sl2grow/constructions.hpp"
#include "sl2grow/perturb.hpp"
#include "sl2grow/search.hpp"

namespace sl2grow::app {

using Json = nlohmann::ordered_json;

Json to_json(const GrowthReport& r);
Json to_json(const SubgroupSpec& spec);
/// Timing is kept under its own "timing" key so the rest is reproducible.
Json to_json(const SearchResult& r);
Json to_json(const PerturbationReport& r);

GrowthReport growth_report_from_json(const Json& j);

}  // namespace sl2grow::app
