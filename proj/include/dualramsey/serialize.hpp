#pragma once

// JSON and CSV encodings of maps, types, points, colorings and reports.

#include "dualramsey/cantor.hpp"
#include "dualramsey/coloring.hpp"
#include "dualramsey/engine.hpp"
#include "dualramsey/order_core.hpp"
#include "dualramsey/types.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dualramsey {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const FiniteMap& f);
FiniteMap map_from_json(const json& j);

json to_json(const MappingType& tp);
json to_json(const TypeCatalog& catalog);

json to_json(const PointFamily& f);
PointFamily family_from_json(const json& j);

json to_json(const Domain& d);
Domain domain_from_json(const json& j);

/// {"domain": {...}, "k": k, "assignments": [{"element": e, "color": c}, ...]}
json to_json(const Coloring& c);
/// Throws FormatError on malformed input, unknown or repeated elements, a
/// missing element, or a color outside {0..k-1}.
Coloring coloring_from_json(const json& j);

json to_json(const StageRecord& r);
json to_json(const WitnessReport& r);
json to_json(const StructureRunReport& r);
json to_json(const DrNumberResult& r);

std::string csv_header();
std::string csv_row(const WitnessReport& r);

std::string_view status_name(StageStatus s);

} // namespace dualramsey
