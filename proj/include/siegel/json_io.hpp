#pragma once

#include <string>

#include <json.hpp>

#include "siegel/connection.hpp"
#include "siegel/metric.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

using Json = nlohmann::json;

SiegelPoint point_from_json(const Json& j);
Json to_json(const SiegelPoint& z);

SymplecticElement element_from_json(const Json& j);
Json to_json(const SymplecticElement& gamma);

/// {"omega": [[i,j],...], "W": [[...]], "M": [[...]]} in N-order.
Json metric_to_json(const MetricPair& metric);

/// {"g", "method", "entries": [{"K","I","J","re","im"}]} with zeros omitted.
Json gamma_to_json(const ConnectionTable& table);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace siegel
