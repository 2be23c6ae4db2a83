#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "metricgeo/distance_matrix.hpp"
#include "metricgeo/embed.hpp"
#include "metricgeo/extend.hpp"
#include "metricgeo/fingerprint.hpp"
#include "metricgeo/homog.hpp"
#include "metricgeo/ramsey.hpp"
#include "metricgeo/tree.hpp"

namespace metricgeo {

using nlohmann::json;

json to_json(const DistanceMatrix& m);
DistanceMatrix matrix_from_json(const json& j);
/// Lower-triangular CSV: row i lists d[i][0..i-1]; row 0 is empty.
DistanceMatrix matrix_from_csv(const std::string& text, MetricKind kind = MetricKind::Metric);
/// Load from a path; .csv selects the CSV reader, anything else JSON.
DistanceMatrix load_matrix(const std::string& path);

json to_json(const ValidationReport& r);

ModelSpace space_from_json(const json& j);
json to_json(const ModelSpace& s);
json to_json(const EmbedResult& r);

json to_json(const FiniteTree& t);
FiniteTree tree_from_json(const json& j);
json to_json(const TreeLocation& loc);
TreeLocation location_from_json(const json& j);

json to_json(const PartialMap& p);
PartialMap partial_map_from_json(const json& j);
json to_json(const HomogeneityReport& r);

json to_json(const FingerprintVector& v);
json to_json(const FingerprintSet& s);
json to_json(const NonclosedReport& r);

json to_json(const EdgeColoring& c);

json to_json(const TraceStep& s);
json to_json(const ExtensionTrace& t);
json to_json(const PartialIsometry& p);

} // namespace metricgeo
