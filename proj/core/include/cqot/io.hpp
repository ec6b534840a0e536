#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cqot/crystalline.hpp"
#include "cqot/geometry.hpp"
#include "cqot/linf.hpp"
#include "cqot/measures.hpp"

namespace cqot::io {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field or line.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses text, translating parser byte offsets into line numbers.
Json parse(const std::string& text, const std::string& source_name = "input");
Json read_file(const std::string& path);

ConvexBody body_from_json(const Json& j, std::size_t dimension);
Json to_json(const ConvexBody& body);

DiscreteMeasure measure_from_json(const Json& j, const std::string& field = "measure");
Json to_json(const DiscreteMeasure& measure);

TransportPlan plan_from_json(const Json& j);
Json to_json(const TransportPlan& plan);

/// {"dimension", "f0", "f1", "body"}; a missing body is allowed only when
/// `body_optional` and then means unconstrained.
Problem problem_from_json(const Json& j, bool body_optional = false);
Json to_json(const Problem& problem);

Json to_json(const SolveReport& report);
Json to_json(const LinfResult& result);
Json to_json(const CrystallineResult& result);

std::vector<Point> vectors_from_json(const Json& j);

}  // namespace cqot::io
