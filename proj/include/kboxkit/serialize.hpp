#ifndef KBOXKIT_SERIALIZE_HPP
#define KBOXKIT_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "kboxkit/analysis.hpp"
#include "kboxkit/construct.hpp"
#include "kboxkit/extend.hpp"
#include "kboxkit/functionals.hpp"

namespace kboxkit {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& value);
/// Accepts "p/q" strings, integers and finite decimals.
Rational rational_from_json(const Json& value);
Json node_json(const NodeIndex& node);
Json point_json(const Point& point);

/// {"n", "axes", "values", "label"} with every rational written as "p/q".
Json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);
GridFunction parse_grid_function(const std::string& text);
GridFunction load_grid_function(const std::string& path);

Json to_json(const KBox& box);
/// {"k", "boxes": [{"lower", "upper", "count"}]}
Json to_json(const BoxUnion& dub);
BoxUnion box_union_from_json(const Json& j);

Json to_json(const StructuralReport& report);
Json to_json(const KIncreasingReport& report);
Json to_json(const FunctionalValue& value);
Json to_json(const std::vector<FunctionalRecord>& table);
Json to_json(const SumInequalityReport& report);
Json to_json(const AslVerdict& verdict);
Json to_json(const SweepTrace& trace);
Json to_json(const CoherenceReport& report);
Json to_json(const LipschitzReport& report);

/// Node order file: a JSON array of axis-index arrays.
std::vector<NodeIndex> parse_order(const std::string& text, const GridMesh& mesh);
std::vector<NodeIndex> load_order(const std::string& path, const GridMesh& mesh);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace kboxkit

#endif  // KBOXKIT_SERIALIZE_HPP
